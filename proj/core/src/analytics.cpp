#include "scambait/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scambait/payextract.hpp"
#include "scambait/rng.hpp"
#include "scambait/text.hpp"

namespace scambait {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double p90_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  // ceil(0.9 n) computed in integers to avoid 0.9 rounding surprises.
  const std::size_t rank = (9 * v.size() + 9) / 10;
  return v[rank - 1];
}

TimingStats timing_stats(const std::vector<Millis>& durations) {
  TimingStats s;
  s.n = durations.size();
  if (durations.empty()) return s;
  std::vector<std::int64_t> v;
  v.reserve(durations.size());
  for (auto d : durations) {
    v.push_back(d.count());
    if (d < Millis{1000}) ++s.under_1000ms_count;
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  // Integer arithmetic keeps the even-n mean exact for any duration.
  s.median = Millis{n % 2 == 1 ? v[n / 2] : v[n / 2 - 1] + (v[n / 2] - v[n / 2 - 1]) / 2};
  s.p90 = Millis{v[(9 * n + 9) / 10 - 1]};
  return s;
}

// --- transcripts -------------------------------------------------------------

std::size_t Transcript::count(Author a) const {
  return static_cast<std::size_t>(std::count_if(turns.begin(), turns.end(), [a](const auto& t) { return t.author == a; }));
}

std::vector<Transcript> transcripts_from_events(const std::vector<InteractionEvent>& events) {
  std::vector<Transcript> out;
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& e : events) {
    if (e.kind != EventKind::direct_message_in && e.kind != EventKind::direct_message_out) continue;
    if (!e.conversation_id) continue;
    auto [it, inserted] = index.try_emplace(*e.conversation_id, out.size());
    if (inserted) {
      Transcript t;
      t.conversation_id = *e.conversation_id;
      t.profile_id = e.profile_id;
      t.channel = e.channel;
      out.push_back(std::move(t));
    }
    out[it->second].turns.push_back(
        {e.kind == EventKind::direct_message_out ? Author::system : Author::scammer, e.text.value_or(""), e.ts});
  }
  return out;
}

Transcript transcript_of(const Conversation& c) {
  return Transcript{c.id, c.scammer_profile_id, c.channel, c.turns};
}

// --- timing ------------------------------------------------------------------

namespace {

struct ConvTimes {
  ChannelKind channel = ChannelKind::simulated;
  std::optional<Timestamp> first_out;
  std::vector<Timestamp> in;
};

std::vector<ConvTimes> conversation_times(const std::vector<InteractionEvent>& events) {
  std::vector<ConvTimes> out;
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& e : events) {
    if (e.kind != EventKind::direct_message_in && e.kind != EventKind::direct_message_out) continue;
    if (!e.conversation_id) continue;
    auto [it, inserted] = index.try_emplace(*e.conversation_id, out.size());
    if (inserted) out.push_back({e.channel, std::nullopt, {}});
    auto& c = out[it->second];
    if (e.kind == EventKind::direct_message_out) {
      if (!c.first_out || e.ts < *c.first_out) c.first_out = e.ts;
    } else {
      c.in.push_back(e.ts);
    }
  }
  for (auto& c : out) std::sort(c.in.begin(), c.in.end());
  return out;
}

template <typename Map>
void fill_per_channel(const std::map<ChannelKind, std::vector<Millis>>& groups, Map& dest) {
  for (const auto& [ch, v] : groups) dest[ch] = timing_stats(v);
}

}  // namespace

FirstResponseReport first_response_stats(const std::vector<InteractionEvent>& events) {
  FirstResponseReport r;
  std::vector<Millis> all;
  std::map<ChannelKind, std::vector<Millis>> groups;
  for (const auto& c : conversation_times(events)) {
    if (!c.first_out) continue;  // scammer-initiated; no system contact to measure from
    auto reply = std::find_if(c.in.begin(), c.in.end(), [&](Timestamp t) { return t >= *c.first_out; });
    if (reply == c.in.end()) {
      ++r.no_reply;
      ++r.no_reply_per_channel[c.channel];
      continue;
    }
    const Millis d = *reply - *c.first_out;
    all.push_back(d);
    groups[c.channel].push_back(d);
  }
  r.overall = timing_stats(all);
  fill_per_channel(groups, r.per_channel);
  return r;
}

EngagementReport engagement_duration_stats(const std::vector<InteractionEvent>& events) {
  EngagementReport r;
  std::vector<Millis> all;
  std::map<ChannelKind, std::vector<Millis>> groups;
  for (const auto& c : conversation_times(events)) {
    if (c.in.empty()) continue;
    const Millis d = c.in.back() - c.in.front();
    all.push_back(d);
    groups[c.channel].push_back(d);
    if (c.in.size() == 1) {
      ++r.one_time_reply_count;
      ++r.one_time_reply_per_channel[c.channel];
    }
    std::set<std::int64_t> days;
    for (auto t : c.in) days.insert(utc_day_index(t));
    ++r.days_active[static_cast<int>(days.size())];
  }
  r.overall = timing_stats(all);
  fill_per_channel(groups, r.per_channel);
  return r;
}

std::array<std::size_t, 7> weekday_histogram(const std::vector<InteractionEvent>& events,
                                             std::optional<ChannelKind> channel) {
  std::array<std::size_t, 7> h{};
  for (const auto& e : events) {
    if (e.kind != EventKind::direct_message_in) continue;
    if (channel && e.channel != *channel) continue;
    ++h[static_cast<std::size_t>(utc_weekday(e.ts))];
  }
  return h;
}

std::string first_response_cumulative_csv(const std::vector<InteractionEvent>& events,
                                          std::optional<ChannelKind> channel) {
  std::vector<std::int64_t> deltas;
  for (const auto& c : conversation_times(events)) {
    if (!c.first_out || (channel && c.channel != *channel)) continue;
    auto reply = std::find_if(c.in.begin(), c.in.end(), [&](Timestamp t) { return t >= *c.first_out; });
    if (reply != c.in.end()) deltas.push_back((*reply - *c.first_out).count());
  }
  std::sort(deltas.begin(), deltas.end());
  std::string out = "delta_ms,cumulative\n";
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (i + 1 < deltas.size() && deltas[i + 1] == deltas[i]) continue;
    out += std::to_string(deltas[i]) + "," + std::to_string(i + 1) + "\n";
  }
  return out;
}

// --- dialogue length ---------------------------------------------------------

namespace {

LengthSummary summarize(const std::vector<std::size_t>& v) {
  LengthSummary s;
  s.n = v.size();
  if (v.empty()) return s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  s.median = median_of(std::vector<double>(v.begin(), v.end()));
  return s;
}

}  // namespace

DialogueLengthReport dialogue_length_stats(const std::vector<Transcript>& conversations) {
  std::vector<std::size_t> sys, scam;
  std::map<ChannelKind, std::vector<std::size_t>> sys_ch, scam_ch;
  for (const auto& t : conversations) {
    if (t.turns.empty()) continue;
    const std::size_t a = t.count(Author::system), b = t.count(Author::scammer);
    sys.push_back(a);
    scam.push_back(b);
    sys_ch[t.channel].push_back(a);
    scam_ch[t.channel].push_back(b);
  }
  DialogueLengthReport r;
  r.system = summarize(sys);
  r.scammer = summarize(scam);
  for (const auto& [ch, v] : sys_ch) r.system_per_channel[ch] = summarize(v);
  for (const auto& [ch, v] : scam_ch) r.scammer_per_channel[ch] = summarize(v);
  return r;
}

std::optional<TurnsBeforePayment> turns_before_payment(const Transcript& t) {
  PaymentContext ctx;
  TurnsBeforePayment r;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const auto& turn = t.turns[i];
    if (turn.author == Author::system) {
      ++r.system_turns;
      continue;
    }
    ++r.scammer_turns;
    if (!extract_payment_profiles(turn.text, static_cast<int>(i), &ctx).empty()) {
      r.disclosing_turn = static_cast<int>(i);
      return r;
    }
  }
  return std::nullopt;
}

// --- clustering ----------------------------------------------------------------

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::shared_name:
      return "shared_name";
    case EdgeKind::shared_description:
      return "shared_description";
    case EdgeKind::shared_follower:
      return "shared_follower";
    case EdgeKind::shared_channel:
      break;
  }
  return "shared_channel";
}

std::string normalize_description(std::string_view s) {
  std::string out;
  bool space = false;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (c >= 0xF0) len = 4;
    else if (c >= 0xE0) len = 3;
    else if (c >= 0xC0) len = 2;
    if (len == 1) {
      if (std::isspace(c)) {
        space = true;
      } else {
        if (space && !out.empty()) out += ' ';
        space = false;
        out += static_cast<char>(std::tolower(c));
      }
    } else if (len == 2) {
      // Latin letters with diacritics are kept; 3- and 4-byte sequences in the
      // symbol and emoji blocks are dropped.
      if (space && !out.empty()) out += ' ';
      space = false;
      out.append(s.substr(i, std::min(len, s.size() - i)));
    }
    i += len;
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

ClusterReport cluster_profiles(const std::vector<ScamProfile>& profiles) {
  ClusterReport r;
  UnionFind uf(profiles.size());
  // Link every profile to the first profile seen with the same key.
  auto link_by = [&](EdgeKind kind, auto keys_of) {
    std::map<std::string, std::size_t> first;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      for (const std::string& k : keys_of(profiles[i])) {
        if (k.empty()) continue;
        auto [it, inserted] = first.try_emplace(k, i);
        if (!inserted) {
          uf.unite(it->second, i);
          r.edge_kinds_used.insert(kind);
        }
      }
    }
  };
  link_by(EdgeKind::shared_name, [](const ScamProfile& p) {
    return std::vector<std::string>{normalize_description(p.display_name)};
  });
  link_by(EdgeKind::shared_description, [](const ScamProfile& p) {
    return std::vector<std::string>{normalize_description(p.description)};
  });
  link_by(EdgeKind::shared_follower, [](const ScamProfile& p) {
    return std::vector<std::string>(p.followers.begin(), p.followers.end());
  });
  link_by(EdgeKind::shared_channel, [](const ScamProfile& p) {
    std::vector<std::string> keys;
    for (const auto& c : p.channels) keys.push_back(std::string(to_string(c.kind)) + ":" + c.address);
    return keys;
  });

  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < profiles.size(); ++i) groups[uf.find(i)].push_back(profiles[i].profile_id);
  for (auto& [root, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    r.components.push_back(std::move(ids));
  }
  std::sort(r.components.begin(), r.components.end());

  for (const auto& p : profiles) {
    std::set<ContactChannel> distinct(p.channels.begin(), p.channels.end());
    const std::size_t n = distinct.size();
    r.channel_counts[p.profile_id] = n;
    if (n > r.max_channels || (n == r.max_channels && n > 0 && p.profile_id < r.max_channels_profile)) {
      r.max_channels = n;
      r.max_channels_profile = p.profile_id;
    }
  }
  return r;
}

// --- text scoring ----------------------------------------------------------------

double HashTextScorer::score(std::string_view text) {
  return static_cast<double>(splitmix64(fnv1a64(text)) >> 11) / static_cast<double>(1ULL << 53);
}

MlScore ml_text_score(const Transcript& t, TextScorer& scorer) {
  MlScore s;
  s.profile_id = t.profile_id;
  double sum = 0;
  for (const auto& turn : t.turns) {
    if (turn.author != Author::scammer) continue;
    try {
      const double v = scorer.score(turn.text);
      if (!(v >= 0.0 && v <= 1.0)) throw std::out_of_range("score outside [0,1]");
      sum += v;
      ++s.n_texts;
    } catch (const std::exception&) {
      ++s.failures;
    }
  }
  if (s.n_texts > 0) s.mean_score = sum / static_cast<double>(s.n_texts);
  return s;
}

MlBuckets tally_ml_scores(const std::vector<MlScore>& scores) {
  MlBuckets b;
  for (const auto& s : scores) {
    if (s.n_texts == 0) continue;
    ++b.total;
    if (s.mean_score >= 0.5) ++b.at_least_050;
    if (s.mean_score >= 0.75) ++b.at_least_075;
    if (s.mean_score >= 0.9) ++b.at_least_090;
  }
  return b;
}

}  // namespace scambait
