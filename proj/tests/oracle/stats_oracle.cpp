#include "stats_oracle.hpp"

#include <algorithm>
#include <cctype>

namespace oracle {

std::int64_t kth(const std::vector<std::int64_t>& v, std::size_t k) {
  for (std::int64_t x : v) {
    std::size_t less = 0, equal = 0;
    for (std::int64_t y : v) {
      if (y < x) ++less;
      if (y == x) ++equal;
    }
    if (less <= k && k < less + equal) return x;
  }
  return 0;
}

double median(const std::vector<std::int64_t>& v) {
  const std::size_t n = v.size();
  if (n == 0) return 0;
  if (n % 2 == 1) return static_cast<double>(kth(v, n / 2));
  return (static_cast<double>(kth(v, n / 2 - 1)) + static_cast<double>(kth(v, n / 2))) / 2.0;
}

std::int64_t p90(const std::vector<std::int64_t>& v) {
  const std::size_t n = v.size();
  if (n == 0) return 0;
  const std::size_t rank = (9 * n + 9) / 10;  // ceil(0.9 n) for integers
  std::optional<std::int64_t> best;
  for (std::int64_t x : v) {
    std::size_t at_most = 0;
    for (std::int64_t y : v) at_most += y <= x ? 1 : 0;
    if (at_most >= rank && (!best || x < *best)) best = x;
  }
  return *best;
}

Timing timing(const std::vector<std::int64_t>& d) {
  Timing t;
  t.n = d.size();
  if (d.empty()) return t;
  if (d.size() % 2 == 1) {
    t.median_ms = kth(d, d.size() / 2);
  } else {
    t.median_ms = (kth(d, d.size() / 2 - 1) + kth(d, d.size() / 2)) / 2;
  }
  t.p90_ms = p90(d);
  for (std::int64_t x : d) t.under_1s += x < 1000 ? 1 : 0;
  return t;
}

namespace {

std::vector<std::string> conversations_in_order(const std::vector<DmEvent>& events) {
  std::vector<std::string> ids;
  for (const auto& e : events) {
    bool seen = false;
    for (const auto& id : ids) seen = seen || id == e.conversation;
    if (!seen) ids.push_back(e.conversation);
  }
  return ids;
}

std::string channel_of(const std::vector<DmEvent>& events, const std::string& conv) {
  for (const auto& e : events) {
    if (e.conversation == conv) return e.channel;
  }
  return {};
}

TimingReport assemble(const std::vector<std::pair<std::string, std::int64_t>>& deltas, std::size_t excluded) {
  TimingReport r;
  std::vector<std::int64_t> all;
  std::map<std::string, std::vector<std::int64_t>> by_channel;
  for (const auto& [ch, d] : deltas) {
    all.push_back(d);
    by_channel[ch].push_back(d);
  }
  r.overall = timing(all);
  for (const auto& [ch, v] : by_channel) r.per_channel[ch] = timing(v);
  r.excluded = excluded;
  return r;
}

}  // namespace

TimingReport first_response(const std::vector<DmEvent>& events) {
  std::vector<std::pair<std::string, std::int64_t>> deltas;
  std::size_t no_reply = 0;
  for (const auto& conv : conversations_in_order(events)) {
    std::optional<std::int64_t> out;
    for (const auto& e : events) {
      if (e.conversation == conv && !e.inbound && (!out || e.ms < *out)) out = e.ms;
    }
    if (!out) continue;
    std::optional<std::int64_t> in;
    for (const auto& e : events) {
      if (e.conversation == conv && e.inbound && e.ms >= *out && (!in || e.ms < *in)) in = e.ms;
    }
    if (!in) {
      ++no_reply;
      continue;
    }
    deltas.emplace_back(channel_of(events, conv), *in - *out);
  }
  return assemble(deltas, no_reply);
}

TimingReport engagement(const std::vector<DmEvent>& events) {
  std::vector<std::pair<std::string, std::int64_t>> deltas;
  std::size_t one_time = 0;
  for (const auto& conv : conversations_in_order(events)) {
    std::optional<std::int64_t> lo, hi;
    std::size_t count = 0;
    for (const auto& e : events) {
      if (e.conversation != conv || !e.inbound) continue;
      ++count;
      if (!lo || e.ms < *lo) lo = e.ms;
      if (!hi || e.ms > *hi) hi = e.ms;
    }
    if (count == 0) continue;
    if (count == 1) ++one_time;
    deltas.emplace_back(channel_of(events, conv), *hi - *lo);
  }
  return assemble(deltas, one_time);
}

std::string fold(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == ' ') {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::vector<std::string>> closure_components(const std::vector<ClusterInput>& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  auto share = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a) {
      if (b.count(x)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool name = !fold(p[i].name).empty() && fold(p[i].name) == fold(p[j].name);
      const bool desc = !fold(p[i].description).empty() && fold(p[i].description) == fold(p[j].description);
      reach[i][j] = i == j || name || desc || share(p[i].followers, p[j].followers) || share(p[i].channels, p[j].channels);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<std::vector<std::string>> comps;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::string> c;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j]) {
        c.push_back(p[j].id);
        done[j] = true;
      }
    }
    std::sort(c.begin(), c.end());
    comps.push_back(c);
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

}  // namespace oracle
