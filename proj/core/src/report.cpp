#include "scambait/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace scambait {
namespace {

using ojson = nlohmann::ordered_json;

ojson timing_json(const TimingStats& s) {
  return {{"n", s.n},
          {"median_ms", s.median.count()},
          {"median", format_duration(s.median)},
          {"p90_ms", s.p90.count()},
          {"p90", format_duration(s.p90)},
          {"under_1000ms", s.under_1000ms_count}};
}

ojson length_json(const LengthSummary& s) {
  return {{"n", s.n}, {"median", s.median}, {"min", s.min}, {"max", s.max}};
}

template <typename V, typename F>
ojson per_channel(const std::map<ChannelKind, V>& m, F f) {
  ojson j = ojson::object();
  for (const auto& [ch, v] : m) j[std::string(to_string(ch))] = f(v);
  return j;
}

ojson weekday_json(const std::array<std::size_t, 7>& h) {
  ojson j = ojson::object();
  for (int d = 0; d < 7; ++d) j[std::string(weekday_name(d))] = h[static_cast<std::size_t>(d)];
  return j;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

std::vector<ConversationPayments> payments_from_transcripts(const std::vector<Transcript>& transcripts) {
  std::vector<ConversationPayments> out;
  for (const auto& t : transcripts) {
    ConversationPayments cp{t.conversation_id, t.profile_id, t.channel, {}};
    PaymentContext ctx;
    for (std::size_t i = 0; i < t.turns.size(); ++i) {
      if (t.turns[i].author != Author::scammer) continue;
      for (auto& p : extract_payment_profiles(t.turns[i].text, static_cast<int>(i), &ctx)) {
        if (std::none_of(cp.profiles.begin(), cp.profiles.end(), [&](const auto& o) { return o.same_rail(p); })) {
          cp.profiles.push_back(std::move(p));
        }
      }
    }
    if (!cp.profiles.empty()) out.push_back(std::move(cp));
  }
  return out;
}

AnalyticsReport compute_report(const std::vector<InteractionEvent>& events, TextScorer* scorer) {
  AnalyticsReport r;
  r.events = events.size();
  for (const auto& e : events) ++r.event_counts[e.kind];
  const auto transcripts = transcripts_from_events(events);
  r.conversations = transcripts.size();
  r.first_response = first_response_stats(events);
  r.engagement = engagement_duration_stats(events);
  r.weekday = weekday_histogram(events);
  for (const auto& t : transcripts) r.weekday_per_channel.try_emplace(t.channel);
  for (auto& [ch, h] : r.weekday_per_channel) h = weekday_histogram(events, ch);
  r.dialogue = dialogue_length_stats(transcripts);

  std::vector<double> sys, scam;
  for (const auto& t : transcripts) {
    if (auto tb = turns_before_payment(t)) {
      sys.push_back(static_cast<double>(tb->system_turns));
      scam.push_back(static_cast<double>(tb->scammer_turns));
    }
  }
  r.conversations_with_payment = sys.size();
  r.median_system_turns_before_payment = median_of(sys);
  r.median_scammer_turns_before_payment = median_of(scam);
  r.payments = payments_from_transcripts(transcripts);

  HashTextScorer fallback;
  TextScorer& s = scorer ? *scorer : fallback;
  std::vector<MlScore> scores;
  for (const auto& t : transcripts) scores.push_back(ml_text_score(t, s));
  r.ml = tally_ml_scores(scores);
  return r;
}

std::string report_to_json(const AnalyticsReport& r) {
  ojson j;
  j["events"] = r.events;
  j["conversations"] = r.conversations;
  ojson kinds = ojson::object();
  for (const auto& [k, n] : r.event_counts) kinds[std::string(to_string(k))] = n;
  j["event_counts"] = kinds;

  j["first_response"] = {
      {"overall", timing_json(r.first_response.overall)},
      {"per_channel", per_channel(r.first_response.per_channel, timing_json)},
      {"no_reply", r.first_response.no_reply},
      {"no_reply_per_channel", per_channel(r.first_response.no_reply_per_channel, [](std::size_t n) { return n; })},
  };
  ojson days = ojson::object();
  for (const auto& [d, n] : r.engagement.days_active) days[std::to_string(d)] = n;
  j["engagement"] = {
      {"overall", timing_json(r.engagement.overall)},
      {"per_channel", per_channel(r.engagement.per_channel, timing_json)},
      {"one_time_reply", r.engagement.one_time_reply_count},
      {"one_time_reply_per_channel",
       per_channel(r.engagement.one_time_reply_per_channel, [](std::size_t n) { return n; })},
      {"days_active", days},
  };
  j["weekday"] = {{"overall", weekday_json(r.weekday)}, {"per_channel", per_channel(r.weekday_per_channel, weekday_json)}};
  j["dialogue_length"] = {
      {"system", length_json(r.dialogue.system)},
      {"scammer", length_json(r.dialogue.scammer)},
      {"system_per_channel", per_channel(r.dialogue.system_per_channel, length_json)},
      {"scammer_per_channel", per_channel(r.dialogue.scammer_per_channel, length_json)},
  };
  j["turns_before_payment"] = {{"conversations", r.conversations_with_payment},
                               {"median_system", r.median_system_turns_before_payment},
                               {"median_scammer", r.median_scammer_turns_before_payment}};
  ojson pays = ojson::array();
  for (const auto& cp : r.payments) {
    ojson profiles = ojson::array();
    for (const auto& p : cp.profiles) {
      ojson pj = {{"kind", std::string(to_string(p.kind))},
                  {"identifier", p.identifier},
                  {"validity", std::string(to_string(p.validity))},
                  {"ff", p.ff_flag},
                  {"source_turn", p.source_turn}};
      if (p.amount) pj["amount"] = p.amount->to_string();
      profiles.push_back(std::move(pj));
    }
    pays.push_back({{"conversation_id", cp.conversation_id},
                    {"profile_id", cp.profile_id},
                    {"channel", std::string(to_string(cp.channel))},
                    {"profiles", std::move(profiles)}});
  }
  j["payments"] = std::move(pays);
  j["ai_text_score"] = {{"scored", r.ml.total},
                        {"at_least_0.5", r.ml.at_least_050},
                        {"at_least_0.75", r.ml.at_least_075},
                        {"at_least_0.9", r.ml.at_least_090}};
  return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n";
}

std::string report_to_text(const AnalyticsReport& r) {
  std::string out;
  char buf[256];
  out += "Events: " + std::to_string(r.events) + "  Conversations: " + std::to_string(r.conversations) + "\n\n";

  auto timing_table = [&](const char* title, const TimingStats& overall, const std::map<ChannelKind, TimingStats>& per,
                          const std::map<ChannelKind, std::size_t>& extra, const char* extra_name) {
    out += std::string(title) + "\n";
    std::snprintf(buf, sizeof buf, "%-10s %6s %14s %14s %8s %8s\n", "channel", "n", "median", "p90", "<1000ms",
                  extra_name);
    out += buf;
    auto row = [&](const std::string& name, const TimingStats& s, std::size_t x) {
      std::snprintf(buf, sizeof buf, "%-10s %6zu %14s %14s %8zu %8zu\n", name.c_str(), s.n,
                    format_duration(s.median).c_str(), format_duration(s.p90).c_str(), s.under_1000ms_count, x);
      out += buf;
    };
    for (const auto& [ch, s] : per) {
      auto it = extra.find(ch);
      row(std::string(to_string(ch)), s, it == extra.end() ? 0 : it->second);
    }
    std::size_t total = 0;
    for (const auto& [ch, n] : extra) total += n;
    row("total", overall, total);
    out += "\n";
  };
  timing_table("First response", r.first_response.overall, r.first_response.per_channel,
               r.first_response.no_reply_per_channel, "noreply");
  timing_table("Engagement duration", r.engagement.overall, r.engagement.per_channel,
               r.engagement.one_time_reply_per_channel, "onetime");

  out += "Scammer turns by weekday (UTC)\n" + pad("channel", 10);
  for (int d = 0; d < 7; ++d) out += " " + pad(std::string(weekday_name(d)).substr(0, 3), 6);
  out += "\n";
  auto wrow = [&](const std::string& name, const std::array<std::size_t, 7>& h) {
    out += pad(name, 10);
    for (auto n : h) out += " " + pad(std::to_string(n), 6);
    out += "\n";
  };
  for (const auto& [ch, h] : r.weekday_per_channel) wrow(std::string(to_string(ch)), h);
  wrow("total", r.weekday);
  out += "\n";

  out += "Dialogue length\n";
  std::snprintf(buf, sizeof buf, "%-10s %-8s %6s %8s %6s %6s\n", "channel", "author", "n", "median", "min", "max");
  out += buf;
  auto lrow = [&](const std::string& ch, const char* who, const LengthSummary& s) {
    std::snprintf(buf, sizeof buf, "%-10s %-8s %6zu %8.1f %6zu %6zu\n", ch.c_str(), who, s.n, s.median, s.min, s.max);
    out += buf;
  };
  for (const auto& [ch, s] : r.dialogue.system_per_channel) {
    lrow(std::string(to_string(ch)), "system", s);
    lrow(std::string(to_string(ch)), "scammer", r.dialogue.scammer_per_channel.at(ch));
  }
  lrow("total", "system", r.dialogue.system);
  lrow("total", "scammer", r.dialogue.scammer);
  std::snprintf(buf, sizeof buf, "Turns before first payment profile (median, %zu conversations): system %.1f, scammer %.1f\n\n",
                r.conversations_with_payment, r.median_system_turns_before_payment,
                r.median_scammer_turns_before_payment);
  out += buf;

  std::size_t n_profiles = 0;
  for (const auto& cp : r.payments) n_profiles += cp.profiles.size();
  out += "Payment profiles: " + std::to_string(n_profiles) + " in " + std::to_string(r.payments.size()) +
         " conversations\n\n";

  out += "AI text score (mean per conversation)\n";
  std::snprintf(buf, sizeof buf, "%8s %8s %8s %8s\n", "scored", ">=0.5", ">=0.75", ">=0.9");
  out += buf;
  std::snprintf(buf, sizeof buf, "%8zu %8zu %8zu %8zu\n", r.ml.total, r.ml.at_least_050, r.ml.at_least_075,
                r.ml.at_least_090);
  out += buf;
  return out;
}

}  // namespace scambait
