#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "scambait/analytics.hpp"
#include "scambait/payextract.hpp"

namespace scambait {

struct ConversationPayments {
  std::string conversation_id;
  std::string profile_id;
  ChannelKind channel = ChannelKind::simulated;
  std::vector<PaymentProfile> profiles;
  bool operator==(const ConversationPayments&) const = default;
};

// Payment profiles recovered from the scammer turns of each conversation in
// the log, deduplicated per conversation; source_turn indexes the transcript.
std::vector<ConversationPayments> payments_from_transcripts(const std::vector<Transcript>& transcripts);

struct AnalyticsReport {
  std::size_t events = 0;
  std::size_t conversations = 0;
  std::map<EventKind, std::size_t> event_counts;
  FirstResponseReport first_response;
  EngagementReport engagement;
  std::array<std::size_t, 7> weekday{};
  std::map<ChannelKind, std::array<std::size_t, 7>> weekday_per_channel;
  DialogueLengthReport dialogue;
  // Medians over conversations that disclosed a payment profile.
  double median_system_turns_before_payment = 0;
  double median_scammer_turns_before_payment = 0;
  std::size_t conversations_with_payment = 0;
  std::vector<ConversationPayments> payments;
  MlBuckets ml;
  bool operator==(const AnalyticsReport&) const = default;
};

// Everything is recomputed from the log alone; the scorer defaults to the
// deterministic hash scorer.
AnalyticsReport compute_report(const std::vector<InteractionEvent>& events, TextScorer* scorer = nullptr);

// Stable, pretty-printed JSON document.
std::string report_to_json(const AnalyticsReport& r);
// Plain-text tables: first response, engagement duration, weekdays, dialogue
// length, AI text score.
std::string report_to_text(const AnalyticsReport& r);

}  // namespace scambait
