#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scambait/config.hpp"
#include "scambait/event_log.hpp"
#include "scambait/ingest.hpp"
#include "scambait/persona.hpp"
#include "scambait/report.hpp"

namespace scambait {

struct ConversationSummary {
  std::string id;
  std::string profile_id;
  ChannelKind channel = ChannelKind::simulated;
  PersonaVariant variant = PersonaVariant::crypto_newcomer;
  ConversationState state = ConversationState::open;
  std::optional<EndReason> end_reason;
  std::size_t system_turns = 0;
  std::size_t scammer_turns = 0;
  int failure_claims = 0;
  std::vector<PaymentProfile> collected;
  std::string language;  // negotiated language, empty when not negotiated
};

struct SimulationReport {
  std::size_t posts = 0;
  std::size_t respondents = 0;
  std::map<Classification, std::size_t> classifications;
  std::size_t engaged = 0;
  std::size_t not_engaged_unsupported = 0;  // candidates offering no supported channel
  std::vector<ConversationSummary> conversations;
  std::size_t payment_profiles = 0;
  AnalyticsReport analytics;
};

// Full pipeline against a simulated population: honeyposts, respondent
// replies, filtration, persona engagement over simulated channels, then
// analytics over the resulting log. Everything runs on a simulated clock
// and is a pure function of the config. Events are appended to `log`.
// Throws ConfigError for an invalid config.
SimulationReport run_simulation(const CampaignConfig& config, EventLog& log);

// Stable JSON document for the report.
std::string simulation_report_to_json(const SimulationReport& r);

}  // namespace scambait
