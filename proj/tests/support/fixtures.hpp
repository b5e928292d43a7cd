#pragma once

// Shared fixture loading and scenario builders for the unit and acceptance
// tests.

#include <filesystem>
#include <string>
#include <vector>

#include "scambait/analytics.hpp"
#include "scambait/event.hpp"
#include "scambait/ingest.hpp"
#include "scambait/persona.hpp"
#include "scambait/simscammer.hpp"
#include "stats_oracle.hpp"

namespace fixtures {

std::filesystem::path path(const std::string& name);
std::string read(const std::string& name);

// Tab-separated rows; '#' comment lines and blank lines are skipped, empty
// fields are kept.
std::vector<std::vector<std::string>> tsv(const std::string& name);

scambait::Timestamp at(const char* iso);

// "system\ttext" / "scammer\ttext" dialogue, one turn every `step` from
// `start`.
scambait::Transcript dialogue(const std::string& name, scambait::Timestamp start,
                              scambait::Millis step = scambait::kMinute * 5);

// The transcript as direct-message log events.
std::vector<scambait::InteractionEvent> dm_events(const scambait::Transcript& t);

std::vector<oracle::DmEvent> to_oracle(const std::vector<scambait::InteractionEvent>& events);

// 20 respondents: 5 verified, 5 on the official allowlist, 5 benign and 5
// scam candidates. Ids encode the expected class ("ver-", "off-", "ben-",
// "cand-").
struct Respondent {
  scambait::ScamProfile profile;
  std::vector<scambait::InteractionEvent> events;
};
std::vector<Respondent> filtration_fixture();

// Crypto-wallet "support agent" holding PayPal, BTC and ETH rails.
scambait::SimScammerScript three_method_script(std::uint64_t seed = 11);

// Random profiles for the clustering oracle, with deliberate collisions in
// names, descriptions, followers and channels.
std::vector<scambait::ScamProfile> random_profiles(std::size_t n, std::uint64_t seed);
std::vector<oracle::ClusterInput> to_oracle(const std::vector<scambait::ScamProfile>& profiles);

// Runs a persona conversation against a scripted scammer until it ends or
// `max_decisions` is reached. Returns every outbound text in order.
struct DriveResult {
  std::vector<std::string> outbound;
  std::vector<scambait::Decision> decisions;
  scambait::SimState scammer;
};
DriveResult drive(scambait::Conversation& conv, scambait::ChatProvider& provider,
                  const scambait::SimScammerScript& script, scambait::Timestamp start, int max_decisions = 200,
                  const scambait::EngineConfig& cfg = {});

}  // namespace fixtures
