#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scambait/channels.hpp"
#include "scambait/honeypost.hpp"
#include "scambait/persona.hpp"
#include "scambait/simscammer.hpp"

namespace scambait {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PostConfig {
  std::vector<RecoveryContext> contexts;  // empty = all fifteen
  int posts_per_context = 2;
  Millis interval = 15 * kMinute;
};

struct PersonaMix {
  // Share of crypto-context conversations handled by the language negotiator.
  double language_negotiator = 0.1;
  std::size_t max_message_length = 600;
};

struct ProviderConfig {
  std::string kind = "scripted";  // "scripted" | "http"
  std::string url;
  std::string api_key;
  Millis timeout = 30 * kSecond;
  int attempts = 3;
};

struct SimulationConfig {
  int population = 20;
  PopulationMix mix;
  std::vector<ChannelKind> channels;  // empty = email, x, instagram
  std::vector<SimScammerScript> scripts;  // added after the generated population
  // Respondents that must be filtered out before engagement.
  int verified_respondents = -1;  // -1 = population / 10
  int official_respondents = -1;  // -1 = population / 10
  int benign_respondents = -1;    // -1 = population / 5
  int non_text_interactions = -1; // -1 = population
  Millis horizon = 60 * kDay;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::string start = "2023-11-20T00:00:00.000Z";
  PostConfig posts;
  std::map<ChannelKind, RateLimit> rate_limits;  // overrides of default_rate_limit
  int accounts_per_channel = 5;
  PersonaMix personas;
  ProviderConfig provider;
  SimulationConfig simulation;
  EngineConfig engine;
  std::optional<bool> mask_personal;  // unset: off when simulating, on for real channels

  RateLimit rate_limit(ChannelKind k) const;
  Timestamp start_time() const;
};

// JSON text -> config; missing keys keep their defaults. Throws ConfigError.
CampaignConfig parse_config(std::string_view json);
CampaignConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const CampaignConfig& c);

// SCAMBAIT_PROVIDER_URL / SCAMBAIT_PROVIDER_KEY override the provider
// endpoint and key; nothing else is read from the environment.
void apply_env_overrides(CampaignConfig& c);

// Throws ConfigError describing the first invalid field.
void validate_config(const CampaignConfig& c);

}  // namespace scambait
