#include "scambait/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "scambait/text.hpp"

namespace scambait {

using nlohmann::json;

RateLimit CampaignConfig::rate_limit(ChannelKind k) const {
  auto it = rate_limits.find(k);
  return it == rate_limits.end() ? default_rate_limit(k) : it->second;
}

Timestamp CampaignConfig::start_time() const { return parse_iso8601(start); }

namespace {

Millis ms_field(const json& j, const char* key, Millis def) {
  if (!j.contains(key)) return def;
  return Millis{j.at(key).get<std::int64_t>()};
}

}  // namespace

CampaignConfig parse_config(std::string_view text) {
  CampaignConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    c.seed = j.value("seed", c.seed);
    c.start = j.value("start", c.start);
    if (j.contains("posts")) {
      const auto& p = j["posts"];
      for (const auto& ctx : p.value("contexts", json::array())) {
        c.posts.contexts.push_back(
            {parse_recovery_kind(ctx.at("kind").get<std::string>()), ctx.at("target").get<std::string>()});
      }
      c.posts.posts_per_context = p.value("posts_per_context", c.posts.posts_per_context);
      c.posts.interval = ms_field(p, "interval_ms", c.posts.interval);
    }
    if (j.contains("rate_limits")) {
      for (const auto& [name, v] : j["rate_limits"].items()) {
        c.rate_limits[parse_channel_kind(name)] = RateLimit{v.at("max_sends").get<int>(), Millis{v.at("window_ms").get<std::int64_t>()}};
      }
    }
    c.accounts_per_channel = j.value("accounts_per_channel", c.accounts_per_channel);
    if (j.contains("personas")) {
      const auto& p = j["personas"];
      c.personas.language_negotiator = p.value("language_negotiator", c.personas.language_negotiator);
      c.personas.max_message_length = p.value("max_message_length", c.personas.max_message_length);
    }
    if (j.contains("provider")) {
      const auto& p = j["provider"];
      c.provider.kind = p.value("kind", c.provider.kind);
      c.provider.url = p.value("url", c.provider.url);
      c.provider.api_key = p.value("api_key", c.provider.api_key);
      c.provider.timeout = ms_field(p, "timeout_ms", c.provider.timeout);
      c.provider.attempts = p.value("attempts", c.provider.attempts);
    }
    if (j.contains("simulation")) {
      const auto& s = j["simulation"];
      c.simulation.population = s.value("population", c.simulation.population);
      for (const auto& ch : s.value("channels", json::array())) {
        c.simulation.channels.push_back(parse_channel_kind(ch.get<std::string>()));
      }
      for (const auto& sc : s.value("scripts", json::array())) c.simulation.scripts.push_back(script_from_json(sc.dump()));
      c.simulation.verified_respondents = s.value("verified_respondents", c.simulation.verified_respondents);
      c.simulation.official_respondents = s.value("official_respondents", c.simulation.official_respondents);
      c.simulation.benign_respondents = s.value("benign_respondents", c.simulation.benign_respondents);
      c.simulation.non_text_interactions = s.value("non_text_interactions", c.simulation.non_text_interactions);
      c.simulation.horizon = ms_field(s, "horizon_ms", c.simulation.horizon);
      if (s.contains("mix")) {
        const auto& m = s["mix"];
        auto& mx = c.simulation.mix;
        mx.auto_reply = m.value("auto_reply", mx.auto_reply);
        mx.one_time_email = m.value("one_time_email", mx.one_time_email);
        mx.one_time_x = m.value("one_time_x", mx.one_time_x);
        mx.one_time_instagram = m.value("one_time_instagram", mx.one_time_instagram);
        mx.redirect = m.value("redirect", mx.redirect);
        mx.profane = m.value("profane", mx.profane);
        mx.decline_language = m.value("decline_language", mx.decline_language);
        mx.invalid_crypto = m.value("invalid_crypto", mx.invalid_crypto);
        mx.price_min = m.value("price_min", mx.price_min);
        mx.price_median = m.value("price_median", mx.price_median);
        mx.price_max = m.value("price_max", mx.price_max);
        mx.min_methods = m.value("min_methods", mx.min_methods);
        mx.max_methods = m.value("max_methods", mx.max_methods);
        mx.reply_median = ms_field(m, "reply_median_ms", mx.reply_median);
      }
    }
    if (j.contains("engine")) {
      const auto& e = j["engine"];
      c.engine.silence_timeout = ms_field(e, "silence_timeout_ms", c.engine.silence_timeout);
      c.engine.failure_cap = e.value("failure_cap", c.engine.failure_cap);
    }
    if (j.contains("mask_personal")) c.mask_personal = j["mask_personal"].get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  validate_config(c);
  return c;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = text::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string config_to_json(const CampaignConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["start"] = c.start;
  auto ctxs = nlohmann::ordered_json::array();
  for (const auto& ctx : c.posts.contexts) ctxs.push_back({{"kind", std::string(to_string(ctx.kind))}, {"target", ctx.target}});
  j["posts"] = {{"contexts", ctxs}, {"posts_per_context", c.posts.posts_per_context}, {"interval_ms", c.posts.interval.count()}};
  auto limits = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.rate_limits) limits[std::string(to_string(k))] = {{"max_sends", v.max_sends}, {"window_ms", v.window.count()}};
  j["rate_limits"] = limits;
  j["accounts_per_channel"] = c.accounts_per_channel;
  j["personas"] = {{"language_negotiator", c.personas.language_negotiator},
                   {"max_message_length", c.personas.max_message_length}};
  // The key is a secret and never written back out.
  j["provider"] = {{"kind", c.provider.kind},
                   {"url", c.provider.url},
                   {"timeout_ms", c.provider.timeout.count()},
                   {"attempts", c.provider.attempts}};
  auto chans = nlohmann::ordered_json::array();
  for (auto ch : c.simulation.channels) chans.push_back(std::string(to_string(ch)));
  auto scripts = nlohmann::ordered_json::array();
  for (const auto& s : c.simulation.scripts) scripts.push_back(nlohmann::ordered_json::parse(script_to_json(s)));
  const auto& mx = c.simulation.mix;
  j["simulation"] = {
      {"population", c.simulation.population},
      {"channels", chans},
      {"scripts", scripts},
      {"verified_respondents", c.simulation.verified_respondents},
      {"official_respondents", c.simulation.official_respondents},
      {"benign_respondents", c.simulation.benign_respondents},
      {"non_text_interactions", c.simulation.non_text_interactions},
      {"horizon_ms", c.simulation.horizon.count()},
      {"mix",
       {{"auto_reply", mx.auto_reply},
        {"one_time_email", mx.one_time_email},
        {"one_time_x", mx.one_time_x},
        {"one_time_instagram", mx.one_time_instagram},
        {"redirect", mx.redirect},
        {"profane", mx.profane},
        {"decline_language", mx.decline_language},
        {"invalid_crypto", mx.invalid_crypto},
        {"price_min", mx.price_min},
        {"price_median", mx.price_median},
        {"price_max", mx.price_max},
        {"min_methods", mx.min_methods},
        {"max_methods", mx.max_methods},
        {"reply_median_ms", mx.reply_median.count()}}},
  };
  j["engine"] = {{"silence_timeout_ms", c.engine.silence_timeout.count()}, {"failure_cap", c.engine.failure_cap}};
  if (c.mask_personal) j["mask_personal"] = *c.mask_personal;
  return j.dump(2) + "\n";
}

void apply_env_overrides(CampaignConfig& c) {
  if (const char* url = std::getenv("SCAMBAIT_PROVIDER_URL"); url && *url) c.provider.url = url;
  if (const char* key = std::getenv("SCAMBAIT_PROVIDER_KEY"); key && *key) c.provider.api_key = key;
}

void validate_config(const CampaignConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError("invalid config: " + m); };
  try {
    (void)c.start_time();
  } catch (const std::invalid_argument&) {
    fail("start must be an ISO-8601 UTC timestamp");
  }
  for (const auto& ctx : c.posts.contexts) {
    try {
      check_context(ctx);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (c.posts.posts_per_context < 0) fail("posts.posts_per_context must be >= 0");
  if (c.posts.interval <= Millis{0}) fail("posts.interval_ms must be > 0");
  for (const auto& [k, v] : c.rate_limits) {
    if (v.max_sends < 1 || v.window <= Millis{0}) fail("rate limit for " + std::string(to_string(k)) + " must be positive");
  }
  if (c.accounts_per_channel < 1) fail("accounts_per_channel must be >= 1");
  if (c.personas.language_negotiator < 0 || c.personas.language_negotiator > 1) fail("personas.language_negotiator must be in [0,1]");
  if (c.personas.max_message_length < 20) fail("personas.max_message_length must be >= 20");
  if (c.provider.kind != "scripted" && c.provider.kind != "http") fail("provider.kind must be scripted or http");
  if (c.provider.kind == "http" && c.provider.url.empty()) fail("provider.url is required for the http provider");
  if (c.provider.attempts < 1) fail("provider.attempts must be >= 1");
  if (c.simulation.population < 0) fail("simulation.population must be >= 0");
  if (c.simulation.horizon <= Millis{0}) fail("simulation.horizon_ms must be > 0");
  const auto& mx = c.simulation.mix;
  for (double p : {mx.auto_reply, mx.one_time_email, mx.one_time_x, mx.one_time_instagram, mx.redirect, mx.profane,
                   mx.decline_language, mx.invalid_crypto}) {
    if (p < 0 || p > 1) fail("simulation.mix probabilities must be in [0,1]");
  }
  if (!(mx.price_min > 0 && mx.price_min <= mx.price_median && mx.price_median <= mx.price_max)) {
    fail("simulation.mix prices must satisfy 0 < min <= median <= max");
  }
  if (mx.min_methods < 1 || mx.max_methods < mx.min_methods) fail("simulation.mix method counts are inconsistent");
  for (const auto& s : c.simulation.scripts) {
    try {
      check_script(s);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (c.engine.silence_timeout <= Millis{0}) fail("engine.silence_timeout_ms must be > 0");
  if (c.engine.failure_cap < 1) fail("engine.failure_cap must be >= 1");
}

}  // namespace scambait
