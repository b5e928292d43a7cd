#include <thread>

#include <httplib.h>

#include <json.hpp>

#include "scambait/embedded.hpp"
#include "scambait/persona.hpp"
#include "scambait/rng.hpp"

namespace scambait {
namespace {

std::string fill(std::string s, const PersonaConfig& p, const Instruction& ins) {
  s = text::replace_all(std::move(s), "{target}", display_name(p.context));
  s = text::replace_all(std::move(s), "{address}", p.wallet_address);
  s = text::replace_all(std::move(s), "{seed}", p.seed_phrase);
  s = text::replace_all(std::move(s), "{reason}", p.access_reason);
  s = text::replace_all(std::move(s), "{name}", p.name.substr(0, p.name.find(' ')));
  s = text::replace_all(std::move(s), "{language_name}", language_name(p.preferred_language));
  s = text::replace_all(std::move(s), "{price}", ins.price.empty() ? "the money" : ins.price);
  return s;
}

// Weak-English styling for the negotiating persona.
std::string drop_articles(std::string_view s) {
  std::vector<std::string> kept;
  for (const auto& w : text::split(s, ' ')) {
    if (w == "the" || w == "a" || w == "an") continue;
    kept.push_back(w);
  }
  return text::join(kept, " ");
}

nlohmann::json persona_json(const PersonaConfig& p) {
  return {{"name", p.name},
          {"age", p.age},
          {"variant", std::string(to_string(p.variant))},
          {"target", display_name(p.context)},
          {"system", persona_system_text(p)},
          {"max_message_length", p.max_message_length}};
}

}  // namespace

ScriptedChatProvider::ScriptedChatProvider() : templates_(text::parse_sections(embedded_data("persona_replies.txt"))) {}

std::string ScriptedChatProvider::generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                                           const Instruction& instruction) {
  const std::string phase(to_string(instruction.phase));
  auto it = templates_.find(phase + "." + instruction.language);
  const bool english = it == templates_.end() || it->second.empty();
  if (english) it = templates_.find(phase + ".en");
  if (it == templates_.end() || it->second.empty()) {
    throw ProviderError("no template for phase " + phase, false);
  }
  Rng rng(derive_seed(persona.seed, phase, transcript.size()));
  std::string out = fill(rng.pick(std::span<const std::string>(it->second)), persona, instruction);
  if (persona.introduce_errors && (english || instruction.language == "en")) out = drop_articles(out);
  return out;
}

HttpChatProvider::HttpChatProvider(HttpProviderConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.url.rfind("http://", 0) != 0 && cfg_.url.rfind("https://", 0) != 0) {
    throw std::invalid_argument("provider url must start with http:// or https://");
  }
}

std::string HttpChatProvider::request_body(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                                           const Instruction& instruction) {
  nlohmann::json turns = nlohmann::json::array();
  for (const auto& t : transcript) {
    turns.push_back({{"author", std::string(to_string(t.author))}, {"text", t.text}, {"at", format_iso8601(t.at)}});
  }
  nlohmann::json body = {
      {"persona", persona_json(persona)},
      {"transcript", std::move(turns)},
      {"instruction",
       {{"phase", std::string(to_string(instruction.phase))},
        {"language", instruction.language},
        {"text", instruction_text(instruction, persona)}}},
  };
  return body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string HttpChatProvider::generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                                       const Instruction& instruction) {
  const std::size_t scheme_end = cfg_.url.find("://") + 3;
  const std::size_t path_start = cfg_.url.find('/', scheme_end);
  const std::string origin = cfg_.url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : cfg_.url.substr(path_start);

  httplib::Client client(origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout).count();
  client.set_connection_timeout(static_cast<time_t>(secs));
  client.set_read_timeout(static_cast<time_t>(secs));
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  auto res = client.Post(path, headers, request_body(persona, transcript, instruction), "application/json");
  if (!res) throw ProviderError("provider request failed: " + httplib::to_string(res.error()), true);
  if (res->status == 429 || res->status >= 500) {
    throw ProviderError("provider returned HTTP " + std::to_string(res->status), true);
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError("provider returned HTTP " + std::to_string(res->status), false);
  }
  const std::string reply(text::trim(res->body));
  if (reply.empty()) throw ProviderError("provider returned an empty reply", true);
  return reply;
}

RetryingProvider::RetryingProvider(ChatProvider& inner, int attempts, Millis first_backoff, Sleeper sleeper)
    : inner_(inner), attempts_(std::max(1, attempts)), first_backoff_(first_backoff), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](Millis d) { std::this_thread::sleep_for(d); };
}

std::string RetryingProvider::generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                                       const Instruction& instruction) {
  Millis backoff = first_backoff_;
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_.generate(persona, transcript, instruction);
    } catch (const ProviderError& e) {
      if (!e.retryable() || attempt >= attempts_) throw;
    }
    sleeper_(backoff);
    backoff *= 2;
  }
}

}  // namespace scambait
