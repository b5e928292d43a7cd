#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scambait/event.hpp"
#include "scambait/honeypost.hpp"
#include "scambait/payextract.hpp"
#include "scambait/text.hpp"
#include "scambait/time.hpp"

namespace scambait {

enum class PersonaVariant { crypto_newcomer, social_lockout, language_negotiator };
enum class LanguageMode { english, negotiate_other };
// What the persona does when a scammer insists on a channel we do not follow.
enum class RedirectPolicy { polite_close, claim_prior_contact };

std::string_view to_string(PersonaVariant v);
PersonaVariant parse_persona_variant(std::string_view s);
std::string_view to_string(RedirectPolicy p);
RedirectPolicy parse_redirect_policy(std::string_view s);

struct PersonaConfig {
  std::string name;
  int age = 0;
  RecoveryContext context;
  PersonaVariant variant = PersonaVariant::crypto_newcomer;
  std::string story;
  std::string access_reason;
  // Synthetic and masked; never a usable secret.
  std::string wallet_address;
  std::string seed_phrase;
  std::string account_email;
  std::string payment_preference = "PayPal first";
  LanguageMode language_mode = LanguageMode::english;
  std::string preferred_language = "en";  // language proposed when negotiating
  bool introduce_errors = false;
  bool refuses_calls = true;
  bool refuses_documents = true;
  std::size_t max_message_length = 600;
  RedirectPolicy redirect_policy = RedirectPolicy::polite_close;
  std::uint64_t seed = 0;
};

PersonaConfig build_persona(const RecoveryContext& context, PersonaVariant variant, std::uint64_t seed);

// Prose description handed to a real chat provider as its system text.
std::string persona_system_text(const PersonaConfig& p);

enum class Author { system, scammer };
std::string_view to_string(Author a);

struct DialogueTurn {
  Author author = Author::system;
  std::string text;
  Timestamp at{};
  bool operator==(const DialogueTurn&) const = default;
};

enum class ConversationState { open, awaiting_reconnect, ended };
enum class EndReason { payment_profiles_exhausted, scammer_silent, redirected_external, operator_stop };

std::string_view to_string(ConversationState s);
std::string_view to_string(EndReason r);
EndReason parse_end_reason(std::string_view s);

// --- chat providers ---------------------------------------------------------

enum class Phase {
  opening,
  opening_negotiate,
  propose_language,
  describe_problem,
  provide_address,
  provide_seed,
  ask_price,
  ask_payment_address,
  claim_payment_failure,
  refuse_screenshot,
  refuse_call,
  refuse_documents,
  redirect_back,
  acknowledge,
  reconnect,
  closing_exhausted,
  closing_redirect,
  claim_prior_contact,
  fallback,
};
std::string_view to_string(Phase p);

struct Instruction {
  Phase phase = Phase::acknowledge;
  std::string language = "en";
  std::string price;  // quoted price, when known ("$150")
};

// English rendering of an instruction for a real model.
std::string instruction_text(const Instruction& ins, const PersonaConfig& persona);

class ProviderError : public std::runtime_error {
 public:
  ProviderError(const std::string& what, bool retryable) : std::runtime_error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  // Sees the whole prior transcript. Throws ProviderError.
  virtual std::string generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                               const Instruction& instruction) = 0;
};

// Deterministic template replies keyed by phase and language.
class ScriptedChatProvider final : public ChatProvider {
 public:
  ScriptedChatProvider();
  std::string generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                       const Instruction& instruction) override;

 private:
  text::Sections templates_;
};

struct HttpProviderConfig {
  std::string url;  // "https://host[:port]/path"
  std::string api_key;
  Millis timeout{30 * 1000};
};

// POSTs {"persona","transcript","instruction"} as JSON and takes the response
// body as the reply text. 429/5xx and transport failures are retryable.
class HttpChatProvider final : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpProviderConfig cfg);
  std::string generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                       const Instruction& instruction) override;

  // The JSON body generate() would send; exposed for tests.
  static std::string request_body(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                                  const Instruction& instruction);

 private:
  HttpProviderConfig cfg_;
};

// Retries retryable ProviderErrors with exponential backoff.
class RetryingProvider final : public ChatProvider {
 public:
  using Sleeper = std::function<void(Millis)>;
  RetryingProvider(ChatProvider& inner, int attempts = 3, Millis first_backoff = Millis{500}, Sleeper sleeper = {});
  std::string generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& transcript,
                       const Instruction& instruction) override;

 private:
  ChatProvider& inner_;
  int attempts_;
  Millis first_backoff_;
  Sleeper sleeper_;
};

// --- conversation engine ----------------------------------------------------

struct Conversation {
  std::string id;
  std::string scammer_profile_id;
  ChannelKind channel = ChannelKind::simulated;
  PersonaConfig persona;
  std::vector<DialogueTurn> turns;
  ConversationState state = ConversationState::open;
  std::optional<EndReason> end_reason;
  std::vector<PaymentProfile> collected;
  int failure_claims_made = 0;

  // Engine bookkeeping.
  bool reconnect_sent = false;
  bool language_proposed = false;
  bool prior_contact_claimed = false;
  std::optional<std::string> language;  // "english" or a code once negotiated
  std::size_t scanned_turns = 0;
  PaymentContext payment_context;

  // Appends a scammer turn. Throws std::logic_error when ended or when `at`
  // precedes the last turn. A reply while awaiting_reconnect reopens.
  void add_scammer_turn(std::string text, Timestamp at);
  std::size_t count(Author a) const;
  std::optional<Timestamp> last_at(Author a) const;
};

struct EngineConfig {
  Millis silence_timeout = 48 * kHour;
  int failure_cap = 5;
};

namespace decision {
struct Send {
  std::string text;
};
struct RequestPaymentFailure {
  std::string text;
};
struct ReconnectProbe {
  std::string text;
};
struct End {
  EndReason reason = EndReason::operator_stop;
  std::string text;  // closing line; empty when nothing should be sent
};
// Nothing to do until resume_at (waiting on the scammer).
struct Idle {
  Timestamp resume_at{};
};
}  // namespace decision

using Decision =
    std::variant<decision::Send, decision::RequestPaymentFailure, decision::ReconnectProbe, decision::End, decision::Idle>;

// Text the decision asks to send, if any.
std::optional<std::string> outbound_text(const Decision& d);

// Runs the state machine at time `now` and applies the decision to the
// conversation (new system turn, recorded profiles, state). The provider is
// consulted before anything changes, so a ProviderError leaves the
// conversation untouched. Throws std::logic_error on an ended conversation.
Decision next_reply(Conversation& conv, ChatProvider& provider, Timestamp now, const EngineConfig& cfg = {});

// Operator-initiated stop.
void stop_conversation(Conversation& conv);

// Drops sentences that would disclose automation, enforces the persona's
// length limit (cut at a sentence boundary), and falls back to the persona's
// stock line when nothing usable is left.
std::string sanitize_reply(std::string_view text, const PersonaConfig& persona, std::string_view language = "en");

bool discloses_automation(std::string_view text);

// "english" or one of es/de/fr/nl, from what the scammer answered to the
// persona's language proposal.
std::string negotiate_language(const Conversation& conv);

// Language of a message by stopword counts: "en", "es", "de", "fr", "nl" or ""
// when undecided.
std::string detect_language(std::string_view text);

std::string_view language_name(std::string_view code);

}  // namespace scambait
