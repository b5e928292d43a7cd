#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/event.hpp"
#include "scambait/ingest.hpp"
#include "scambait/payextract.hpp"
#include "scambait/rng.hpp"
#include "scambait/time.hpp"

namespace scambait {

enum class VerificationAsk { account_address, seed_phrase, screenshot, id_document, phone_or_video };
enum class IssueReason { system_bug, blocked_suspicion, access_issue };
enum class SimStage { greet, verify, diagnose, demand_fee, give_method, await_proof, frustrated, gone };

std::string_view to_string(VerificationAsk a);
std::string_view to_string(IssueReason r);
std::string_view to_string(SimStage s);
VerificationAsk parse_verification_ask(std::string_view s);
IssueReason parse_issue_reason(std::string_view s);

// A payment rail the scammer will hand out. For gift cards the identifier is
// the brand.
struct PaymentMethod {
  PaymentKind kind = PaymentKind::paypal;
  std::string identifier;
  bool operator==(const PaymentMethod&) const = default;
};

struct SimScammerScript {
  std::string id;
  std::string handle;
  ChannelKind channel = ChannelKind::simulated;
  std::string role_title;
  std::vector<VerificationAsk> verification_asks;
  IssueReason issue_reason = IssueReason::system_bug;
  Money price{Decimal::from_int(150), "USD"};
  std::vector<PaymentMethod> payment_methods;
  int frustration_threshold = 3;
  bool auto_reply = false;
  bool one_time_reply = false;
  bool accepts_other_language = true;
  bool profane = false;
  // Off-platform channel the scammer pushes once, right after greeting.
  std::optional<ContactChannel> redirect;
  Millis first_reply_median{10 * 60 * 1000};
  Millis reply_median{5 * 60 * 1000};
  std::uint64_t seed = 0;
  bool operator==(const SimScammerScript&) const = default;
};

// Throws std::invalid_argument naming the broken rule.
void check_script(const SimScammerScript& s);

struct SimState {
  SimStage stage = SimStage::greet;
  int methods_given = 0;
  int asks_made = 0;
  int failure_claims = 0;
  int steps = 0;
  bool auto_replied = false;
  bool redirected = false;
  bool language_answered = false;
  bool operator==(const SimState&) const = default;
};

struct ScammerReply {
  std::optional<std::string> text;  // nullopt = silence
  Millis delay{0};
  Timestamp at{};  // clock.now() + delay
  SimState state;
};

// One scammer reaction to an inbound persona message. Deterministic in
// (script, state, inbound). Throws std::logic_error when state is gone.
ScammerReply scammer_step(const SimScammerScript& script, const SimState& state, std::string_view inbound,
                          const Clock& clock);

// True when the text says a payment attempt failed (any supported language).
bool is_failure_claim(std::string_view text);

struct PopulationMix {
  double auto_reply = 0.156;
  // One-time-reply probability per channel.
  double one_time_email = 0.333;
  double one_time_x = 0.1007;
  double one_time_instagram = 0.026;
  double redirect = 0.1;
  double profane = 0.0;
  double decline_language = 0.3;
  double invalid_crypto = 0.05;
  // Price: half the mass log-uniform below the median, half above.
  double price_min = 20;
  double price_median = 150;
  double price_max = 5700;
  // First-reply medians per channel.
  Millis first_reply_email{(33 * 60 + 9) * 1000};
  Millis first_reply_x{((2 * 24 + 6) * 3600 + 16 * 60 + 36) * 1000LL};
  Millis first_reply_instagram{(57 * 60 + 18) * 1000};
  Millis reply_median{20 * 60 * 1000};
  int min_methods = 1;
  int max_methods = 4;
};

// `channels` are assigned round-robin; empty means all three real kinds.
std::vector<SimScammerScript> make_population(int n, std::uint64_t seed, const PopulationMix& mix = {},
                                              const std::vector<ChannelKind>& channels = {});

// Log-uniform halves joined at the median.
double sample_price(Rng& rng, const PopulationMix& mix);

std::string script_to_json(const SimScammerScript& s);
SimScammerScript script_from_json(std::string_view json);

}  // namespace scambait
