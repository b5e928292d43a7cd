#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scambait/time.hpp"

namespace scambait {

enum class RecoveryKind { crypto_wallet, social_media };

std::string_view to_string(RecoveryKind k);
RecoveryKind parse_recovery_kind(std::string_view s);

struct RecoveryContext {
  RecoveryKind kind = RecoveryKind::crypto_wallet;
  std::string target;

  bool operator==(const RecoveryContext&) const = default;
};

class InvalidContext : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The fixed target sets for each context kind.
std::span<const std::string_view> recovery_targets(RecoveryKind kind);
std::vector<RecoveryContext> all_recovery_contexts();

// Throws InvalidContext when the target is not in the set for its kind.
void check_context(const RecoveryContext& ctx);

// Name used in post and persona text: wallets get a "Wallet" suffix unless the
// target already carries it ("Trust Wallet", "Badger Wallet"), social
// services are used as-is.
std::string display_name(const RecoveryContext& ctx);

struct HoneyPost {
  std::string id;
  RecoveryContext context;
  std::array<std::string, 3> sentences;
  std::vector<std::string> hashtags;
  std::string text;
  Timestamp scheduled_at{};
};

struct PostSchedule {
  std::vector<HoneyPost> posts;
  Millis interval{0};
};

inline constexpr std::size_t kMaxPostLength = 280;

// Pure function of (context, seed) over the built-in phrase pools. Throws
// InvalidContext for an unknown target.
HoneyPost generate_post(const RecoveryContext& context, std::uint64_t seed);

// Violation codes: "empty_text", "length_exceeded", "malformed_hashtag".
std::vector<std::string> validate_post(std::string_view text);

// Throws std::invalid_argument when interval is not positive.
PostSchedule schedule_posts(std::vector<HoneyPost> posts, Timestamp start, Millis interval);

// Phrase pools, exposed so tests can enumerate every combination.
struct PhrasePools {
  std::vector<std::string> intros;
  std::vector<std::string> crypto_problems;
  std::vector<std::string> social_problems;
  std::vector<std::string> help;
  std::vector<std::string> hashtag_keywords;

  static PhrasePools parse(std::string_view data);
  const std::vector<std::string>& problems(RecoveryKind k) const {
    return k == RecoveryKind::crypto_wallet ? crypto_problems : social_problems;
  }
};

const PhrasePools& default_phrase_pools();

// Renders a post from explicit choices; generate_post is this plus seeded
// choices. Exposed for exhaustive length checks.
std::string render_post(const std::array<std::string, 3>& sentences, const std::vector<std::string>& hashtags);
std::string fill_target(std::string_view tmpl, std::string_view target);
std::string make_hashtag(const RecoveryContext& ctx, std::string_view keyword);

}  // namespace scambait
