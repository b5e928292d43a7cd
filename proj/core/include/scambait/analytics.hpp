#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scambait/event.hpp"
#include "scambait/ingest.hpp"
#include "scambait/persona.hpp"
#include "scambait/time.hpp"

namespace scambait {

// --- order statistics ---------------------------------------------------------

// Sorted ascending; odd n -> middle, even n -> mean of the two middles.
// Empty input -> 0.
double median_of(std::vector<double> values);
// Nearest rank: the ceil(0.9 n)-th smallest. Empty input -> 0.
double p90_of(std::vector<double> values);

struct TimingStats {
  Millis median{0};
  Millis p90{0};
  std::size_t under_1000ms_count = 0;
  std::size_t n = 0;
  bool operator==(const TimingStats&) const = default;
};

// Medians of an even count are rounded toward zero to whole milliseconds.
TimingStats timing_stats(const std::vector<Millis>& durations);

// --- transcripts rebuilt from the log ------------------------------------------

// The direct-message view of one conversation: direct_message_out events are
// system turns, direct_message_in events are scammer turns.
struct Transcript {
  std::string conversation_id;
  std::string profile_id;
  ChannelKind channel = ChannelKind::simulated;
  std::vector<DialogueTurn> turns;

  std::size_t count(Author a) const;
};

// Ordered by first event; turns keep log order.
std::vector<Transcript> transcripts_from_events(const std::vector<InteractionEvent>& events);

Transcript transcript_of(const Conversation& c);

// --- timing -------------------------------------------------------------------

struct FirstResponseReport {
  TimingStats overall;
  std::map<ChannelKind, TimingStats> per_channel;
  std::size_t no_reply = 0;  // conversations without a scammer reply
  std::map<ChannelKind, std::size_t> no_reply_per_channel;
  bool operator==(const FirstResponseReport&) const = default;
};

// Delta = first scammer reply - first system message, per conversation.
FirstResponseReport first_response_stats(const std::vector<InteractionEvent>& events);

struct EngagementReport {
  TimingStats overall;
  std::map<ChannelKind, TimingStats> per_channel;
  std::size_t one_time_reply_count = 0;
  std::map<ChannelKind, std::size_t> one_time_reply_per_channel;
  // Distinct UTC days with scammer turns -> number of conversations.
  std::map<int, std::size_t> days_active;
  bool operator==(const EngagementReport&) const = default;
};

// Duration = last scammer turn - first scammer turn; a single scammer turn is a
// one-time reply with duration 0. Conversations without scammer turns are skipped.
EngagementReport engagement_duration_stats(const std::vector<InteractionEvent>& events);

// Scammer turns (direct_message_in) per UTC weekday, Monday = 0.
std::array<std::size_t, 7> weekday_histogram(const std::vector<InteractionEvent>& events,
                                             std::optional<ChannelKind> channel = std::nullopt);

// Cumulative count of first responses at each distinct delta; CSV
// "delta_ms,cumulative" with a header row.
std::string first_response_cumulative_csv(const std::vector<InteractionEvent>& events,
                                          std::optional<ChannelKind> channel = std::nullopt);

// --- dialogue length ------------------------------------------------------------

struct LengthSummary {
  double median = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t n = 0;  // conversations counted
  bool operator==(const LengthSummary&) const = default;
};

struct DialogueLengthReport {
  LengthSummary system;
  LengthSummary scammer;
  std::map<ChannelKind, LengthSummary> system_per_channel;
  std::map<ChannelKind, LengthSummary> scammer_per_channel;
  bool operator==(const DialogueLengthReport&) const = default;
};

// Conversations with no turns are left out.
DialogueLengthReport dialogue_length_stats(const std::vector<Transcript>& conversations);

struct TurnsBeforePayment {
  std::size_t system_turns = 0;
  std::size_t scammer_turns = 0;  // includes the disclosing turn
  int disclosing_turn = -1;       // index into the transcript
  bool operator==(const TurnsBeforePayment&) const = default;
};

// First scammer turn from which a payment profile is extracted.
std::optional<TurnsBeforePayment> turns_before_payment(const Transcript& t);

// --- clustering -----------------------------------------------------------------

enum class EdgeKind { shared_name, shared_description, shared_follower, shared_channel };
std::string_view to_string(EdgeKind k);

struct ClusterReport {
  // Each component sorted by profile id; components sorted by first member.
  std::vector<std::vector<std::string>> components;
  std::set<EdgeKind> edge_kinds_used;
  std::map<std::string, std::size_t> channel_counts;  // profile id -> distinct channels
  std::size_t max_channels = 0;
  std::string max_channels_profile;
  bool operator==(const ClusterReport&) const = default;
};

// Lowercase, emoji and symbols dropped, whitespace collapsed.
std::string normalize_description(std::string_view s);

ClusterReport cluster_profiles(const std::vector<ScamProfile>& profiles);

// --- text scoring ---------------------------------------------------------------

class TextScorer {
 public:
  virtual ~TextScorer() = default;
  // Score in [0, 1]; may throw on failure.
  virtual double score(std::string_view text) = 0;
};

// Deterministic stand-in: a stable hash of the text mapped into [0, 1].
class HashTextScorer final : public TextScorer {
 public:
  double score(std::string_view text) override;
};

struct MlScore {
  std::string profile_id;
  double mean_score = 0;
  std::size_t n_texts = 0;
  std::size_t failures = 0;
  bool operator==(const MlScore&) const = default;
};

// Mean over the scammer's turns; texts the scorer fails on are skipped and counted.
MlScore ml_text_score(const Transcript& t, TextScorer& scorer);

struct MlBuckets {
  std::size_t at_least_050 = 0;
  std::size_t at_least_075 = 0;
  std::size_t at_least_090 = 0;
  std::size_t total = 0;
  bool operator==(const MlBuckets&) const = default;
};

// Cumulative thresholds; conversations with no scored text are not tallied.
MlBuckets tally_ml_scores(const std::vector<MlScore>& scores);

// --- qualitative prompts ----------------------------------------------------------

enum class ContractKind { boolean, digit, words, words_csv, word, list };

struct AnswerContract {
  ContractKind kind = ContractKind::boolean;
  int min_words = 0;
  int max_words = 0;
  bool operator==(const AnswerContract&) const = default;
};

AnswerContract parse_contract(std::string_view s);
std::string to_string(const AnswerContract& c);

struct Question {
  std::string profile;  // "scammer" or "system"
  std::string key;
  AnswerContract contract;
  std::string text;
};

struct Questionnaire {
  std::vector<Question> questions;
  // TSV: profile, key, contract, question. Throws std::invalid_argument.
  static Questionnaire parse(std::string_view tsv);
  static const Questionnaire& builtin();
};

struct QualPrompt {
  std::string text;
  std::vector<Question> schema;
};

QualPrompt build_qualitative_prompt(const Transcript& t, const Questionnaire& q);

// none = "none"/missing answer; unparseable = answer that breaks its contract.
struct Unparseable {
  std::string raw;
  bool operator==(const Unparseable&) const = default;
};
using AnswerValue =
    std::variant<std::monostate, bool, std::int64_t, std::string, std::vector<std::string>, Unparseable>;

// Provider answer format: one "key: value" per line, keys as in the schema.
// Keys for both profiles may be qualified "scammer.key" / "system.key".
std::map<std::string, AnswerValue> parse_answers(const QualPrompt& prompt, std::string_view response);

// Parses one value against its contract.
AnswerValue parse_answer_value(const AnswerContract& c, std::string_view raw);

// Rule-based answers from the transcript alone, in the provider answer format,
// so the pipeline runs without a model. Keys it cannot decide get "none".
std::string heuristic_answers(const Transcript& t, const Questionnaire& q);

}  // namespace scambait
