#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scambait::text {

std::string to_lower(std::string_view s);  // ASCII only; UTF-8 bytes pass through
std::string_view trim(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);
bool iequals(std::string_view a, std::string_view b);
std::string replace_all(std::string s, std::string_view from, std::string_view to);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Number of Unicode code points in a UTF-8 string (invalid bytes count as one).
std::size_t utf8_length(std::string_view s);

// Whitespace-delimited token with its byte span in the source text.
struct Token {
  std::string_view raw;   // as written
  std::string_view word;  // raw with surrounding sentence punctuation stripped
  std::size_t begin = 0;  // byte offset of raw
};

std::vector<Token> tokenize(std::string_view s);

// Strips leading/trailing sentence punctuation (quotes, brackets, .,;:!?) but
// keeps characters that are meaningful inside handles and addresses.
std::string_view strip_punct(std::string_view s);

// Lowercased token with every leading/trailing non-alphanumeric byte removed
// ("@Instagram," -> "instagram"). Used for keyword lookups.
std::string word_key(std::string_view word);

// True when a token within `window` positions of tokens[i] (excluding i) has
// a word_key in `keys`.
bool near_keyword(const std::vector<Token>& tokens, std::size_t i, std::span<const std::string_view> keys,
                  std::size_t window = 4);

// Lowercase, punctuation folded to single spaces, padded with one space on
// each side so phrase lookups can match on word boundaries.
std::string normalize_for_match(std::string_view s);

// True when the normalized phrase occurs in the normalized text on word
// boundaries. Both arguments are raw text.
bool contains_phrase(std::string_view text, std::string_view phrase);

// Case-insensitive word-boundary phrase list, loaded from "one entry per line,
// # comments" data.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::string>& phrases);
  static Lexicon parse(std::string_view data);

  bool matches(std::string_view text) const { return first_match(text).has_value(); }
  std::optional<std::string> first_match(std::string_view text) const;
  // Matches against text that was already passed through normalize_for_match.
  std::optional<std::string> first_match_normalized(std::string_view normalized) const;

  const std::vector<std::string>& phrases() const { return phrases_; }
  bool empty() const { return phrases_.empty(); }

 private:
  std::vector<std::string> phrases_;     // as given
  std::vector<std::string> normalized_;  // " phrase "
};

// Non-empty, non-comment lines, trimmed.
std::vector<std::string> data_lines(std::string_view data);

// "[section]" headers followed by entry lines. Entries before any header land
// in section "".
using Sections = std::map<std::string, std::vector<std::string>, std::less<>>;
Sections parse_sections(std::string_view data);

std::string read_file(const std::filesystem::path& path);

}  // namespace scambait::text
