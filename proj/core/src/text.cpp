#include "scambait/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scambait::text {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Typographic punctuation that should behave like ASCII punctuation.
constexpr std::string_view kUnicodePunct[] = {
    "\xE2\x80\x98", "\xE2\x80\x99", "\xE2\x80\x9C", "\xE2\x80\x9D",  // quotes
    "\xE2\x80\x93", "\xE2\x80\x94", "\xE2\x80\xA6",                  // dashes, ellipsis
    "\xC2\xA0",     "\xC2\xBF",     "\xC2\xA1",                      // nbsp, inverted ? !
};

std::size_t unicode_punct_len(std::string_view s, std::size_t i) {
  for (std::string_view p : kUnicodePunct) {
    if (s.substr(i, p.size()) == p) return p.size();
  }
  return 0;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return lower(x) == lower(y); });
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  if (from.empty()) return s;
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string_view strip_punct(std::string_view s) {
  auto strip_front = [&]() {
    while (!s.empty()) {
      if (std::string_view("\"'([{<,;:!?.").find(s.front()) != std::string_view::npos) {
        s.remove_prefix(1);
      } else if (std::size_t n = unicode_punct_len(s, 0); n > 0) {
        s.remove_prefix(n);
      } else {
        break;
      }
    }
  };
  auto strip_back = [&]() {
    while (!s.empty()) {
      if (std::string_view("\"')]}>,;:!?.").find(s.back()) != std::string_view::npos) {
        s.remove_suffix(1);
        continue;
      }
      bool removed = false;
      for (std::string_view p : kUnicodePunct) {
        if (s.size() >= p.size() && s.substr(s.size() - p.size()) == p) {
          s.remove_suffix(p.size());
          removed = true;
          break;
        }
      }
      if (!removed) break;
    }
  };
  strip_front();
  strip_back();
  return s;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    const std::string_view raw = s.substr(start, i - start);
    out.push_back(Token{raw, strip_punct(raw), start});
  }
  return out;
}

std::string word_key(std::string_view word) {
  while (!word.empty() && !is_ascii_alnum(word.front()) && static_cast<unsigned char>(word.front()) < 0x80) {
    word.remove_prefix(1);
  }
  while (!word.empty() && !is_ascii_alnum(word.back()) && static_cast<unsigned char>(word.back()) < 0x80) {
    word.remove_suffix(1);
  }
  return to_lower(word);
}

bool near_keyword(const std::vector<Token>& tokens, std::size_t i, std::span<const std::string_view> keys,
                  std::size_t window) {
  const std::size_t lo = i >= window ? i - window : 0;
  const std::size_t hi = std::min(tokens.size(), i + window + 1);
  for (std::size_t j = lo; j < hi; ++j) {
    if (j == i) continue;
    const std::string k = word_key(tokens[j].raw);
    for (std::string_view key : keys) {
      if (k == key) return true;
    }
  }
  return false;
}

std::string normalize_for_match(std::string_view s) {
  std::string out = " ";
  bool pending_space = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_ascii_alnum(c)) {
      if (pending_space && out.back() != ' ') out += ' ';
      pending_space = false;
      out += lower(c);
      ++i;
    } else if (static_cast<unsigned char>(c) >= 0x80) {
      if (std::size_t n = unicode_punct_len(s, i); n > 0) {
        pending_space = true;
        i += n;
      } else {
        if (pending_space && out.back() != ' ') out += ' ';
        pending_space = false;
        out += c;
        ++i;
      }
    } else {
      pending_space = true;
      ++i;
    }
  }
  if (out.back() != ' ') out += ' ';
  return out;
}

bool contains_phrase(std::string_view text, std::string_view phrase) {
  const std::string needle = normalize_for_match(phrase);
  if (needle.size() <= 2) return false;
  return normalize_for_match(text).find(needle) != std::string::npos;
}

Lexicon::Lexicon(const std::vector<std::string>& phrases) {
  for (const auto& p : phrases) {
    std::string n = normalize_for_match(p);
    if (n.size() <= 2) continue;
    phrases_.push_back(p);
    normalized_.push_back(std::move(n));
  }
}

Lexicon Lexicon::parse(std::string_view data) { return Lexicon(data_lines(data)); }

std::optional<std::string> Lexicon::first_match(std::string_view text) const {
  return first_match_normalized(normalize_for_match(text));
}

std::optional<std::string> Lexicon::first_match_normalized(std::string_view normalized) const {
  for (std::size_t i = 0; i < normalized_.size(); ++i) {
    if (normalized.find(normalized_[i]) != std::string_view::npos) return phrases_[i];
  }
  return std::nullopt;
}

std::vector<std::string> data_lines(std::string_view data) {
  std::vector<std::string> out;
  for (const std::string& line : split(data, '\n')) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

Sections parse_sections(std::string_view data) {
  Sections out;
  std::string current;
  for (const std::string& line : data_lines(data)) {
    if (line.size() >= 2 && line.front() == '[' && line.back() == ']') {
      current = line.substr(1, line.size() - 2);
      out[current];
      continue;
    }
    out[current].push_back(line);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace scambait::text
