#include "scambait/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <stdexcept>

#include "scambait/embedded.hpp"
#include "scambait/text.hpp"

namespace scambait {
namespace {

constexpr std::string_view kContactNames[] = {"email", "x_dm", "instagram_dm", "whatsapp_phone",
                                              "telegram", "url", "google_form"};
constexpr std::string_view kClassNames[] = {"unclassified", "excluded_verified", "excluded_official", "benign",
                                            "scam_candidate"};

constexpr std::string_view kInstagramKeys[] = {"instagram", "ig", "insta"};
constexpr std::string_view kTelegramKeys[] = {"telegram", "tg"};
constexpr std::string_view kXKeys[] = {"twitter", "x", "tweet"};
constexpr std::string_view kDmKeys[] = {"dm", "pm", "inbox"};
constexpr std::string_view kPhoneKeys[] = {"whatsapp", "call", "text", "phone", "wa", "sms", "number"};

// Words that can follow "to"/"at" without being a handle.
constexpr std::string_view kNotHandles[] = {
    "me",  "us",   "them", "him",  "her",   "you",     "it",    "my",      "our",  "the",     "a",      "an",
    "this", "that", "your", "their", "his", "support", "help",  "team",    "admin", "page",   "account", "profile",
    "dm",  "inbox", "get", "send",  "reach", "contact", "chat",  "message", "now",  "once",    "on",     "via",
    "through", "with", "and", "or", "for", "instagram", "ig", "telegram", "twitter", "whatsapp", "email", "mail",
};
constexpr std::string_view kHandleLeads[] = {"to", "at", "handle", "username", "user", "named", "called"};

bool in(std::string_view w, std::span<const std::string_view> set) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

bool is_email(std::string_view w) {
  static const std::regex re(R"([A-Za-z0-9._%+*\-]+@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)*\.[A-Za-z]{2,})");
  return std::regex_match(w.begin(), w.end(), re);
}

bool handle_shaped(std::string_view w) {
  static const std::regex re(R"([A-Za-z0-9_.*]{3,30})");
  return std::regex_match(w.begin(), w.end(), re);
}

bool has_handle_marker(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) { return (c >= '0' && c <= '9') || c == '_' || c == '*' || c == '.'; });
}

std::string scheme_qualified(std::string_view url) {
  if (text::starts_with_ci(url, "http://") || text::starts_with_ci(url, "https://")) return std::string(url);
  return "https://" + std::string(url);
}

std::string_view strip_scheme(std::string_view url) {
  for (std::string_view p : {"https://", "http://"}) {
    if (text::starts_with_ci(url, p)) return url.substr(p.size());
  }
  return url;
}

bool looks_like_link(std::string_view w) {
  if (text::starts_with_ci(w, "http://") || text::starts_with_ci(w, "https://") || text::starts_with_ci(w, "www.")) {
    return true;
  }
  for (std::string_view host : {"t.me/", "telegram.me/", "forms.gle/", "wa.me/", "docs.google.com/forms"}) {
    if (text::starts_with_ci(w, host)) return true;
  }
  return false;
}

struct Hit {
  std::size_t pos;
  ContactChannel channel;
};

std::string digits_of(std::string_view s) {
  std::string d;
  for (char c : s) {
    if (c >= '0' && c <= '9') d += c;
  }
  return d;
}

// Platform implied by keywords near token i; the most specific one wins so
// "dm ... on Instagram" is an Instagram DM.
std::optional<ContactKind> platform_near(const std::vector<text::Token>& toks, std::size_t i) {
  if (text::near_keyword(toks, i, kInstagramKeys)) return ContactKind::instagram_dm;
  if (text::near_keyword(toks, i, kTelegramKeys)) return ContactKind::telegram;
  if (text::near_keyword(toks, i, kXKeys) || text::near_keyword(toks, i, kDmKeys)) return ContactKind::x_dm;
  return std::nullopt;
}

void link_hit(std::string_view w, std::size_t pos, std::vector<Hit>& hits) {
  const std::string lower = text::to_lower(strip_scheme(w));
  if (lower.starts_with("t.me/") || lower.starts_with("telegram.me/")) {
    const std::string handle = lower.substr(lower.find('/') + 1);
    if (!handle.empty()) hits.push_back({pos, {ContactKind::telegram, normalize_handle(handle)}});
    return;
  }
  if (lower.starts_with("wa.me/")) {
    const std::string d = digits_of(lower);
    if (d.size() >= 8) hits.push_back({pos, {ContactKind::whatsapp_phone, "+" + d}});
    return;
  }
  const std::string host_path = lower.starts_with("www.") ? lower.substr(4) : lower;
  if (host_path.starts_with("forms.gle/") || host_path.starts_with("docs.google.com/forms")) {
    hits.push_back({pos, {ContactKind::google_form, scheme_qualified(w)}});
    return;
  }
  hits.push_back({pos, {ContactKind::url, scheme_qualified(w)}});
}

void phone_hits(std::string_view text, const std::vector<text::Token>& toks, std::vector<Hit>& hits) {
  static const std::regex re(R"(\+?\d[\d\s\-().]{6,}\d)");
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
    const auto begin = static_cast<std::size_t>(it->position(0));
    const auto end = begin + static_cast<std::size_t>(it->length(0));
    if (begin > 0 && std::isalnum(static_cast<unsigned char>(s[begin - 1]))) continue;
    if (end < s.size() && std::isalnum(static_cast<unsigned char>(s[end]))) continue;
    const std::string d = digits_of(it->str(0));
    if (d.size() < 8 || d.size() > 15) continue;
    std::size_t first = 0, last = 0;
    bool found = false;
    for (std::size_t t = 0; t < toks.size(); ++t) {
      const std::size_t tb = toks[t].begin, te = toks[t].begin + toks[t].raw.size();
      if (te > begin && tb < end) {
        if (!found) first = t;
        last = t;
        found = true;
      }
    }
    if (!found) continue;
    if (text::near_keyword(toks, first, kPhoneKeys) || text::near_keyword(toks, last, kPhoneKeys) ||
        in(text::word_key(toks[first].raw), kPhoneKeys)) {
      hits.push_back({begin, {ContactKind::whatsapp_phone, "+" + d}});
    }
  }
}

}  // namespace

std::string_view to_string(ContactKind k) { return kContactNames[static_cast<int>(k)]; }
std::string_view to_string(Classification c) { return kClassNames[static_cast<int>(c)]; }

ContactKind parse_contact_kind(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kContactNames); ++i) {
    if (kContactNames[i] == s) return static_cast<ContactKind>(i);
  }
  throw std::invalid_argument("unknown contact kind: " + std::string(s));
}

bool is_supported_contact(ContactKind k) {
  return k == ContactKind::email || k == ContactKind::x_dm || k == ContactKind::instagram_dm;
}

std::string normalize_handle(std::string_view handle) {
  handle = text::trim(handle);
  while (!handle.empty() && handle.front() == '@') handle.remove_prefix(1);
  return text::to_lower(handle);
}

Allowlists Allowlists::parse(std::string_view social, std::string_view wallets) {
  Allowlists a;
  for (const auto& line : text::data_lines(social)) a.official_social.insert(normalize_handle(line));
  for (const auto& line : text::data_lines(wallets)) a.official_wallets.insert(normalize_handle(line));
  return a;
}

const Allowlists& Allowlists::builtin() {
  static const Allowlists lists =
      parse(embedded_data("official_social.txt"), embedded_data("official_wallets.txt"));
  return lists;
}

bool Allowlists::contains(std::string_view handle) const {
  const std::string h = normalize_handle(handle);
  return official_social.contains(h) || official_wallets.contains(h);
}

std::vector<ContactChannel> extract_channels(std::string_view text, std::string_view self_handle) {
  const auto toks = text::tokenize(text);
  std::vector<Hit> hits;

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string_view w = toks[i].word;
    if (w.empty()) continue;
    const std::size_t pos = toks[i].begin;
    const std::string key = text::word_key(w);

    if (is_email(w)) {
      hits.push_back({pos, {ContactKind::email, text::to_lower(w)}});
      continue;
    }
    if (looks_like_link(w)) {
      link_hit(w, pos, hits);
      continue;
    }
    if (w.size() > 1 && w.front() == '@') {
      const std::string name = normalize_handle(w);
      if (!handle_shaped(name)) continue;
      hits.push_back({pos, {platform_near(toks, i).value_or(ContactKind::x_dm), name}});
      continue;
    }
    // "dm me" points at the author's own account.
    if (!self_handle.empty() && (key == "me" || key == "us") && i > 0 && in(text::word_key(toks[i - 1].raw), kDmKeys)) {
      const auto platform = platform_near(toks, i).value_or(ContactKind::x_dm);
      if (platform == ContactKind::x_dm) hits.push_back({pos, {ContactKind::x_dm, normalize_handle(self_handle)}});
      continue;
    }
    // Bare handle next to a platform keyword.
    if (!handle_shaped(w) || in(key, kNotHandles) || in(key, kHandleLeads)) continue;
    const auto platform = platform_near(toks, i);
    if (!platform) continue;
    const bool led = i > 0 && in(text::word_key(toks[i - 1].raw), kHandleLeads);
    if (!has_handle_marker(w) && !led) continue;
    if (std::all_of(w.begin(), w.end(), [](char c) { return (c >= '0' && c <= '9') || c == '.'; })) continue;
    hits.push_back({pos, {*platform, normalize_handle(w)}});
  }
  phone_hits(text, toks, hits);

  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; });
  std::vector<ContactChannel> out;
  for (auto& h : hits) {
    if (std::find(out.begin(), out.end(), h.channel) == out.end()) out.push_back(std::move(h.channel));
  }
  return out;
}

bool detect_impersonation(std::string_view text) {
  static const text::Lexicon lexicon = text::Lexicon::parse(embedded_data("support_lexicon.txt"));
  return lexicon.matches(text);
}

Classification classify_profile(const ScamProfile& profile, const std::vector<InteractionEvent>& events,
                                const Allowlists& allow) {
  if (profile.verified) return Classification::excluded_verified;
  if (allow.contains(profile.handle)) return Classification::excluded_official;
  for (const auto& e : events) {
    if (!e.text) continue;
    if (detect_impersonation(*e.text) || !extract_channels(*e.text, profile.handle).empty()) {
      return Classification::scam_candidate;
    }
  }
  return Classification::benign;
}

void ingest_profile(ScamProfile& profile, const std::vector<InteractionEvent>& events, const Allowlists& allow) {
  profile.classification = classify_profile(profile, events, allow);
  profile.channels.clear();
  if (profile.classification != Classification::scam_candidate) return;
  for (const auto& e : events) {
    if (!e.text) continue;
    for (auto& c : extract_channels(*e.text, profile.handle)) {
      if (std::find(profile.channels.begin(), profile.channels.end(), c) == profile.channels.end()) {
        profile.channels.push_back(std::move(c));
      }
    }
  }
}

}  // namespace scambait
