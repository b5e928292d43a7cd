#include "scambait/honeypost.hpp"

#include <cstdio>

#include "scambait/embedded.hpp"
#include "scambait/rng.hpp"
#include "scambait/text.hpp"

namespace scambait {
namespace {

constexpr std::string_view kWallets[] = {"Badger", "Binance", "BitPay",  "Coinbase", "Exodus",
                                         "Free",   "Ledger",  "MetaMask", "Trezor",   "Trust Wallet"};
constexpr std::string_view kSocial[] = {"Gmail", "Instagram", "Youtube", "X", "Facebook"};

bool hashtag_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// "(#\w+)+#?" -- allows the "#GmailSupport#" style seen on real posts.
bool well_formed_hashtag(std::string_view tok) {
  std::size_t i = 0;
  bool any = false;
  while (i < tok.size()) {
    if (tok[i] != '#') return false;
    ++i;
    const std::size_t start = i;
    while (i < tok.size() && hashtag_char(tok[i])) ++i;
    if (i == start) return any && i == tok.size();  // trailing lone '#'
    any = true;
  }
  return any;
}

}  // namespace

std::string_view to_string(RecoveryKind k) {
  return k == RecoveryKind::crypto_wallet ? "crypto_wallet" : "social_media";
}

RecoveryKind parse_recovery_kind(std::string_view s) {
  if (s == "crypto_wallet") return RecoveryKind::crypto_wallet;
  if (s == "social_media") return RecoveryKind::social_media;
  throw InvalidContext("unknown recovery kind: " + std::string(s));
}

std::span<const std::string_view> recovery_targets(RecoveryKind kind) {
  if (kind == RecoveryKind::crypto_wallet) return kWallets;
  return kSocial;
}

std::vector<RecoveryContext> all_recovery_contexts() {
  std::vector<RecoveryContext> out;
  for (auto kind : {RecoveryKind::crypto_wallet, RecoveryKind::social_media}) {
    for (auto t : recovery_targets(kind)) out.push_back({kind, std::string(t)});
  }
  return out;
}

void check_context(const RecoveryContext& ctx) {
  for (auto t : recovery_targets(ctx.kind)) {
    if (t == ctx.target) return;
  }
  throw InvalidContext("unknown " + std::string(to_string(ctx.kind)) + " target: " + ctx.target);
}

std::string display_name(const RecoveryContext& ctx) {
  if (ctx.kind == RecoveryKind::crypto_wallet && ctx.target.find("Wallet") == std::string::npos) {
    return ctx.target + " Wallet";
  }
  return ctx.target;
}

PhrasePools PhrasePools::parse(std::string_view data) {
  auto sections = text::parse_sections(data);
  PhrasePools p;
  p.intros = sections["intro"];
  p.crypto_problems = sections["problem.crypto_wallet"];
  p.social_problems = sections["problem.social_media"];
  p.help = sections["help"];
  p.hashtag_keywords = sections["hashtag_keyword"];
  if (p.intros.empty() || p.crypto_problems.empty() || p.social_problems.empty() || p.help.empty()) {
    throw std::invalid_argument("honeypost phrase data is missing a pool");
  }
  return p;
}

const PhrasePools& default_phrase_pools() {
  static const PhrasePools pools = PhrasePools::parse(embedded_data("honeypost_phrases.txt"));
  return pools;
}

std::string fill_target(std::string_view tmpl, std::string_view target) {
  return text::replace_all(std::string(tmpl), "{target}", target);
}

std::string make_hashtag(const RecoveryContext& ctx, std::string_view keyword) {
  std::string tag = "#";
  for (const auto& word : text::split(display_name(ctx), ' ')) {
    if (word.empty()) continue;
    std::string w = word;
    if (w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    tag += w;
  }
  std::string kw(keyword);
  if (!kw.empty() && kw[0] >= 'a' && kw[0] <= 'z') kw[0] = static_cast<char>(kw[0] - 'a' + 'A');
  return tag + kw;
}

std::string render_post(const std::array<std::string, 3>& sentences, const std::vector<std::string>& hashtags) {
  std::string out = sentences[0] + " " + sentences[1] + " " + sentences[2];
  for (const auto& h : hashtags) out += " " + h;
  return out;
}

HoneyPost generate_post(const RecoveryContext& context, std::uint64_t seed) {
  check_context(context);
  const PhrasePools& pools = default_phrase_pools();
  const std::string name = display_name(context);
  Rng rng(derive_seed(seed, std::string(to_string(context.kind)) + "/" + context.target));

  HoneyPost post;
  post.context = context;
  post.sentences[0] = rng.pick(std::span<const std::string>(pools.intros));
  post.sentences[1] = fill_target(rng.pick(std::span<const std::string>(pools.problems(context.kind))), name);
  post.sentences[2] = fill_target(rng.pick(std::span<const std::string>(pools.help)), name);
  if (!pools.hashtag_keywords.empty() && rng.bernoulli(0.5)) {
    const auto count = static_cast<std::size_t>(rng.between(1, 2));
    for (std::size_t i = 0; i < count; ++i) {
      std::string tag = make_hashtag(context, rng.pick(std::span<const std::string>(pools.hashtag_keywords)));
      bool dup = false;
      for (const auto& h : post.hashtags) dup = dup || h == tag;
      if (!dup) post.hashtags.push_back(std::move(tag));
    }
  }
  post.text = render_post(post.sentences, post.hashtags);

  char id[24];
  std::snprintf(id, sizeof id, "hp-%016llx",
                static_cast<unsigned long long>(fnv1a64(post.text, derive_seed(seed, "post-id"))));
  post.id = id;
  return post;
}

std::vector<std::string> validate_post(std::string_view post_text) {
  std::vector<std::string> out;
  if (text::trim(post_text).empty()) {
    out.emplace_back("empty_text");
    return out;
  }
  if (text::utf8_length(post_text) > kMaxPostLength) out.emplace_back("length_exceeded");
  bool bad_tag = false;
  for (const auto& tok : text::tokenize(post_text)) {
    const std::string_view w = tok.raw;
    if (w.find('#') == std::string_view::npos) continue;
    // Allow trailing sentence punctuation after a tag ("#Help!"), nothing else.
    std::string_view core = w;
    while (!core.empty() && std::string_view(".,;:!?)").find(core.back()) != std::string_view::npos) {
      core.remove_suffix(1);
    }
    if (!well_formed_hashtag(core)) bad_tag = true;
  }
  if (bad_tag) out.emplace_back("malformed_hashtag");
  return out;
}

PostSchedule schedule_posts(std::vector<HoneyPost> posts, Timestamp start, Millis interval) {
  if (interval <= Millis{0}) throw std::invalid_argument("schedule interval must be positive");
  PostSchedule s;
  s.interval = interval;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    posts[i].scheduled_at = start + interval * static_cast<std::int64_t>(i);
  }
  s.posts = std::move(posts);
  return s;
}

}  // namespace scambait
