#include "scambait/payextract.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <regex>
#include <stdexcept>

#include "scambait/text.hpp"

namespace scambait {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

constexpr std::string_view kNumber = R"((\d+(?:,\d{3}(?!\d))*(?:\.\d+)?))";

struct PricePattern {
  std::regex re;
  int number_group;
  int unit_group;  // 0 when the currency is fixed
  std::string fixed_currency;
};

std::string currency_for_unit(std::string unit) {
  unit = text::to_lower(unit);
  if (unit == "$" || unit == "usd" || unit == "bucks" || unit.starts_with("dollar") || unit.starts_with("us dollar") ||
      unit.starts_with("d")) {  // dólares / dolares
    return "USD";
  }
  if (unit == "\xE2\x82\xAC" || unit == "eur" || unit.starts_with("euro")) return "EUR";
  if (unit == "\xC2\xA3" || unit == "gbp" || unit.starts_with("pound")) return "GBP";
  if (unit == "btc" || unit.starts_with("bitcoin")) return "BTC";
  if (unit == "eth" || unit == "ether") return "ETH";
  if (unit == "usdt") return "USDT";
  return "UNK";
}

const std::vector<PricePattern>& price_patterns() {
  static const std::vector<PricePattern> patterns = [] {
    const auto icase = std::regex::ECMAScript | std::regex::icase;
    const std::string num(kNumber);
    std::vector<PricePattern> p;
    p.push_back({std::regex(R"((?:us)?\$\s?)" + num, icase), 1, 0, "USD"});
    p.push_back({std::regex("\xE2\x82\xAC\\s?" + num, icase), 1, 0, "EUR"});
    p.push_back({std::regex("\xC2\xA3\\s?" + num, icase), 1, 0, "GBP"});
    p.push_back({std::regex(num +
                                R"(\s?(\$|usd|us dollars?|dollars?|d(?:o|\xC3\xB3|\xC3\x93)lares|bucks|)"
                                "\xE2\x82\xAC"
                                R"(|eur|euros?|)"
                                "\xC2\xA3"
                                R"(|gbp|pounds?|btc|bitcoins?|eth|ether|usdt|coins?|tokens?|credits?)(?![A-Za-z0-9]))",
                            icase),
                 1, 2, ""});
    return p;
  }();
  return patterns;
}

struct PriceHit {
  std::size_t begin;
  std::size_t end;
  Money money;
};

std::vector<PriceHit> find_prices(std::string_view text) {
  std::vector<PriceHit> hits;
  const std::string s(text);
  for (const auto& pat : price_patterns()) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), pat.re); it != std::sregex_iterator(); ++it) {
      const auto& m = *it;
      const auto begin = static_cast<std::size_t>(m.position(0));
      if (begin > 0 && (is_alnum(s[begin - 1]) || s[begin - 1] == '.')) continue;
      const auto num_end = static_cast<std::size_t>(m.position(pat.number_group) + m.length(pat.number_group));
      if (num_end < s.size() && pat.unit_group == 0 && (is_alnum(s[num_end]) && !is_digit(s[num_end]))) {
        // "$100k" or "$5m" style shorthand is not a plain amount; skip it.
        continue;
      }
      Decimal amount = Decimal::parse(m.str(pat.number_group));
      if (!amount.positive()) continue;
      const std::string currency = pat.unit_group == 0 ? pat.fixed_currency : currency_for_unit(m.str(pat.unit_group));
      hits.push_back({begin, begin + static_cast<std::size_t>(m.length(0)), Money{amount, currency}});
    }
  }
  std::stable_sort(hits.begin(), hits.end(), [](const PriceHit& a, const PriceHit& b) { return a.begin < b.begin; });
  std::vector<PriceHit> out;
  for (auto& h : hits) {
    if (!out.empty() && h.begin < out.back().end) continue;  // "$100 USD" matched twice
    out.push_back(std::move(h));
  }
  return out;
}

// --- payment rails ---------------------------------------------------------

constexpr std::string_view kCashappKeys[] = {"cashapp", "cash"};
constexpr std::string_view kVenmoKeys[] = {"venmo"};
constexpr std::string_view kCryptoKeys[] = {"usdt", "trc20", "erc20", "bep20", "wallet", "address", "crypto",
                                            "ltc",  "litecoin", "sol", "solana", "doge", "xrp", "bnb", "tron", "trx"};
constexpr std::string_view kPayWords[] = {"pay", "payment", "fee", "checkout", "invoice", "deposit", "paid", "pago",
                                          "zahlung", "paiement", "betaling"};
constexpr std::string_view kGiftBrands[] = {"amazon", "apple", "itunes", "google", "steam", "walmart", "target",
                                            "ebay",   "visa",  "razer",  "sephora", "xbox", "playstation"};

bool is_email(std::string_view w) {
  static const std::regex re(R"([A-Za-z0-9._%+*\-]+@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)*\.[A-Za-z]{2,})");
  return std::regex_match(w.begin(), w.end(), re);
}

bool is_url(std::string_view w) {
  return text::starts_with_ci(w, "http://") || text::starts_with_ci(w, "https://") || text::starts_with_ci(w, "www.");
}

bool is_cashtag(std::string_view w) {
  static const std::regex re(R"(\$[A-Za-z][A-Za-z0-9_]{0,19})");
  return std::regex_match(w.begin(), w.end(), re);
}

bool is_handle(std::string_view w) {
  static const std::regex re(R"(@[A-Za-z0-9_\-]{2,30})");
  return std::regex_match(w.begin(), w.end(), re);
}

bool is_opaque_crypto_token(std::string_view w) {
  if (w.size() < 25 || w.size() > 64) return false;
  bool digit = false, alpha = false;
  for (char c : w) {
    if (!is_alnum(c)) return false;
    digit = digit || is_digit(c);
    alpha = alpha || !is_digit(c);
  }
  return digit && alpha;
}

// Rail named by a single keyword, for the conversation context.
std::optional<PaymentKind> rail_keyword(std::string_view key) {
  if (key == "paypal") return PaymentKind::paypal;
  if (key == "bitcoin" || key == "btc") return PaymentKind::crypto_btc;
  if (key == "eth" || key == "ethereum" || key == "ether") return PaymentKind::crypto_eth;
  if (key == "usdt" || key == "crypto" || key == "cryptocurrency" || key == "criptomonedas") {
    return PaymentKind::crypto_other;
  }
  if (key == "cashapp") return PaymentKind::cashapp;
  if (key == "venmo") return PaymentKind::venmo;
  return std::nullopt;
}

}  // namespace

Decimal::Decimal(std::int64_t mantissa, int scale) : mantissa_(mantissa), scale_(scale) {
  if (scale_ < 0) throw std::invalid_argument("negative decimal scale");
  while (scale_ > 0 && mantissa_ % 10 == 0) {
    mantissa_ /= 10;
    --scale_;
  }
}

Decimal Decimal::parse(std::string_view s) {
  std::int64_t m = 0;
  int scale = 0;
  bool point = false, any = false;
  for (char c : s) {
    if (c == ',') continue;
    if (c == '.') {
      if (point) throw std::invalid_argument("bad decimal: " + std::string(s));
      point = true;
      continue;
    }
    if (!is_digit(c)) throw std::invalid_argument("bad decimal: " + std::string(s));
    if (m > (INT64_MAX - 9) / 10) throw std::invalid_argument("decimal overflow: " + std::string(s));
    m = m * 10 + (c - '0');
    any = true;
    if (point) ++scale;
  }
  if (!any) throw std::invalid_argument("bad decimal: " + std::string(s));
  return Decimal(m, scale);
}

double Decimal::to_double() const { return static_cast<double>(mantissa_) / std::pow(10.0, scale_); }

std::string Decimal::to_string() const {
  std::string digits = std::to_string(mantissa_ < 0 ? -mantissa_ : mantissa_);
  if (scale_ > 0) {
    if (digits.size() <= static_cast<std::size_t>(scale_)) {
      digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
  }
  return mantissa_ < 0 ? "-" + digits : digits;
}

std::vector<Money> extract_price(std::string_view text) {
  std::vector<Money> out;
  for (const auto& hit : find_prices(text)) {
    if (std::find(out.begin(), out.end(), hit.money) == out.end()) out.push_back(hit.money);
  }
  return out;
}

bool mentions_friends_and_family(std::string_view text) {
  const std::string lower = text::to_lower(text);
  return text::contains_phrase(text, "family and friends") || text::contains_phrase(text, "friends and family") ||
         lower.find("f&f") != std::string::npos || lower.find("f & f") != std::string::npos;
}

std::vector<PaymentProfile> extract_payment_profiles(std::string_view text, int turn_index, PaymentContext* ctx) {
  const auto tokens = text::tokenize(text);
  const auto prices = extract_price(text);
  const bool ff = mentions_friends_and_family(text);

  bool paypal_named = false;
  std::optional<PaymentKind> rail_in_turn;
  for (const auto& t : tokens) {
    const std::string key = text::word_key(t.raw);
    if (key == "paypal" || text::starts_with_ci(t.word, "paypal.me/")) paypal_named = true;
    // A specific rail named in the turn outranks a generic "crypto" mention.
    if (auto r = rail_keyword(key); r && (!rail_in_turn || rail_in_turn == PaymentKind::crypto_other)) {
      rail_in_turn = r;
    }
  }
  const bool paypal_context = paypal_named || ff || (ctx && ctx->last_rail == PaymentKind::paypal);

  std::optional<Money> amount;
  if (!prices.empty()) {
    amount = prices.front();
  } else if (ctx) {
    amount = ctx->last_price;
  }

  std::vector<PaymentProfile> out;
  auto add = [&](PaymentKind kind, std::string id, Validity validity) {
    PaymentProfile p;
    p.kind = kind;
    p.identifier = std::move(id);
    p.validity = validity;
    p.amount = amount;
    p.ff_flag = kind == PaymentKind::paypal && ff;
    p.source_turn = turn_index;
    for (const auto& q : out) {
      if (q.same_rail(p)) return;
    }
    out.push_back(std::move(p));
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string_view w = tokens[i].word;
    if (w.empty()) continue;

    if (looks_like_crypto_address(w)) {
      const auto v = validate_crypto_address(w);
      add(v.kind, std::string(w), v.validity);
      continue;
    }
    if (is_email(w)) {
      if (paypal_context) add(PaymentKind::paypal, text::to_lower(w), Validity::unknown);
      continue;
    }
    if (text::starts_with_ci(w, "paypal.me/") || text::starts_with_ci(w, "https://paypal.me/") ||
        text::starts_with_ci(w, "https://www.paypal.me/")) {
      add(PaymentKind::paypal, text::to_lower(w), Validity::unknown);
      continue;
    }
    if (is_url(w)) {
      if (text::near_keyword(tokens, i, kPayWords)) add(PaymentKind::external_link, std::string(w), Validity::unknown);
      continue;
    }
    if (is_cashtag(w) && text::near_keyword(tokens, i, kCashappKeys)) {
      add(PaymentKind::cashapp, text::to_lower(w), Validity::unknown);
      continue;
    }
    if (is_handle(w) && text::near_keyword(tokens, i, kVenmoKeys)) {
      add(PaymentKind::venmo, text::to_lower(w), Validity::unknown);
      continue;
    }
    const std::string key = text::word_key(w);
    if (key == "gift" || key == "giftcard" || key == "giftcards") {
      // Nearest brand keyword before the word "gift" wins, then after.
      std::optional<std::string> brand;
      for (std::size_t back = 1; back <= 4 && back <= i && !brand; ++back) {
        const std::string b = text::word_key(tokens[i - back].raw);
        for (auto candidate : kGiftBrands) {
          if (b == candidate) brand = b;
        }
      }
      for (std::size_t fwd = 1; fwd <= 4 && i + fwd < tokens.size() && !brand; ++fwd) {
        const std::string b = text::word_key(tokens[i + fwd].raw);
        for (auto candidate : kGiftBrands) {
          if (b == candidate) brand = b;
        }
      }
      const bool card = key != "gift" || (i + 1 < tokens.size() && text::word_key(tokens[i + 1].raw).starts_with("card"));
      if (brand && card) add(PaymentKind::gift_card, *brand, Validity::unknown);
      continue;
    }
    if (is_opaque_crypto_token(w) && text::near_keyword(tokens, i, kCryptoKeys)) {
      add(PaymentKind::crypto_other, std::string(w), Validity::unknown);
    }
  }

  if (ctx) {
    if (!prices.empty()) ctx->last_price = prices.back();
    if (rail_in_turn) ctx->last_rail = rail_in_turn;
  }
  return out;
}

}  // namespace scambait
