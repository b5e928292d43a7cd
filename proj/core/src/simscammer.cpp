#include "scambait/simscammer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "scambait/embedded.hpp"
#include "scambait/text.hpp"

namespace scambait {
namespace {

constexpr std::string_view kAskNames[] = {"account_address", "seed_phrase", "screenshot", "id_document",
                                          "phone_or_video"};
constexpr std::string_view kIssueNames[] = {"system_bug", "blocked_suspicion", "access_issue"};
constexpr std::string_view kStageNames[] = {"greet",       "verify",     "diagnose", "demand_fee",
                                            "give_method", "await_proof", "frustrated", "gone"};

const text::Sections& lines() {
  static const text::Sections s = text::parse_sections(embedded_data("scammer_lines.txt"));
  return s;
}

const std::vector<std::string>& section(std::string_view name) {
  auto it = lines().find(name);
  if (it == lines().end() || it->second.empty()) throw std::logic_error("scammer line pool missing: " + std::string(name));
  return it->second;
}

const text::Lexicon& failure_lexicon() {
  static const text::Lexicon lex(section("failure_claim"));
  return lex;
}
const text::Lexicon& language_request_lexicon() {
  static const text::Lexicon lex(section("language_request"));
  return lex;
}

std::string price_text(const Money& m) {
  if (m.currency == "USD") return "$" + m.amount.to_string();
  return m.amount.to_string() + " " + m.currency;
}

struct LineCtx {
  const SimScammerScript& script;
  Rng& rng;
};

std::string render(LineCtx c, std::string_view pool, const PaymentMethod* method = nullptr) {
  std::string s = c.rng.pick(std::span<const std::string>(section(pool)));
  s = text::replace_all(std::move(s), "{role}", c.script.role_title);
  s = text::replace_all(std::move(s), "{price}", price_text(c.script.price));
  if (method) {
    s = text::replace_all(std::move(s), "{id}", method->identifier);
    s = text::replace_all(std::move(s), "{brand}", method->identifier);
  }
  return s;
}

std::string redirect_line(LineCtx c) {
  const ContactChannel& ch = *c.script.redirect;
  if (ch.kind == ContactKind::telegram) return "Let's continue on Telegram, message me at t.me/" + ch.address;
  if (ch.kind == ContactKind::whatsapp_phone) return "Text me on WhatsApp " + ch.address + " so we can continue.";
  return "Let's continue here: " + ch.address;
}

Millis draw_delay(const SimScammerScript& s, const SimState& st) {
  Rng rng(derive_seed(s.seed, "delay", static_cast<std::uint64_t>(st.steps)));
  if (st.steps == 0 && s.auto_reply) return Millis{rng.between(50, 999)};
  const Millis median = st.steps == 0 ? s.first_reply_median : s.reply_median;
  return Millis{std::llround(rng.exponential_with_median(static_cast<double>(median.count())))};
}

std::string next_method_line(LineCtx c, SimState& st) {
  const PaymentMethod& m = c.script.payment_methods.at(static_cast<std::size_t>(st.methods_given));
  ++st.methods_given;
  st.stage = SimStage::await_proof;
  return render(c, "method." + std::string(to_string(m.kind)), &m);
}

}  // namespace

std::string_view to_string(VerificationAsk a) { return kAskNames[static_cast<int>(a)]; }
std::string_view to_string(IssueReason r) { return kIssueNames[static_cast<int>(r)]; }
std::string_view to_string(SimStage s) { return kStageNames[static_cast<int>(s)]; }

VerificationAsk parse_verification_ask(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kAskNames); ++i) {
    if (kAskNames[i] == s) return static_cast<VerificationAsk>(i);
  }
  throw std::invalid_argument("unknown verification ask: " + std::string(s));
}

IssueReason parse_issue_reason(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kIssueNames); ++i) {
    if (kIssueNames[i] == s) return static_cast<IssueReason>(i);
  }
  throw std::invalid_argument("unknown issue reason: " + std::string(s));
}

bool is_failure_claim(std::string_view text) { return failure_lexicon().matches(text); }

void check_script(const SimScammerScript& s) {
  if (s.payment_methods.empty() && !s.one_time_reply) {
    throw std::invalid_argument("script " + s.id + ": payment_methods empty without one_time_reply");
  }
  if (s.frustration_threshold < 1) throw std::invalid_argument("script " + s.id + ": frustration_threshold < 1");
  if (!s.price.amount.positive()) throw std::invalid_argument("script " + s.id + ": price must be positive");
  for (const auto& m : s.payment_methods) {
    if (m.identifier.empty()) throw std::invalid_argument("script " + s.id + ": empty payment identifier");
    if (!lines().contains("method." + std::string(to_string(m.kind)))) {
      throw std::invalid_argument("script " + s.id + ": unsupported payment kind " + std::string(to_string(m.kind)));
    }
  }
}

ScammerReply scammer_step(const SimScammerScript& script, const SimState& state, std::string_view inbound,
                          const Clock& clock) {
  if (state.stage == SimStage::gone) throw std::logic_error("scammer_step on a gone scammer");
  ScammerReply out;
  out.state = state;
  SimState& st = out.state;
  out.delay = draw_delay(script, state);
  Rng rng(derive_seed(script.seed, "line", static_cast<std::uint64_t>(state.steps)));
  LineCtx c{script, rng};
  ++st.steps;

  auto say = [&](std::string s) {
    out.text = std::move(s);
    out.at = clock.now() + out.delay;
    return out;
  };
  auto silence = [&] {
    st.stage = SimStage::gone;
    out.text.reset();
    out.delay = Millis{0};
    out.at = clock.now();
    return out;
  };

  if (st.stage == SimStage::frustrated) return silence();

  if (script.auto_reply && !st.auto_replied) {
    st.auto_replied = true;
    return say(render(c, "auto_reply"));
  }
  if (script.one_time_reply) {
    st.stage = SimStage::frustrated;  // next inbound is met with silence
    return say(render(c, "one_time"));
  }
  if (!st.language_answered && language_request_lexicon().matches(inbound)) {
    st.language_answered = true;
    return say(render(c, script.accepts_other_language ? "language_yes" : "language_no"));
  }

  if ((st.stage == SimStage::await_proof || st.stage == SimStage::give_method) && is_failure_claim(inbound)) {
    ++st.failure_claims;
    if (st.failure_claims >= script.frustration_threshold &&
        st.methods_given >= static_cast<int>(script.payment_methods.size())) {
      st.stage = SimStage::frustrated;
      return say(render(c, script.profane ? "frustrated_profane" : "frustrated"));
    }
    if (st.methods_given < static_cast<int>(script.payment_methods.size())) return say(next_method_line(c, st));
    if (st.failure_claims >= script.frustration_threshold) {
      st.stage = SimStage::frustrated;
      return say(render(c, script.profane ? "frustrated_profane" : "frustrated"));
    }
    return say(render(c, "no_more_methods"));
  }

  switch (st.stage) {
    case SimStage::greet:
      st.stage = script.verification_asks.empty() ? SimStage::diagnose : SimStage::verify;
      return say(render(c, "greet"));
    case SimStage::verify:
      if (script.redirect && !st.redirected) {
        st.redirected = true;
        return say(redirect_line(c));
      }
      {
        const auto ask = script.verification_asks.at(static_cast<std::size_t>(st.asks_made));
        if (++st.asks_made >= static_cast<int>(script.verification_asks.size())) st.stage = SimStage::diagnose;
        return say(render(c, "ask." + std::string(to_string(ask))));
      }
    case SimStage::diagnose:
      if (script.redirect && !st.redirected) {
        st.redirected = true;
        return say(redirect_line(c));
      }
      st.stage = SimStage::demand_fee;
      return say(render(c, "issue." + std::string(to_string(script.issue_reason))));
    case SimStage::demand_fee:
      st.stage = SimStage::give_method;
      return say(render(c, "fee"));
    case SimStage::give_method:
      return say(next_method_line(c, st));
    case SimStage::await_proof:
      return say(render(c, st.steps % 2 == 0 ? "push_proof" : "retry"));
    case SimStage::frustrated:
    case SimStage::gone:
      break;
  }
  return silence();
}

// --- population -------------------------------------------------------------

double sample_price(Rng& rng, const PopulationMix& mix) {
  const bool upper = rng.bernoulli(0.5);
  const double lo = std::log(upper ? mix.price_median : mix.price_min);
  const double hi = std::log(upper ? mix.price_max : mix.price_median);
  return std::exp(lo + (hi - lo) * rng.uniform01());
}

namespace {

std::string random_string(Rng& rng, std::string_view alphabet, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += alphabet[rng.below(alphabet.size())];
  return s;
}

constexpr std::string_view kLower = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kHex = "0123456789abcdef";

std::string mutate_one(Rng& rng, std::string s, std::size_t from) {
  static constexpr std::string_view kB58 = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
  const std::size_t i = from + rng.below(s.size() - from);
  char c = s[i];
  while (c == s[i]) c = kB58[rng.below(kB58.size())];
  s[i] = c;
  return s;
}

PaymentMethod make_method(Rng& rng, PaymentKind kind, const PopulationMix& mix) {
  PaymentMethod m{kind, {}};
  static constexpr std::string_view kMailDomains[] = {"gmail.com", "yahoo.com", "outlook.com", "proton.me"};
  static constexpr std::string_view kBrands[] = {"Amazon", "Apple", "Steam", "Google Play", "iTunes"};
  switch (kind) {
    case PaymentKind::paypal:
      m.identifier = random_string(rng, kLower, 5) + "_" + std::to_string(rng.between(10, 99)) + "@" +
                     std::string(kMailDomains[rng.below(std::size(kMailDomains))]);
      break;
    case PaymentKind::crypto_btc: {
      std::vector<std::uint8_t> payload(20);
      for (auto& b : payload) b = static_cast<std::uint8_t>(rng.below(256));
      if (rng.bernoulli(0.5)) {
        m.identifier = base58check_encode(rng.bernoulli(0.7) ? 0x00 : 0x05, payload);
        if (rng.bernoulli(mix.invalid_crypto)) m.identifier = mutate_one(rng, m.identifier, 1);
      } else {
        m.identifier = segwit_encode(0, payload);
        if (rng.bernoulli(mix.invalid_crypto)) {
          // Flip a data character to another bech32 character.
          static constexpr std::string_view kB32 = "qpzry9x8gf2tvdw0s3jn54khce6mua7l";
          const std::size_t i = 4 + rng.below(m.identifier.size() - 4);
          char c = m.identifier[i];
          while (c == m.identifier[i]) c = kB32[rng.below(kB32.size())];
          m.identifier[i] = c;
        }
      }
      break;
    }
    case PaymentKind::crypto_eth: {
      m.identifier = eip55_checksum(random_string(rng, kHex, 40));
      if (rng.bernoulli(mix.invalid_crypto)) {
        // Flip the case of one letter; with mixed case this breaks the checksum
        // unless it happens to hit the only letter.
        for (std::size_t i = 2; i < m.identifier.size(); ++i) {
          char& ch = m.identifier[i];
          if (std::isalpha(static_cast<unsigned char>(ch))) {
            ch = std::islower(static_cast<unsigned char>(ch)) ? static_cast<char>(std::toupper(ch))
                                                              : static_cast<char>(std::tolower(ch));
            break;
          }
        }
      }
      break;
    }
    case PaymentKind::cashapp:
      m.identifier = "$" + random_string(rng, kLower, 6) + std::to_string(rng.between(1, 99));
      break;
    case PaymentKind::venmo:
      m.identifier = "@" + random_string(rng, kLower, 6) + "-" + std::to_string(rng.between(10, 99));
      break;
    case PaymentKind::gift_card:
      m.identifier = std::string(kBrands[rng.below(std::size(kBrands))]);
      break;
    case PaymentKind::external_link:
      m.identifier = "https://" + random_string(rng, kLower, 7) + "-pay.com/checkout/" + random_string(rng, kHex, 8);
      break;
    case PaymentKind::crypto_other:
      throw std::invalid_argument("crypto_other is not minted");
  }
  return m;
}

}  // namespace

std::vector<SimScammerScript> make_population(int n, std::uint64_t seed, const PopulationMix& mix,
                                              const std::vector<ChannelKind>& channels) {
  if (n < 0) throw std::invalid_argument("population size must be >= 0");
  static const std::vector<ChannelKind> kDefaultChannels = {ChannelKind::email, ChannelKind::x,
                                                            ChannelKind::instagram};
  const auto& chans = channels.empty() ? kDefaultChannels : channels;
  // PayPal dominates, as the persona steers toward it.
  static constexpr std::pair<PaymentKind, int> kKindWeights[] = {
      {PaymentKind::paypal, 40},   {PaymentKind::crypto_btc, 20}, {PaymentKind::crypto_eth, 10},
      {PaymentKind::cashapp, 8},   {PaymentKind::venmo, 6},       {PaymentKind::gift_card, 8},
      {PaymentKind::external_link, 8},
  };
  const auto& roles = section("role");

  std::vector<SimScammerScript> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SimScammerScript s;
    s.seed = derive_seed(seed, "scammer", static_cast<std::uint64_t>(i));
    Rng rng(s.seed);
    char buf[32];
    std::snprintf(buf, sizeof buf, "sc-%05d", i);
    s.id = buf;
    s.handle = random_string(rng, kLower, 3) + "_" + random_string(rng, kLower, 4) + std::to_string(i);
    s.channel = chans[static_cast<std::size_t>(i) % chans.size()];
    s.role_title = rng.pick(std::span<const std::string>(roles));

    s.auto_reply = rng.bernoulli(mix.auto_reply);
    const double one_time = s.channel == ChannelKind::email     ? mix.one_time_email
                            : s.channel == ChannelKind::x       ? mix.one_time_x
                            : s.channel == ChannelKind::instagram ? mix.one_time_instagram
                                                                  : 0.0;
    s.one_time_reply = rng.bernoulli(one_time);

    std::vector<VerificationAsk> asks = {VerificationAsk::account_address, VerificationAsk::seed_phrase,
                                         VerificationAsk::screenshot, VerificationAsk::id_document,
                                         VerificationAsk::phone_or_video};
    const int n_asks = static_cast<int>(rng.between(0, 3));
    for (int k = 0; k < n_asks; ++k) {
      const std::size_t j = rng.below(asks.size());
      s.verification_asks.push_back(asks[j]);
      asks.erase(asks.begin() + static_cast<std::ptrdiff_t>(j));
    }
    s.issue_reason = static_cast<IssueReason>(rng.below(3));
    s.price = Money{Decimal::from_int(std::llround(sample_price(rng, mix))), "USD"};

    const int n_methods = static_cast<int>(rng.between(mix.min_methods, mix.max_methods));
    int total_weight = 0;
    for (const auto& kw : kKindWeights) total_weight += kw.second;
    for (int k = 0; k < n_methods; ++k) {
      int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(total_weight)));
      PaymentKind kind = PaymentKind::paypal;
      for (const auto& [kk, w] : kKindWeights) {
        if (r < w) {
          kind = kk;
          break;
        }
        r -= w;
      }
      PaymentMethod m = make_method(rng, kind, mix);
      const bool dup = std::any_of(s.payment_methods.begin(), s.payment_methods.end(),
                                   [&](const PaymentMethod& o) { return o.kind == m.kind && o.identifier == m.identifier; });
      if (!dup) s.payment_methods.push_back(std::move(m));
    }
    s.frustration_threshold = static_cast<int>(rng.between(1, 5));
    s.accepts_other_language = !rng.bernoulli(mix.decline_language);
    s.profane = rng.bernoulli(mix.profane);
    if (rng.bernoulli(mix.redirect)) {
      if (rng.bernoulli(0.5)) {
        s.redirect = ContactChannel{ContactKind::telegram, text::to_lower(s.handle)};
      } else {
        s.redirect = ContactChannel{ContactKind::whatsapp_phone, "+1555" + std::to_string(rng.between(2000000, 9999999))};
      }
    }
    s.first_reply_median = s.channel == ChannelKind::email       ? mix.first_reply_email
                           : s.channel == ChannelKind::x         ? mix.first_reply_x
                           : s.channel == ChannelKind::instagram ? mix.first_reply_instagram
                                                                 : Millis{60 * 1000};
    s.reply_median = mix.reply_median;
    out.push_back(std::move(s));
  }
  return out;
}

// --- serialization ----------------------------------------------------------

std::string script_to_json(const SimScammerScript& s) {
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["handle"] = s.handle;
  j["channel"] = std::string(to_string(s.channel));
  j["role_title"] = s.role_title;
  auto asks = nlohmann::ordered_json::array();
  for (auto a : s.verification_asks) asks.push_back(std::string(to_string(a)));
  j["verification_asks"] = asks;
  j["issue_reason"] = std::string(to_string(s.issue_reason));
  j["price"] = {{"amount", s.price.amount.to_string()}, {"currency", s.price.currency}};
  auto methods = nlohmann::ordered_json::array();
  for (const auto& m : s.payment_methods) {
    methods.push_back({{"kind", std::string(to_string(m.kind))}, {"identifier", m.identifier}});
  }
  j["payment_methods"] = methods;
  j["frustration_threshold"] = s.frustration_threshold;
  j["auto_reply"] = s.auto_reply;
  j["one_time_reply"] = s.one_time_reply;
  j["accepts_other_language"] = s.accepts_other_language;
  j["profane"] = s.profane;
  if (s.redirect) {
    j["redirect"] = {{"kind", std::string(to_string(s.redirect->kind))}, {"address", s.redirect->address}};
  }
  j["first_reply_median_ms"] = s.first_reply_median.count();
  j["reply_median_ms"] = s.reply_median.count();
  j["seed"] = s.seed;
  return j.dump();
}

SimScammerScript script_from_json(std::string_view json) {
  SimScammerScript s;
  try {
    const auto j = nlohmann::json::parse(json);
    s.id = j.at("id").get<std::string>();
    s.handle = j.value("handle", std::string{});
    s.channel = parse_channel_kind(j.value("channel", std::string("simulated")));
    s.role_title = j.value("role_title", std::string("support team"));
    for (const auto& a : j.value("verification_asks", nlohmann::json::array())) {
      s.verification_asks.push_back(parse_verification_ask(a.get<std::string>()));
    }
    s.issue_reason = parse_issue_reason(j.value("issue_reason", std::string("system_bug")));
    if (j.contains("price")) {
      s.price = Money{Decimal::parse(j["price"].at("amount").get<std::string>()),
                      j["price"].value("currency", std::string("USD"))};
    }
    for (const auto& m : j.value("payment_methods", nlohmann::json::array())) {
      s.payment_methods.push_back(
          {parse_payment_kind(m.at("kind").get<std::string>()), m.at("identifier").get<std::string>()});
    }
    s.frustration_threshold = j.value("frustration_threshold", 3);
    s.auto_reply = j.value("auto_reply", false);
    s.one_time_reply = j.value("one_time_reply", false);
    s.accepts_other_language = j.value("accepts_other_language", true);
    s.profane = j.value("profane", false);
    if (j.contains("redirect")) {
      s.redirect = ContactChannel{parse_contact_kind(j["redirect"].at("kind").get<std::string>()),
                                  j["redirect"].at("address").get<std::string>()};
    }
    s.first_reply_median = Millis{j.value("first_reply_median_ms", std::int64_t{600000})};
    s.reply_median = Millis{j.value("reply_median_ms", std::int64_t{300000})};
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad scammer script: ") + e.what());
  }
  check_script(s);
  return s;
}

}  // namespace scambait
