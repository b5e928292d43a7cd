#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scambait/analytics.hpp"
#include "scambait/embedded.hpp"
#include "scambait/payextract.hpp"
#include "scambait/text.hpp"

namespace scambait {

AnswerContract parse_contract(std::string_view s) {
  auto range = [&](std::string_view rest, AnswerContract c) {
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos) throw std::invalid_argument("bad contract range: " + std::string(s));
    try {
      c.min_words = std::stoi(std::string(rest.substr(0, dash)));
      c.max_words = std::stoi(std::string(rest.substr(dash + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad contract range: " + std::string(s));
    }
    if (c.min_words < 1 || c.max_words < c.min_words) throw std::invalid_argument("bad contract range: " + std::string(s));
    return c;
  };
  if (s == "bool") return {ContractKind::boolean, 0, 0};
  if (s == "digit") return {ContractKind::digit, 0, 0};
  if (s == "word") return {ContractKind::word, 1, 1};
  if (s == "list") return {ContractKind::list, 0, 0};
  if (s.starts_with("words_csv:")) return range(s.substr(10), {ContractKind::words_csv, 0, 0});
  if (s.starts_with("words:")) return range(s.substr(6), {ContractKind::words, 0, 0});
  throw std::invalid_argument("unknown answer contract: " + std::string(s));
}

std::string to_string(const AnswerContract& c) {
  switch (c.kind) {
    case ContractKind::boolean:
      return "bool";
    case ContractKind::digit:
      return "digit";
    case ContractKind::word:
      return "word";
    case ContractKind::list:
      return "list";
    case ContractKind::words:
      return "words:" + std::to_string(c.min_words) + "-" + std::to_string(c.max_words);
    case ContractKind::words_csv:
      break;
  }
  return "words_csv:" + std::to_string(c.min_words) + "-" + std::to_string(c.max_words);
}

Questionnaire Questionnaire::parse(std::string_view tsv) {
  Questionnaire q;
  for (const auto& line : text::data_lines(tsv)) {
    const auto cols = text::split(line, '\t');
    if (cols.size() != 4) throw std::invalid_argument("questionnaire row needs 4 columns: " + line);
    if (cols[0] != "scammer" && cols[0] != "system") throw std::invalid_argument("unknown profile: " + cols[0]);
    q.questions.push_back({cols[0], cols[1], parse_contract(cols[2]), cols[3]});
  }
  return q;
}

const Questionnaire& Questionnaire::builtin() {
  static const Questionnaire q = parse(embedded_data("questionnaire.tsv"));
  return q;
}

namespace {

std::string qualified(const Question& q) { return q.profile + "." + q.key; }

std::vector<std::string> words_of(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& tok : text::tokenize(s)) {
    if (!tok.word.empty()) out.emplace_back(tok.word);
  }
  return out;
}

bool is_none(std::string_view v) {
  const std::string l = text::to_lower(text::trim(v));
  return l.empty() || l == "none" || l == "n/a" || l == "null" || l == "not found";
}

}  // namespace

QualPrompt build_qualitative_prompt(const Transcript& t, const Questionnaire& q) {
  QualPrompt p;
  p.schema = q.questions;
  std::string s = "Read the conversation below between a scammer and the system, then answer each question.\n";
  s += "Answer with one line per question in the form `profile.key: value`, following the stated output format. ";
  s += "Use `none` when the conversation does not contain the answer.\n\n";
  s += "Conversation (" + std::string(to_string(t.channel)) + "):\n";
  for (const auto& turn : t.turns) {
    s += turn.author == Author::system ? "System: " : "Scammer: ";
    s += turn.text;
    s += "\n";
  }
  s += "\nQuestions:\n";
  for (const auto& question : q.questions) {
    s += qualified(question) + " [" + to_string(question.contract) + "]: " + question.text + "\n";
  }
  p.text = std::move(s);
  return p;
}

AnswerValue parse_answer_value(const AnswerContract& c, std::string_view raw_in) {
  std::string_view raw = text::trim(raw_in);
  // Tolerate a trailing period and surrounding quotes.
  while (!raw.empty() && (raw.back() == '.' || raw.back() == '"' || raw.back() == '\'')) raw.remove_suffix(1);
  while (!raw.empty() && (raw.front() == '"' || raw.front() == '\'')) raw.remove_prefix(1);
  if (is_none(raw)) return std::monostate{};
  const std::string lower = text::to_lower(raw);
  switch (c.kind) {
    case ContractKind::boolean:
      if (lower == "true" || lower == "yes") return true;
      if (lower == "false" || lower == "no") return false;
      return Unparseable{std::string(raw)};
    case ContractKind::digit: {
      std::string digits(raw);
      if (!digits.empty() && digits.front() == '$') digits.erase(0, 1);
      try {
        const Decimal d = Decimal::parse(digits);
        if (d.scale() != 0 || d.mantissa() < 0) return Unparseable{std::string(raw)};
        return d.mantissa();
      } catch (const std::invalid_argument&) {
        return Unparseable{std::string(raw)};
      }
    }
    case ContractKind::word: {
      const auto w = words_of(raw);
      if (w.size() != 1) return Unparseable{std::string(raw)};
      return w.front();
    }
    case ContractKind::list: {
      std::vector<std::string> items;
      std::string_view body = raw;
      if (body.starts_with("[") && body.ends_with("]")) body = body.substr(1, body.size() - 2);
      for (const auto& part : text::split(body, ',')) {
        std::string item(text::trim(part));
        while (!item.empty() && (item.front() == '"' || item.front() == '\'')) item.erase(0, 1);
        while (!item.empty() && (item.back() == '"' || item.back() == '\'')) item.pop_back();
        if (!item.empty()) items.push_back(std::move(item));
      }
      if (items.empty()) return std::monostate{};
      return items;
    }
    case ContractKind::words:
    case ContractKind::words_csv: {
      const auto n = static_cast<int>(words_of(raw).size());
      if (n < c.min_words || n > c.max_words) return Unparseable{std::string(raw)};
      return std::string(raw);
    }
  }
  return Unparseable{std::string(raw)};
}

std::map<std::string, AnswerValue> parse_answers(const QualPrompt& prompt, std::string_view response) {
  std::map<std::string, AnswerValue> out;
  std::map<std::string, std::vector<const Question*>> by_key;
  for (const auto& q : prompt.schema) {
    out[qualified(q)] = std::monostate{};
    by_key[qualified(q)].push_back(&q);
    by_key[q.key].push_back(&q);
  }
  for (const auto& line : text::split(response, '\n')) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key(text::trim(std::string_view(line).substr(0, colon)));
    while (!key.empty() && (key.front() == '-' || key.front() == '*' || key.front() == '`' || key.front() == ' ')) {
      key.erase(0, 1);
    }
    while (!key.empty() && (key.back() == '`' || key.back() == '*')) key.pop_back();
    auto it = by_key.find(key);
    // An unqualified key shared by both profiles is ambiguous and ignored.
    if (it == by_key.end() || it->second.size() != 1) continue;
    const Question& q = *it->second.front();
    out[qualified(q)] = parse_answer_value(q.contract, std::string_view(line).substr(colon + 1));
  }
  return out;
}

// --- rule-based answers -----------------------------------------------------------

namespace {

struct Sides {
  std::vector<std::string> scammer;
  std::vector<std::string> system;
  std::string scammer_all;
  std::string system_all;
};

Sides split_sides(const Transcript& t) {
  Sides s;
  for (const auto& turn : t.turns) {
    auto& list = turn.author == Author::scammer ? s.scammer : s.system;
    list.push_back(turn.text);
    auto& all = turn.author == Author::scammer ? s.scammer_all : s.system_all;
    all += turn.text;
    all += "\n";
  }
  return s;
}

bool any_of_phrases(std::string_view text, std::initializer_list<std::string_view> phrases) {
  for (auto p : phrases) {
    if (text::contains_phrase(text, p)) return true;
  }
  return false;
}

std::optional<std::string> first_phrase(std::string_view text, std::initializer_list<std::string_view> phrases) {
  for (auto p : phrases) {
    if (text::contains_phrase(text, p)) return std::string(p);
  }
  return std::nullopt;
}

// The first sentence containing one of the cues, cut to at most max words;
// nullopt when shorter than min words.
std::optional<std::string> sentence_with(const std::vector<std::string>& turns,
                                         std::initializer_list<std::string_view> cues, int min, int max) {
  for (const auto& turn : turns) {
    std::string cur;
    auto consider = [&](const std::string& sentence) -> std::optional<std::string> {
      if (!any_of_phrases(sentence, cues)) return std::nullopt;
      auto w = words_of(sentence);
      if (static_cast<int>(w.size()) < min) return std::nullopt;
      if (static_cast<int>(w.size()) > max) w.resize(static_cast<std::size_t>(max));
      return text::join(w, " ");
    };
    for (char c : turn) {
      cur += c;
      if (c == '.' || c == '!' || c == '?' || c == '\n') {
        if (auto r = consider(cur)) return r;
        cur.clear();
      }
    }
    if (auto r = consider(cur)) return r;
  }
  return std::nullopt;
}

std::string csv_or_none(const std::vector<std::string>& items, const AnswerContract& c) {
  std::size_t words = 0;
  for (const auto& i : items) words += words_of(i).size();
  if (items.empty() || static_cast<int>(words) < c.min_words) return "none";
  std::vector<std::string> kept;
  words = 0;
  for (const auto& i : items) {
    const std::size_t n = words_of(i).size();
    if (static_cast<int>(words + n) > c.max_words) break;
    kept.push_back(i);
    words += n;
  }
  return text::join(kept, ", ");
}

const char* yn(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string heuristic_answers(const Transcript& t, const Questionnaire& q) {
  const Sides s = split_sides(t);
  const std::string& sc = s.scammer_all;
  const std::string& sy = s.system_all;

  PaymentContext ctx;
  std::vector<PaymentProfile> profiles;
  std::optional<Money> first_price;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    if (t.turns[i].author != Author::scammer) continue;
    if (!first_price) {
      const auto prices = extract_price(t.turns[i].text);
      if (!prices.empty()) first_price = prices.front();
    }
    for (auto& p : extract_payment_profiles(t.turns[i].text, static_cast<int>(i), &ctx)) {
      if (std::none_of(profiles.begin(), profiles.end(), [&](const auto& o) { return o.same_rail(p); })) {
        profiles.push_back(std::move(p));
      }
    }
  }

  const bool asks_address = any_of_phrases(sc, {"wallet address", "account address", "your address", "address",
                                                "your email", "username"});
  const bool asks_seed = any_of_phrases(sc, {"seed phrase", "seed", "recovery phrase", "private key", "secret phrase",
                                             "key phrase", "passphrase"});
  const bool asks_screenshot = any_of_phrases(sc, {"screenshot", "screen shot"});
  const bool asks_id = any_of_phrases(sc, {"passport", "id card", "your id", "driver's license", "license",
                                           "identification"});
  const bool asks_video = any_of_phrases(sc, {"video call", "video chat", "facetime", "video"});
  const bool asks_face = any_of_phrases(sc, {"face call", "facetime", "face to face", "selfie"});
  const bool asks_phone = any_of_phrases(sc, {"phone call", "call you", "call me", "quick call", "voice call"});
  const bool asks_proof = any_of_phrases(sc, {"screenshot", "proof", "receipt", "confirmation"});
  const bool frustrated = any_of_phrases(sc, {"wasting my time", "not serious", "block you", "forget it",
                                              "done here", "waiting for", "dumb", "f**k", "damn"});
  const bool profane = any_of_phrases(sc, {"f**k", "fuck", "damn", "shit", "dumb", "stupid", "idiot"});
  const auto harassment = first_phrase(sc, {"block", "report", "dumb", "idiot", "stupid", "hack", "expose"});

  std::vector<std::string> rails;
  static constexpr std::pair<std::string_view, std::string_view> kRails[] = {
      {"paypal", "PayPal"},   {"bitcoin", "Bitcoin"},   {"btc", "Bitcoin"},      {"ethereum", "Ethereum"},
      {"eth", "Ethereum"},    {"usdt", "USDT"},         {"cash app", "Cash App"}, {"cashapp", "Cash App"},
      {"venmo", "Venmo"},     {"zelle", "Zelle"},       {"gift card", "Gift card"}, {"bank transfer", "Bank transfer"},
  };
  for (const auto& [cue, name] : kRails) {
    if (text::contains_phrase(sc, cue) && std::find(rails.begin(), rails.end(), name) == rails.end()) {
      rails.emplace_back(name);
    }
  }

  std::optional<std::string> redirect_channel;
  for (const auto& turn : s.scammer) {
    for (const auto& c : extract_channels(turn)) {
      if (c.kind == ContactKind::telegram) redirect_channel = redirect_channel.value_or("Telegram");
      if (c.kind == ContactKind::whatsapp_phone) redirect_channel = redirect_channel.value_or("WhatsApp");
    }
  }
  if (!redirect_channel) {
    if (auto p = first_phrase(sc, {"telegram", "whatsapp", "signal", "discord", "snapchat"})) {
      redirect_channel = *p;
      (*redirect_channel)[0] = static_cast<char>(std::toupper((*redirect_channel)[0]));
    }
  }

  std::map<std::string, std::string> a;
  // scammer side
  {
    static const std::initializer_list<std::string_view> kRoles = {
        "account recovery agent", "recovery agent", "media recovery support", "customer support",
        "wallet support",         "tech support",   "support team",           "official support",
        "customer service",       "white hat hacker", "legitimate hacker",    "recovery hacker",
        "private hacker",         "hacker",         "blockchain expert",      "cybersecurity expert",
        "expert"};
    a["scammer.role_representation"] = first_phrase(sc, kRoles).value_or("none");
  }
  a["scammer.request_account_address"] = yn(asks_address);
  a["scammer.personal_information_verification"] = yn(asks_address || asks_seed || asks_id || asks_phone || asks_video);
  {
    std::vector<std::string> items;
    if (asks_address) items.emplace_back("wallet address");
    if (asks_seed) items.emplace_back("seed phrase");
    if (asks_screenshot) items.emplace_back("account screenshot");
    if (asks_id) items.emplace_back("identity document");
    if (asks_phone || asks_video) items.emplace_back("phone or video call");
    a["scammer.type_of_information_verification"] = csv_or_none(items, {ContractKind::words_csv, 3, 10});
  }
  a["scammer.face_call_verification"] = yn(asks_face);
  a["scammer.video_call_verification"] = yn(asks_video);
  a["scammer.phone_call_verification"] = yn(asks_phone);
  a["scammer.private_secrets_information_verification"] = yn(asks_seed);
  a["scammer.request_balance_check"] = yn(any_of_phrases(sc, {"balance", "how much do you have", "funds"}));
  a["scammer.issue_reasoning"] =
      sentence_with(s.scammer, {"bug", "glitch", "blocked", "suspicious", "stuck", "locked", "hacked", "blacklisted",
                                "out of sync", "can't send", "frozen", "froze"},
                    3, 6)
          .value_or("none");
  a["scammer.urgency_reasoning"] =
      sentence_with(s.scammer, {"urgent", "asap", "right now", "immediately", "quickly", "30mins", "minutes", "today"}, 3,
                    6)
          .value_or("none");
  a["scammer.offer_paid_assistance"] =
      yn(first_price.has_value() || any_of_phrases(sc, {"cost you", "fee", "pay", "payment", "bucks", "charge"}));
  a["scammer.price_asked"] =
      first_price ? std::to_string(static_cast<std::int64_t>(std::floor(first_price->amount.to_double()))) : "none";
  a["scammer.payment_method_discussion"] = rails.empty() ? "none" : text::join(rails, ", ");
  {
    std::string preferred = "none";
    if (!profiles.empty()) {
      const PaymentKind k = profiles.front().kind;
      preferred = k == PaymentKind::paypal       ? "PayPal"
                  : k == PaymentKind::crypto_btc ? "Bitcoin"
                  : k == PaymentKind::crypto_eth ? "Ethereum"
                  : k == PaymentKind::cashapp    ? "CashApp"
                  : k == PaymentKind::venmo      ? "Venmo"
                  : k == PaymentKind::gift_card  ? "GiftCard"
                                                 : "Link";
    } else if (!rails.empty()) {
      preferred = text::replace_all(rails.front(), " ", "");
    }
    a["scammer.preferred_payment"] = preferred;
  }
  a["scammer.total_payment_method_provided"] = profiles.empty() ? "none" : std::to_string(profiles.size());
  a["scammer.payment_completion_confirmation"] =
      yn(any_of_phrases(sc, {"have you made the payment", "have you sent", "did you send", "once you make the payment",
                             "when you are done", "payment proof", "made the payment"}));
  a["scammer.request_payment_proof"] = yn(asks_proof);
  a["scammer.reluctance_provide_assistance_without_payment"] =
      yn(any_of_phrases(sc, {"pay first", "first pay", "after payment", "have to pay", "only after", "no payment",
                             "you have to pay", "won't help"}));
  a["scammer.reluctance_trusted_payment_methods"] =
      yn(any_of_phrases(sc, {"don't accept", "do not accept", "no paypal", "can't use paypal", "not paypal",
                             "only accept", "only bitcoin"}));
  a["scammer.request_payment_proof_dismissive_response"] =
      yn(asks_proof && any_of_phrases(sy, {"can't send", "cannot send", "unable to send", "not able to send"}));
  a["scammer.has_redirect_further_communication"] = yn(redirect_channel.has_value());
  a["scammer.redirected_further_communication_channel"] = redirect_channel.value_or("none");
  a["scammer.was_scammer_frustrated"] = yn(frustrated);
  a["scammer.scammer_frustated_reason"] =
      frustrated ? sentence_with(s.scammer, {"wasting my time", "not serious", "block you", "forget it", "done here",
                                             "waiting for", "dumb", "f**k", "damn"},
                                 2, 6)
                       .value_or("none")
                 : "none";
  a["scammer.contain_harassment"] = yn(harassment.has_value());
  a["scammer.harassment_topic"] = harassment.value_or("none");
  a["scammer.use_of_profanity"] =
      profane ? sentence_with(s.scammer, {"f**k", "fuck", "damn", "shit", "dumb", "stupid", "idiot"}, 3, 6).value_or("none")
              : "none";
  {
    std::string ending = "none";
    if (!s.scammer.empty()) {
      auto w = words_of(s.scammer.back());
      if (w.size() >= 3) {
        if (w.size() > 6) w.resize(6);
        ending = text::join(w, " ");
      }
    }
    a["scammer.ending_reason"] = ending;
  }
  a["scammer.ending_payment_related_conversation_resentment"] =
      frustrated ? first_phrase(sc, {"not serious", "wasting my time", "forget it", "done here", "block you"})
                       .value_or("frustrated")
                 : "none";

  // system side
  const bool crypto_story = any_of_phrases(sy, {"wallet", "crypto", "cryptocurrency", "bitcoin", "coinbase", "binance"});
  const bool social_story = any_of_phrases(sy, {"account", "password", "gmail", "instagram", "facebook", "email"});
  a["system.system_persona"] = crypto_story   ? "cryptocurrency investor locked out of wallet"
                               : social_story ? "user locked out of social media account"
                                              : "none";
  a["system.system_bio_data"] = "none";
  a["system.problem_description_request_assistance"] =
      sentence_with(s.system, {"problem", "issue", "trouble", "can't", "cannot", "unable", "lost", "locked"}, 2, 6)
          .value_or("none");
  a["system.system_asking_reason_for_pay"] =
      yn(any_of_phrases(sy, {"what is the payment for", "why do i need to pay", "what will the", "how will",
                             "more details about", "specific steps", "what is it for"}));
  a["system.offer_paid_assistance"] =
      yn(any_of_phrases(sy, {"how much", "willing to pay", "i will pay", "i can pay", "make the payment", "send the payment"}));
  a["system.payment_completion_confirmation"] =
      yn(any_of_phrases(sy, {"payment failed", "didn't go through", "i sent", "i have sent", "proceed with making the payment",
                             "proceed with the payment", "payment is done", "keeps failing", "was declined"}));
  a["system.total_payment_confirmed"] = profiles.empty() ? "none" : std::to_string(profiles.size());
  {
    std::vector<std::string> items;
    if (any_of_phrases(sy, {"screenshot", "screenshots"})) items.emplace_back("no screenshots");
    if (any_of_phrases(sy, {"call", "calls", "phone"})) items.emplace_back("no calls");
    if (any_of_phrases(sy, {"passport", "documents", "identification", "id"})) items.emplace_back("no documents");
    if (any_of_phrases(sy, {"decided not to proceed", "not to proceed", "explore other options"}))
      items.emplace_back("declined payment");
    a["system.overall_system_reluctancy"] = csv_or_none(items, {ContractKind::words_csv, 2, 10});
  }
  {
    std::vector<std::string> items;
    if (any_of_phrases(sy, {"wallet address is", "account address is", "address is"})) items.emplace_back("wallet address");
    if (any_of_phrases(sy, {"seed phrase", "the phrase is", "phrase for my wallet"})) items.emplace_back("seed phrase");
    if (any_of_phrases(sy, {"email is", "my email"})) items.emplace_back("account email");
    std::string joined = text::join(items, " and ");
    const auto n = words_of(joined).size();
    a["system.system_said_provided_things"] = (n >= 2 && n <= 6) ? joined : "none";
  }
  {
    std::vector<std::string> items;
    if (any_of_phrases(sy, {"sorry", "apologize", "apologise"})) items.emplace_back("polite apology");
    if (any_of_phrases(sy, {"decided not", "prefer", "can't", "cannot", "unable"})) items.emplace_back("gentle refusal");
    a["system.refusal_sentiments"] = csv_or_none(items, {ContractKind::words_csv, 2, 6});
  }
  {
    std::string reason = "none", sentiment = "none";
    if (!s.system.empty()) {
      const std::string& last = s.system.back();
      if (any_of_phrases(last, {"alternatives", "alternative", "other options", "other solutions"})) {
        reason = "explore other alternatives instead";
      } else if (any_of_phrases(last, {"can't use", "cannot use", "don't use", "not on"})) {
        reason = "unsupported communication channel requested";
      }
      if (any_of_phrases(last, {"thank", "thanks", "appreciate"})) sentiment = "polite and grateful closing";
    }
    a["system.ending_reason"] = reason;
    a["system.ending_sentiment"] = sentiment;
  }

  std::string out;
  for (const auto& question : q.questions) {
    const std::string key = qualified(question);
    auto it = a.find(key);
    out += key + ": " + (it == a.end() ? std::string("none") : it->second) + "\n";
  }
  return out;
}

}  // namespace scambait
