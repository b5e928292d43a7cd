#include "scambait/persona.hpp"

#include <algorithm>
#include <array>

#include "scambait/embedded.hpp"
#include "scambait/ingest.hpp"
#include "scambait/rng.hpp"

namespace scambait {
namespace {

constexpr std::string_view kVariantNames[] = {"crypto_newcomer", "social_lockout", "language_negotiator"};
constexpr std::string_view kEndNames[] = {"payment_profiles_exhausted", "scammer_silent", "redirected_external",
                                          "operator_stop"};
constexpr std::string_view kPhaseNames[] = {
    "opening",           "opening_negotiate", "propose_language", "describe_problem", "provide_address",
    "provide_seed",      "ask_price",         "ask_payment_address", "claim_payment_failure", "refuse_screenshot",
    "refuse_call",       "refuse_documents",  "redirect_back",    "acknowledge",      "reconnect",
    "closing_exhausted", "closing_redirect",  "claim_prior_contact", "fallback",
};

const text::Sections& persona_pools() {
  static const text::Sections pools = text::parse_sections(embedded_data("persona_pools.txt"));
  return pools;
}

const std::vector<std::string>& pool(std::string_view name) {
  const auto& pools = persona_pools();
  auto it = pools.find(name);
  if (it == pools.end() || it->second.empty()) throw std::logic_error("persona pool missing: " + std::string(name));
  return it->second;
}

const std::string& pick(Rng& rng, std::string_view name) {
  return rng.pick(std::span<const std::string>(pool(name)));
}

std::string masked_address(Rng& rng) {
  static constexpr std::string_view kChars = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
  std::string out;
  for (int i = 0; i < 5; ++i) out += kChars[rng.below(kChars.size())];
  out += "*******";
  for (int i = 0; i < 5; ++i) out += kChars[rng.below(kChars.size())];
  return out;
}

// --- cue lexicons used to pick the next reply phase ------------------------

const text::Lexicon& disclosure_lexicon() {
  static const text::Lexicon lex = text::Lexicon::parse(embedded_data("ai_disclosure_lexicon.txt"));
  return lex;
}

const text::Lexicon kScreenshotCues({"screenshot", "screen shot", "payment proof", "proof of payment", "proof",
                                     "captura", "comprobante", "evidencia", "zahlungsnachweis", "nachweis",
                                     "capture d'écran", "preuve", "bewijs"});
const text::Lexicon kCallCues({"call", "video call", "phone call", "facetime", "zoom", "llamada", "anruf",
                               "videoanruf", "appel", "bellen"});
const text::Lexicon kDocumentCues({"passport", "id card", "your id", "driver's license", "drivers license",
                                   "license", "identification", "pasaporte", "ausweis", "reisepass",
                                   "passeport", "paspoort"});
const text::Lexicon kSeedCues({"seed phrase", "seed", "recovery phrase", "private key", "secret phrase",
                               "phrase", "mnemonic", "12 words", "frase", "schlüssel", "schlüsselpassus",
                               "anmeldeinformationen", "phrase secrète", "herstelzin"});
const text::Lexicon kAddressCues({"wallet address", "account address", "your address", "address", "dirección",
                                  "adresse", "adres", "email", "username", "which wallet", "what wallet"});
const text::Lexicon kPriceCues({"cost", "fee", "pay", "payment", "charge", "price", "bucks", "money", "costará",
                                "cuesta", "pago", "kostet", "zahlung", "coûte", "paiement", "kost", "betaling"});
const text::Lexicon kProblemCues({"problem", "issue", "challenge", "what happened", "explain", "what's wrong",
                                  "problema", "problem", "los", "problème", "probleem"});
const text::Lexicon kBotCues({"are you a bot", "are you ai", "are you real", "are you human", "robot"});
const text::Lexicon kDeclineCues({"only english", "english only", "only speak english", "just english",
                                  "i don't speak", "i do not speak", "no other language", "can't speak"});
const text::Lexicon kAffirmCues({"sure", "yes", "ok", "okay", "of course", "no problem", "won't be a problem",
                                 "alright", "fine", "si", "sí", "claro", "ja", "oui", "natürlich", "d'accord"});

struct LanguageInfo {
  std::string_view code;
  std::string_view english_name;
  std::array<std::string_view, 2> names;
};
constexpr LanguageInfo kLanguages[] = {
    {"es", "Spanish", {"spanish", "español"}},
    {"de", "German", {"german", "deutsch"}},
    {"fr", "French", {"french", "français"}},
    {"nl", "Dutch", {"dutch", "nederlands"}},
};

std::optional<std::string> language_named_in(std::string_view text) {
  for (const auto& l : kLanguages) {
    for (auto n : l.names) {
      if (text::contains_phrase(text, n)) return std::string(l.code);
    }
  }
  return std::nullopt;
}

// Sentence split on . ! ? and newlines; the terminator stays with its sentence.
std::vector<std::string> sentences(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\n' || c == '\r') {
      if (!text::trim(cur).empty()) out.emplace_back(text::trim(cur));
      cur.clear();
      continue;
    }
    cur += c;
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == s.size() || s[i + 1] == ' ' || s[i + 1] == '\n')) {
      if (!text::trim(cur).empty()) out.emplace_back(text::trim(cur));
      cur.clear();
    }
  }
  if (!text::trim(cur).empty()) out.emplace_back(text::trim(cur));
  return out;
}

std::string cut_to(std::string_view s, std::size_t max_chars) {
  // Cut on a code-point boundary at the last space before the limit.
  std::size_t bytes = 0, chars = 0, last_space = std::string_view::npos;
  while (bytes < s.size() && chars < max_chars) {
    if (s[bytes] == ' ') last_space = bytes;
    ++bytes;
    while (bytes < s.size() && (static_cast<unsigned char>(s[bytes]) & 0xC0) == 0x80) ++bytes;
    ++chars;
  }
  if (bytes >= s.size()) return std::string(s);
  if (last_space != std::string_view::npos && last_space > 0) bytes = last_space;
  return std::string(text::trim(s.substr(0, bytes)));
}

bool ended(const Conversation& c) { return c.state == ConversationState::ended; }

}  // namespace

std::string_view to_string(PersonaVariant v) { return kVariantNames[static_cast<int>(v)]; }
std::string_view to_string(EndReason r) { return kEndNames[static_cast<int>(r)]; }
std::string_view to_string(Phase p) { return kPhaseNames[static_cast<int>(p)]; }
std::string_view to_string(Author a) { return a == Author::system ? "system" : "scammer"; }
std::string_view to_string(RedirectPolicy p) {
  return p == RedirectPolicy::polite_close ? "polite_close" : "claim_prior_contact";
}
std::string_view to_string(ConversationState s) {
  switch (s) {
    case ConversationState::open:
      return "open";
    case ConversationState::awaiting_reconnect:
      return "awaiting_reconnect";
    case ConversationState::ended:
      break;
  }
  return "ended";
}

PersonaVariant parse_persona_variant(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kVariantNames); ++i) {
    if (kVariantNames[i] == s) return static_cast<PersonaVariant>(i);
  }
  throw std::invalid_argument("unknown persona variant: " + std::string(s));
}

RedirectPolicy parse_redirect_policy(std::string_view s) {
  if (s == "polite_close") return RedirectPolicy::polite_close;
  if (s == "claim_prior_contact") return RedirectPolicy::claim_prior_contact;
  throw std::invalid_argument("unknown redirect policy: " + std::string(s));
}

EndReason parse_end_reason(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kEndNames); ++i) {
    if (kEndNames[i] == s) return static_cast<EndReason>(i);
  }
  throw std::invalid_argument("unknown end reason: " + std::string(s));
}

std::string_view language_name(std::string_view code) {
  for (const auto& l : kLanguages) {
    if (l.code == code) return l.english_name;
  }
  return "English";
}

PersonaConfig build_persona(const RecoveryContext& context, PersonaVariant variant, std::uint64_t seed) {
  check_context(context);
  Rng rng(derive_seed(seed, "persona"));
  PersonaConfig p;
  p.seed = seed;
  p.context = context;
  p.variant = variant;
  p.name = pick(rng, "first_name") + " " + pick(rng, "last_name");
  p.age = static_cast<int>(rng.between(38, 72));
  p.access_reason = pick(rng, "access_reason");
  const bool crypto = context.kind == RecoveryKind::crypto_wallet;
  p.story = pick(rng, crypto ? "crypto_story" : "social_story");
  if (crypto) {
    p.wallet_address = masked_address(rng);
    std::vector<std::string> words;
    for (int i = 0; i < 12; ++i) words.push_back(pick(rng, "seed_word"));
    p.seed_phrase = text::join(words, " ");
  } else {
    std::string local = text::to_lower(p.name.substr(0, p.name.find(' ')));
    p.account_email = local.substr(0, std::min<std::size_t>(local.size(), 3)) + "****@" +
                      (context.target == "Gmail" ? "gmail.com" : "mail.com");
    p.wallet_address = p.account_email;
  }
  if (variant == PersonaVariant::language_negotiator) {
    p.language_mode = LanguageMode::negotiate_other;
    p.preferred_language = pick(rng, "preferred_language");
    p.introduce_errors = true;
  }
  p.redirect_policy = rng.bernoulli(0.5) ? RedirectPolicy::polite_close : RedirectPolicy::claim_prior_contact;
  return p;
}

std::string persona_system_text(const PersonaConfig& p) {
  const std::string target = display_name(p.context);
  std::string s = "You are " + p.name + ", " + std::to_string(p.age) + " years old, who " + p.story + ". ";
  s += "The account in question is " + target + ". When asked why access fails, say: " + p.access_reason + ". ";
  if (!p.seed_phrase.empty()) {
    s += "Your account address is " + p.wallet_address + " and your recovery phrase is '" + p.seed_phrase +
         "'; give them only when asked. ";
  } else {
    s += "Your account email is " + p.account_email + ". You cannot verify passport, ID or phone number. ";
  }
  if (p.refuses_calls) s += "You never take phone or video calls. ";
  s += "If help is offered for a fee, ask how much and where to pay; you prefer PayPal. ";
  s += "Keep messages short, give no security warnings, and steer unrelated questions back to the account problem. ";
  s += "Never say or imply that you are automated. ";
  if (p.language_mode == LanguageMode::negotiate_other) {
    s += "Your English is weak and contains mistakes; ask to continue in " + std::string(language_name(p.preferred_language)) +
         " and use the language the other person chooses. ";
  }
  return std::string(text::trim(s));
}

std::string instruction_text(const Instruction& ins, const PersonaConfig& persona) {
  std::string s;
  switch (ins.phase) {
    case Phase::opening:
      s = "Start the conversation: describe that you have a problem with your account and ask for help.";
      break;
    case Phase::opening_negotiate:
      s = "Start the conversation in broken English and ask which other language you could talk in.";
      break;
    case Phase::propose_language:
      s = "Ask to continue in " + std::string(language_name(persona.preferred_language)) + ".";
      break;
    case Phase::describe_problem:
      s = "Describe your access problem briefly.";
      break;
    case Phase::provide_address:
      s = "Give your account address.";
      break;
    case Phase::provide_seed:
      s = "Give your recovery phrase.";
      break;
    case Phase::ask_price:
      s = "Ask how much it costs and where to send the payment; mention you prefer PayPal.";
      break;
    case Phase::ask_payment_address:
      s = "Ask for the exact payment destination, preferably a PayPal address.";
      break;
    case Phase::claim_payment_failure:
      s = "Say the payment attempt failed and ask for another payment method.";
      break;
    case Phase::refuse_screenshot:
      s = "Apologize that you cannot send screenshots because of technical issues.";
      break;
    case Phase::refuse_call:
      s = "Politely refuse any call and ask to keep chatting.";
      break;
    case Phase::refuse_documents:
      s = "Politely refuse to send identity documents.";
      break;
    case Phase::redirect_back:
      s = "Steer the conversation back to your account problem.";
      break;
    case Phase::acknowledge:
      s = "Acknowledge and ask what to do next.";
      break;
    case Phase::reconnect:
      s = "Check whether the other person is still there and still able to help.";
      break;
    case Phase::closing_exhausted:
      s = "Close politely: say you would explore further alternatives.";
      break;
    case Phase::closing_redirect:
      s = "Close politely: you cannot use the other app.";
      break;
    case Phase::claim_prior_contact:
      s = "Say you already tried that channel and ask to continue here.";
      break;
    case Phase::fallback:
      s = "Say you are still stuck and ask what to do next.";
      break;
  }
  if (!ins.price.empty()) s += " The quoted price is " + ins.price + ".";
  if (ins.language != "en") s += " Reply in " + std::string(language_name(ins.language)) + ".";
  return s;
}

// --- conversation -----------------------------------------------------------

void Conversation::add_scammer_turn(std::string text, Timestamp at) {
  if (ended(*this)) throw std::logic_error("conversation " + id + " has ended");
  if (!turns.empty() && at < turns.back().at) throw std::logic_error("turns must be added in time order");
  turns.push_back({Author::scammer, std::move(text), at});
  if (state == ConversationState::awaiting_reconnect) state = ConversationState::open;
}

std::size_t Conversation::count(Author a) const {
  return static_cast<std::size_t>(std::count_if(turns.begin(), turns.end(), [a](const auto& t) { return t.author == a; }));
}

std::optional<Timestamp> Conversation::last_at(Author a) const {
  for (auto it = turns.rbegin(); it != turns.rend(); ++it) {
    if (it->author == a) return it->at;
  }
  return std::nullopt;
}

std::optional<std::string> outbound_text(const Decision& d) {
  return std::visit(
      [](const auto& v) -> std::optional<std::string> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, decision::Idle>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, decision::End>) {
          return v.text.empty() ? std::nullopt : std::optional<std::string>(v.text);
        } else {
          return v.text;
        }
      },
      d);
}

bool discloses_automation(std::string_view text) { return disclosure_lexicon().matches(text); }

std::string detect_language(std::string_view text) {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> stopwords = {
      {"en", {"the", "you", "is", "are", "i", "to", "and", "what", "your", "can", "it", "my", "me", "do", "be"}},
      {"es", {"el", "la", "los", "las", "que", "de", "puedo", "es", "tu", "te", "su", "para", "por", "cuál", "qué",
              "tienes", "ayudarte", "usted", "pago", "está", "una", "y", "en"}},
      {"de", {"ich", "sie", "ihnen", "kann", "ist", "und", "wie", "was", "haben", "der", "die", "das", "mir", "zu",
              "sich", "ihr", "nicht", "mit", "bitte", "welche"}},
      {"fr", {"je", "vous", "est", "le", "les", "et", "que", "pour", "avec", "votre", "pas", "une", "des", "peux",
              "quel", "suis"}},
      {"nl", {"ik", "je", "jij", "het", "een", "is", "en", "wat", "u", "kan", "niet", "met", "mijn", "uw", "voor",
              "hoe"}},
  };
  const std::string norm = text::normalize_for_match(text);
  std::vector<std::string> words;
  for (const auto& w : text::split(norm, ' ')) {
    if (!w.empty()) words.push_back(w);
  }
  std::string best;
  int best_score = 0;
  bool tie = false;
  for (const auto& [code, list] : stopwords) {
    int score = 0;
    for (const auto& w : words) score += std::find(list.begin(), list.end(), w) != list.end() ? 1 : 0;
    if (score > best_score) {
      best = code;
      best_score = score;
      tie = false;
    } else if (score == best_score && score > 0) {
      tie = true;
    }
  }
  if (best_score < 2 || tie) return "";
  return best;
}

std::string negotiate_language(const Conversation& conv) {
  if (conv.persona.language_mode != LanguageMode::negotiate_other) return "english";
  std::optional<std::string> proposed;
  for (const auto& t : conv.turns) {
    if (t.author == Author::system) {
      if (auto named = language_named_in(t.text)) proposed = named;
      continue;
    }
    const std::string lang = detect_language(t.text);
    if (!lang.empty() && lang != "en") return lang;
    if (kDeclineCues.matches(t.text)) return "english";
    if (proposed && kAffirmCues.matches(t.text)) return *proposed;
    if (auto named = language_named_in(t.text)) {
      if (!proposed || *named == *proposed) return *named;
    }
  }
  return "english";
}

std::string sanitize_reply(std::string_view reply, const PersonaConfig& persona, std::string_view language) {
  std::vector<std::string> kept;
  for (auto& s : sentences(reply)) {
    if (!discloses_automation(s)) kept.push_back(std::move(s));
  }
  std::string joined = text::join(kept, " ");
  if (joined.empty() || discloses_automation(joined)) {
    static ScriptedChatProvider fallback_provider;
    Instruction ins;
    ins.phase = Phase::fallback;
    ins.language = std::string(language);
    joined = fallback_provider.generate(persona, {}, ins);
    if (discloses_automation(joined)) joined = "Sorry, can you tell me what to do next?";
  }
  const std::size_t max = persona.max_message_length;
  if (max == 0 || text::utf8_length(joined) <= max) return joined;

  // Keep whole sentences while they fit.
  std::string out;
  for (const auto& s : sentences(joined)) {
    const std::string candidate = out.empty() ? s : out + " " + s;
    if (text::utf8_length(candidate) > max) break;
    out = candidate;
  }
  if (out.empty()) out = cut_to(joined, max);
  return out;
}

void stop_conversation(Conversation& conv) {
  if (ended(conv)) return;
  conv.state = ConversationState::ended;
  conv.end_reason = EndReason::operator_stop;
}

Decision next_reply(Conversation& conv, ChatProvider& provider, Timestamp now, const EngineConfig& cfg) {
  if (ended(conv)) throw std::logic_error("next_reply on ended conversation " + conv.id);

  const bool crypto = conv.persona.context.kind == RecoveryKind::crypto_wallet;
  Instruction ins;
  ins.language = (conv.language && *conv.language != "english") ? *conv.language : "en";
  if (conv.payment_context.last_price) ins.price = "$" + conv.payment_context.last_price->amount.to_string();

  auto generate = [&](Phase phase, const std::string& lang) {
    Instruction i = ins;
    i.phase = phase;
    i.language = lang;
    return sanitize_reply(provider.generate(conv.persona, conv.turns, i), conv.persona, lang);
  };
  auto push_system = [&](std::string text) { conv.turns.push_back({Author::system, std::move(text), now}); };

  // Opening message.
  if (conv.turns.empty()) {
    const Phase phase = conv.persona.language_mode == LanguageMode::negotiate_other ? Phase::opening_negotiate
                                                                                     : Phase::opening;
    std::string text = generate(phase, "en");
    push_system(text);
    return decision::Send{std::move(text)};
  }

  // Waiting on the scammer: silence handling.
  if (conv.turns.back().author == Author::system) {
    const Timestamp last = conv.turns.back().at;
    if (now - last < cfg.silence_timeout) return decision::Idle{last + cfg.silence_timeout};
    if (conv.state == ConversationState::open && !conv.reconnect_sent) {
      std::string text = generate(Phase::reconnect, ins.language);
      push_system(text);
      conv.reconnect_sent = true;
      conv.state = ConversationState::awaiting_reconnect;
      return decision::ReconnectProbe{std::move(text)};
    }
    conv.state = ConversationState::ended;
    conv.end_reason = EndReason::scammer_silent;
    return decision::End{EndReason::scammer_silent, {}};
  }

  // Unread scammer turns: collect payment profiles on a scratch copy so a
  // provider failure leaves the conversation as it was.
  PaymentContext ctx = conv.payment_context;
  std::vector<PaymentProfile> fresh;
  for (std::size_t i = conv.scanned_turns; i < conv.turns.size(); ++i) {
    if (conv.turns[i].author != Author::scammer) continue;
    for (auto& p : extract_payment_profiles(conv.turns[i].text, static_cast<int>(i), &ctx)) {
      const auto same = [&](const PaymentProfile& q) { return q.same_rail(p); };
      if (std::none_of(conv.collected.begin(), conv.collected.end(), same) &&
          std::none_of(fresh.begin(), fresh.end(), same)) {
        fresh.push_back(std::move(p));
      }
    }
  }
  const std::string& latest = conv.turns.back().text;
  if (ctx.last_price) ins.price = "$" + ctx.last_price->amount.to_string();

  auto commit_scan = [&] {
    conv.scanned_turns = conv.turns.size();
    conv.payment_context = ctx;
  };
  // Closing lines come from the fixed templates whatever the provider is.
  auto finish = [&](EndReason reason, Phase phase) {
    static ScriptedChatProvider closings;
    Instruction i = ins;
    i.phase = phase;
    std::string text = sanitize_reply(closings.generate(conv.persona, conv.turns, i), conv.persona, i.language);
    commit_scan();
    push_system(text);
    conv.state = ConversationState::ended;
    conv.end_reason = reason;
    return decision::End{reason, std::move(text)};
  };
  auto send = [&](Phase phase) {
    std::string text = generate(phase, ins.language);
    commit_scan();
    push_system(text);
    return decision::Send{std::move(text)};
  };

  // 1. New payment method: record it and claim the payment failed.
  if (!fresh.empty()) {
    if (conv.failure_claims_made >= cfg.failure_cap) {
      auto d = finish(EndReason::payment_profiles_exhausted, Phase::closing_exhausted);
      for (auto& p : fresh) conv.collected.push_back(std::move(p));
      return d;
    }
    std::string text = generate(Phase::claim_payment_failure, ins.language);
    commit_scan();
    for (auto& p : fresh) conv.collected.push_back(std::move(p));
    ++conv.failure_claims_made;
    push_system(text);
    return decision::RequestPaymentFailure{std::move(text)};
  }

  // 2. Enough rails and nothing new offered.
  if (conv.collected.size() >= 2) return finish(EndReason::payment_profiles_exhausted, Phase::closing_exhausted);

  // 3. Redirect to a channel we do not follow.
  bool external = false;
  const bool names_payment_link = std::any_of(
      conv.collected.begin(), conv.collected.end(), [](const PaymentProfile& p) { return p.kind == PaymentKind::external_link; });
  for (const auto& c : extract_channels(latest)) {
    if (is_supported_contact(c.kind)) continue;
    // A link may be the payment page itself rather than a redirect.
    if (c.kind == ContactKind::url && (names_payment_link || kPriceCues.matches(latest))) continue;
    external = true;
  }
  if (external) {
    if (conv.persona.redirect_policy == RedirectPolicy::polite_close || conv.prior_contact_claimed) {
      return finish(EndReason::redirected_external, Phase::closing_redirect);
    }
    auto d = send(Phase::claim_prior_contact);
    conv.prior_contact_claimed = true;
    return d;
  }

  // 4. Language negotiation.
  if (conv.persona.language_mode == LanguageMode::negotiate_other && !conv.language) {
    if (!conv.language_proposed) {
      auto d = send(Phase::propose_language);
      conv.language_proposed = true;
      return d;
    }
    const std::string lang = negotiate_language(conv);
    conv.language = lang;
    ins.language = lang == "english" ? "en" : lang;
  }

  // 5. Reply to whatever the scammer asked.
  if (kScreenshotCues.matches(latest)) return send(Phase::refuse_screenshot);
  if (kBotCues.matches(latest)) return send(Phase::redirect_back);
  if (conv.persona.refuses_calls && kCallCues.matches(latest)) return send(Phase::refuse_call);
  if (conv.persona.refuses_documents && kDocumentCues.matches(latest)) return send(Phase::refuse_documents);
  if (!conv.collected.empty()) return send(Phase::claim_payment_failure);
  if (crypto && kSeedCues.matches(latest)) return send(Phase::provide_seed);
  if (kAddressCues.matches(latest)) return send(Phase::provide_address);
  if (!extract_price(latest).empty() || kPriceCues.matches(latest)) {
    return send(ctx.last_price ? Phase::ask_payment_address : Phase::ask_price);
  }
  if (kProblemCues.matches(latest) || conv.count(Author::system) < 2) return send(Phase::describe_problem);
  return send(Phase::acknowledge);
}

}  // namespace scambait
