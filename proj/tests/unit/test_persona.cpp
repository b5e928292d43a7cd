#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "scambait/persona.hpp"
#include "scambait/embedded.hpp"
#include "scambait/simscammer.hpp"
#include "scambait/text.hpp"

using namespace scambait;

namespace {

const Timestamp kT0 = parse_iso8601("2023-11-21T08:00:00Z");
const RecoveryContext kTrust{RecoveryKind::crypto_wallet, "Trust Wallet"};
const RecoveryContext kGmail{RecoveryKind::social_media, "Gmail"};

Conversation fresh(PersonaVariant v = PersonaVariant::crypto_newcomer, const RecoveryContext& ctx = kTrust,
                   std::uint64_t seed = 3) {
  Conversation c;
  c.id = "cv-test";
  c.scammer_profile_id = "scammer";
  c.channel = ChannelKind::email;
  c.persona = build_persona(ctx, v, seed);
  return c;
}

// Fails the first `failures` calls, then delegates.
class FlakyProvider : public ChatProvider {
 public:
  FlakyProvider(int failures, bool retryable) : failures_(failures), retryable_(retryable) {}
  std::string generate(const PersonaConfig& p, const std::vector<DialogueTurn>& t, const Instruction& i) override {
    ++calls;
    if (failures_ > 0) {
      --failures_;
      throw ProviderError("upstream unavailable", retryable_);
    }
    return inner_.generate(p, t, i);
  }
  int calls = 0;

 private:
  int failures_;
  bool retryable_;
  ScriptedChatProvider inner_;
};

template <typename T>
bool is(const Decision& d) {
  return std::holds_alternative<T>(d);
}

}  // namespace

TEST(Persona, CryptoNewcomer) {
  const auto p = build_persona(kTrust, PersonaVariant::crypto_newcomer, 5);
  EXPECT_FALSE(p.name.empty());
  EXPECT_GE(p.age, 18);
  EXPECT_EQ(p.payment_preference, "PayPal first");
  EXPECT_NE(text::to_lower(p.story).find("web wallet"), std::string::npos) << p.story;
  EXPECT_EQ(text::split(p.seed_phrase, ' ').size(), 12u);
  EXPECT_NE(p.wallet_address.find('*'), std::string::npos) << "address must be masked";
  EXPECT_EQ(p.language_mode, LanguageMode::english);
  EXPECT_TRUE(p.refuses_calls);
}

TEST(Persona, SocialLockoutRefusesCalls) {
  const auto p = build_persona(kGmail, PersonaVariant::social_lockout, 5);
  EXPECT_TRUE(p.refuses_calls);
  EXPECT_TRUE(p.refuses_documents);
  EXPECT_TRUE(p.seed_phrase.empty());
  EXPECT_FALSE(p.account_email.empty());
  EXPECT_NE(p.account_email.find('*'), std::string::npos);
}

TEST(Persona, NegotiatorIntroducesErrors) {
  const auto p = build_persona(kTrust, PersonaVariant::language_negotiator, 5);
  EXPECT_TRUE(p.introduce_errors);
  EXPECT_EQ(p.language_mode, LanguageMode::negotiate_other);
  EXPECT_NE(p.preferred_language, "en");
  EXPECT_FALSE(language_name(p.preferred_language).empty());
}

TEST(Persona, DeterministicAndVaried) {
  const auto a = build_persona(kTrust, PersonaVariant::crypto_newcomer, 77);
  const auto b = build_persona(kTrust, PersonaVariant::crypto_newcomer, 77);
  EXPECT_EQ(a.name, b.name);
  EXPECT_EQ(a.seed_phrase, b.seed_phrase);
  std::set<std::string> names;
  for (std::uint64_t s = 0; s < 40; ++s) names.insert(build_persona(kTrust, PersonaVariant::crypto_newcomer, s).name);
  EXPECT_GT(names.size(), 10u);
}

TEST(Persona, SystemTextDescribesThePersona) {
  const auto p = build_persona(kGmail, PersonaVariant::social_lockout, 1);
  const std::string s = persona_system_text(p);
  EXPECT_NE(s.find(p.name), std::string::npos);
  EXPECT_NE(s.find("PayPal"), std::string::npos);
  EXPECT_NE(s.find("Gmail"), std::string::npos);
}

TEST(Sanitize, ModelSelfReferenceFallsBack) {
  const auto p = build_persona(kTrust, PersonaVariant::crypto_newcomer, 1);
  const std::string out = sanitize_reply("As an AI language model, I cannot help with that.", p);
  EXPECT_FALSE(discloses_automation(out));
  EXPECT_FALSE(out.empty());
  EXPECT_NE(out.find("Trust Wallet"), std::string::npos) << out;
}

TEST(Sanitize, CleanReplyUnchanged) {
  const auto p = build_persona(kTrust, PersonaVariant::crypto_newcomer, 1);
  const std::string clean = "Thank you, how much will it cost me?";
  EXPECT_EQ(sanitize_reply(clean, p), clean);
}

TEST(Sanitize, OnlyOffendingSentencesDropped) {
  const auto p = build_persona(kTrust, PersonaVariant::crypto_newcomer, 1);
  EXPECT_EQ(sanitize_reply("Okay. I'm an AI, sorry. Where do I send it?", p), "Okay. Where do I send it?");
  EXPECT_TRUE(discloses_automation("I\xE2\x80\x99m a chatbot"));
  EXPECT_TRUE(discloses_automation("powered by GPT-4!"));
  EXPECT_FALSE(discloses_automation("I said I would pay"));
}

TEST(Sanitize, LongReplyCutAtSentenceBoundary) {
  auto p = build_persona(kTrust, PersonaVariant::crypto_newcomer, 1);
  p.max_message_length = 600;
  std::string longtext;
  while (longtext.size() < 2000) longtext += "This sentence is about my wallet problem. ";
  const std::string out = sanitize_reply(longtext, p);
  EXPECT_LE(text::utf8_length(out), 600u);
  EXPECT_EQ(out.back(), '.');
  EXPECT_GT(out.size(), 500u);
  // A single overlong sentence is cut on a word boundary instead.
  const std::string out2 = sanitize_reply(std::string(900, 'x') + " end", p);
  EXPECT_LE(text::utf8_length(out2), 600u);
}

TEST(Engine, OpeningThenDescribeProblem) {
  ScriptedChatProvider provider;
  auto c = fresh();
  const auto d = next_reply(c, provider, kT0);
  ASSERT_TRUE(is<decision::Send>(d));
  EXPECT_EQ(c.count(Author::system), 1u);
  c.add_scammer_turn("You're welcome to my page I can help you", kT0 + kMinute);
  const auto d2 = next_reply(c, provider, kT0 + 2 * kMinute);
  ASSERT_TRUE(is<decision::Send>(d2));
  EXPECT_EQ(c.turns.size(), 3u);
  EXPECT_EQ(c.turns.back().at, kT0 + 2 * kMinute);
}

TEST(Engine, NewCryptoRailTriggersFailureClaim) {
  ScriptedChatProvider provider;
  auto c = fresh();
  next_reply(c, provider, kT0);
  c.add_scammer_turn("send $100 btc to 1A1zP1eP5QGefi2DMPTfTL5SLmv7DivfNa", kT0 + kMinute);
  const auto d = next_reply(c, provider, kT0 + 2 * kMinute);
  ASSERT_TRUE(is<decision::RequestPaymentFailure>(d));
  ASSERT_EQ(c.collected.size(), 1u);
  EXPECT_EQ(c.collected[0].kind, PaymentKind::crypto_btc);
  EXPECT_EQ(c.collected[0].validity, Validity::valid);
  EXPECT_EQ(c.collected[0].source_turn, 1);
  EXPECT_EQ(c.failure_claims_made, 1);
  EXPECT_TRUE(is_failure_claim(*outbound_text(d)));
}

TEST(Engine, TwoRailsAndNoNewMethodEndsExhausted) {
  ScriptedChatProvider provider;
  auto c = fresh();
  next_reply(c, provider, kT0);
  c.add_scammer_turn("pay to paypal mr.fix@gmail.com", kT0 + kMinute);
  next_reply(c, provider, kT0 + 2 * kMinute);
  c.add_scammer_turn("then bitcoin 3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy", kT0 + 3 * kMinute);
  EXPECT_TRUE(is<decision::RequestPaymentFailure>(next_reply(c, provider, kT0 + 4 * kMinute)));
  c.add_scammer_turn("There is no other way", kT0 + 5 * kMinute);
  const auto d = next_reply(c, provider, kT0 + 6 * kMinute);
  ASSERT_TRUE(is<decision::End>(d));
  EXPECT_EQ(std::get<decision::End>(d).reason, EndReason::payment_profiles_exhausted);
  EXPECT_NE(std::get<decision::End>(d).text.find("explore further alternatives"), std::string::npos);
  EXPECT_EQ(c.state, ConversationState::ended);
  EXPECT_EQ(c.end_reason, EndReason::payment_profiles_exhausted);
  EXPECT_EQ(c.collected.size(), 2u);
  EXPECT_THROW(next_reply(c, provider, kT0 + 7 * kMinute), std::logic_error);
  EXPECT_THROW(c.add_scammer_turn("hello?", kT0 + 8 * kMinute), std::logic_error);
}

TEST(Engine, SilenceReconnectOnceThenEnd) {
  ScriptedChatProvider provider;
  auto c = fresh();
  next_reply(c, provider, kT0);
  const auto idle = next_reply(c, provider, kT0 + kHour);
  ASSERT_TRUE(is<decision::Idle>(idle));
  EXPECT_EQ(std::get<decision::Idle>(idle).resume_at, kT0 + 48 * kHour);
  EXPECT_TRUE(is<decision::Idle>(next_reply(c, provider, kT0 + 48 * kHour - Millis{1})));
  ASSERT_TRUE(is<decision::ReconnectProbe>(next_reply(c, provider, kT0 + 48 * kHour)));
  EXPECT_EQ(c.state, ConversationState::awaiting_reconnect);
  EXPECT_TRUE(is<decision::Idle>(next_reply(c, provider, kT0 + 60 * kHour)));
  const auto end = next_reply(c, provider, kT0 + 96 * kHour);
  ASSERT_TRUE(is<decision::End>(end));
  EXPECT_EQ(std::get<decision::End>(end).reason, EndReason::scammer_silent);
  EXPECT_TRUE(std::get<decision::End>(end).text.empty());
}

TEST(Engine, ReplyAfterReconnectReopensButNoSecondProbe) {
  ScriptedChatProvider provider;
  auto c = fresh();
  next_reply(c, provider, kT0);
  next_reply(c, provider, kT0 + 48 * kHour);
  c.add_scammer_turn("sorry I was busy", kT0 + 50 * kHour);
  EXPECT_EQ(c.state, ConversationState::open);
  next_reply(c, provider, kT0 + 50 * kHour);
  const auto end = next_reply(c, provider, kT0 + 98 * kHour);
  ASSERT_TRUE(is<decision::End>(end));
  EXPECT_TRUE(c.reconnect_sent);
}

TEST(Engine, FailureLoopIsCapped) {
  ScriptedChatProvider provider;
  auto c = fresh();
  next_reply(c, provider, kT0);
  Timestamp now = kT0;
  int claims = 0;
  for (int i = 0; i < 20 && c.state != ConversationState::ended; ++i) {
    now += kMinute;
    c.add_scammer_turn("ok use cashapp $fixer" + std::to_string(i), now);
    const auto d = next_reply(c, provider, now);
    claims += is<decision::RequestPaymentFailure>(d) ? 1 : 0;
  }
  EXPECT_EQ(claims, 5);
  EXPECT_EQ(c.failure_claims_made, 5);
  EXPECT_EQ(c.end_reason, EndReason::payment_profiles_exhausted);
  EXPECT_EQ(c.collected.size(), 6u);
}

TEST(Engine, ProviderFailureLeavesConversationUntouched) {
  FlakyProvider flaky(1, true);
  auto c = fresh();
  EXPECT_THROW(next_reply(c, flaky, kT0), ProviderError);
  EXPECT_TRUE(c.turns.empty());
  next_reply(c, flaky, kT0);
  c.add_scammer_turn("pay paypal a.b@gmail.com", kT0 + kMinute);
  FlakyProvider down(1, false);
  const Conversation before = c;
  EXPECT_THROW(next_reply(c, down, kT0 + 2 * kMinute), ProviderError);
  EXPECT_EQ(c.turns, before.turns);
  EXPECT_EQ(c.collected, before.collected);
  EXPECT_EQ(c.scanned_turns, before.scanned_turns);
  EXPECT_EQ(c.failure_claims_made, before.failure_claims_made);
  EXPECT_TRUE(is<decision::RequestPaymentFailure>(next_reply(c, down, kT0 + 2 * kMinute)));
}

TEST(Engine, ScreenshotCallAndDocumentRequestsAreRefused) {
  ScriptedChatProvider provider;
  auto c = fresh(PersonaVariant::social_lockout, kGmail);
  next_reply(c, provider, kT0);
  c.add_scammer_turn("Send a screenshot of the error", kT0 + kMinute);
  next_reply(c, provider, kT0 + 2 * kMinute);
  c.add_scammer_turn("Can we do a quick phone call?", kT0 + 3 * kMinute);
  next_reply(c, provider, kT0 + 4 * kMinute);
  c.add_scammer_turn("I need a photo of your passport", kT0 + 5 * kMinute);
  next_reply(c, provider, kT0 + 6 * kMinute);
  ASSERT_EQ(c.turns.size(), 7u);
  const std::string screenshot = text::to_lower(c.turns[2].text);
  EXPECT_TRUE(screenshot.find("screenshot") != std::string::npos || screenshot.find("technical") != std::string::npos)
      << c.turns[2].text;
}

TEST(Engine, UnsupportedRedirectPolicies) {
  ScriptedChatProvider provider;
  for (auto policy : {RedirectPolicy::polite_close, RedirectPolicy::claim_prior_contact}) {
    auto c = fresh();
    c.persona.redirect_policy = policy;
    next_reply(c, provider, kT0);
    c.add_scammer_turn("Message me on telegram t.me/fixdesk", kT0 + kMinute);
    const auto d = next_reply(c, provider, kT0 + 2 * kMinute);
    if (policy == RedirectPolicy::polite_close) {
      ASSERT_TRUE(is<decision::End>(d));
      EXPECT_EQ(c.end_reason, EndReason::redirected_external);
    } else {
      ASSERT_TRUE(is<decision::Send>(d));
      EXPECT_TRUE(c.prior_contact_claimed);
      c.add_scammer_turn("No, only on WhatsApp +1 415 555 0132", kT0 + 3 * kMinute);
      const auto d2 = next_reply(c, provider, kT0 + 4 * kMinute);
      ASSERT_TRUE(is<decision::End>(d2));
      EXPECT_EQ(c.end_reason, EndReason::redirected_external);
    }
  }
}

TEST(Engine, OperatorStop) {
  auto c = fresh();
  stop_conversation(c);
  EXPECT_EQ(c.end_reason, EndReason::operator_stop);
  stop_conversation(c);
  EXPECT_EQ(c.end_reason, EndReason::operator_stop);
}

TEST(Engine, ScammerTurnsMustNotGoBackInTime) {
  ScriptedChatProvider provider;
  auto c = fresh();
  next_reply(c, provider, kT0 + kHour);
  EXPECT_THROW(c.add_scammer_turn("hi", kT0), std::logic_error);
}

TEST(Language, DetectsSupportedLanguages) {
  EXPECT_EQ(detect_language("Sí, puedo ayudarte pero te costará poco dinero"), "es");
  EXPECT_EQ(detect_language("Ich spreche Deutsch, wie kann ich Ihnen helfen"), "de");
  EXPECT_EQ(detect_language("Oui je peux vous aider avec le portefeuille"), "fr");
  EXPECT_EQ(detect_language("Ja, ik kan je helpen met de wallet"), "nl");
  EXPECT_EQ(detect_language("ok"), "");
}

TEST(Language, NegotiationOutcomes) {
  ScriptedChatProvider provider;
  auto run = [&](std::vector<std::string> replies) {
    auto c = fresh(PersonaVariant::language_negotiator);
    c.persona.preferred_language = "es";
    Timestamp now = kT0;
    next_reply(c, provider, now);
    for (auto& r : replies) {
      now += kMinute;
      c.add_scammer_turn(r, now);
      next_reply(c, provider, now);
    }
    return c;
  };
  // Accepting the proposed Spanish.
  auto es = run({"It's a good thing you reached out to me. What language would you prefer?",
                 "Sure that\xE2\x80\x99s won\xE2\x80\x99t be a problem"});
  EXPECT_EQ(es.language, "es");
  EXPECT_EQ(negotiate_language(es), "es");
  EXPECT_NE(text::to_lower(es.turns[2].text).find("spanish"), std::string::npos) << es.turns[2].text;
  // Declining.
  auto en = run({"hello, I can help", "No, English only please"});
  EXPECT_EQ(en.language, "english");
  // The scammer answers in German instead.
  auto de = run({"What language do you speak", "Ich spreche Deutsch. Wie kann ich Ihnen helfen?"});
  EXPECT_EQ(de.language, "de");
  EXPECT_EQ(detect_language(de.turns.back().text), "de") << de.turns.back().text;
}

TEST(Provider, ScriptedRepliesAreDeterministic) {
  ScriptedChatProvider a, b;
  const auto p = build_persona(kTrust, PersonaVariant::crypto_newcomer, 9);
  Instruction ins;
  ins.phase = Phase::ask_price;
  EXPECT_EQ(a.generate(p, {}, ins), b.generate(p, {}, ins));
  for (int ph = 0; ph <= static_cast<int>(Phase::fallback); ++ph) {
    ins.phase = static_cast<Phase>(ph);
    for (std::string lang : {"en", "es", "de", "fr", "nl"}) {
      ins.language = lang;
      const std::string out = a.generate(p, {}, ins);
      EXPECT_FALSE(out.empty()) << to_string(ins.phase) << "." << lang;
      EXPECT_EQ(out.find('{'), std::string::npos) << out;
      EXPECT_FALSE(discloses_automation(out)) << out;
    }
  }
}

TEST(Persona, NamesRoundTrip) {
  for (auto v : {PersonaVariant::crypto_newcomer, PersonaVariant::social_lockout, PersonaVariant::language_negotiator}) {
    EXPECT_EQ(parse_persona_variant(to_string(v)), v);
  }
  for (auto r : {EndReason::payment_profiles_exhausted, EndReason::scammer_silent, EndReason::redirected_external,
                 EndReason::operator_stop}) {
    EXPECT_EQ(parse_end_reason(to_string(r)), r);
  }
  EXPECT_EQ(parse_redirect_policy("claim_prior_contact"), RedirectPolicy::claim_prior_contact);
}

TEST(SafetyFuzz, InjectedDisclosuresNeverReachOutboundText) {
  // Smaller sibling of the acceptance fuzz; see tests/acceptance.
  const auto phrases = text::data_lines(embedded_data("ai_disclosure_lexicon.txt"));
  ASSERT_GT(phrases.size(), 20u);
  class Injecting : public ChatProvider {
   public:
    Injecting(std::vector<std::string> p, std::uint64_t seed) : phrases_(std::move(p)), rng_(seed) {}
    std::string generate(const PersonaConfig& persona, const std::vector<DialogueTurn>& t,
                         const Instruction& i) override {
      std::string base = inner_.generate(persona, t, i);
      std::string phrase = phrases_[rng_.below(phrases_.size())];
      if (rng_.bernoulli(0.5)) phrase[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(phrase[0])));
      switch (rng_.below(4)) {
        case 0: return phrase;
        case 1: return "Well, " + phrase + " here. " + base;
        case 2: return base + " (" + phrase + ")";
        default: return base + " " + phrase + "! " + base;
      }
    }

   private:
    std::vector<std::string> phrases_;
    Rng rng_;
    ScriptedChatProvider inner_;
  };
  const auto scripts = make_population(50, 99);
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    Injecting provider(phrases, i);
    auto c = fresh(static_cast<PersonaVariant>(i % 3), i % 2 ? kGmail : kTrust, i);
    const auto r = fixtures::drive(c, provider, scripts[i], kT0);
    for (const auto& out : r.outbound) ASSERT_FALSE(discloses_automation(out)) << out;
  }
}
