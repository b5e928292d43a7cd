#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "scambait/payextract.hpp"
#include "scambait/text.hpp"

using namespace scambait;

namespace {

std::string render(const std::vector<PaymentProfile>& ps) {
  if (ps.empty()) return "-";
  std::vector<std::string> parts;
  for (const auto& p : ps) {
    parts.push_back(std::string(to_string(p.kind)) + "|" + p.identifier + "|" + (p.amount ? p.amount->to_string() : "") +
                    "|" + (p.ff_flag ? "1" : "0") + "|" + std::string(to_string(p.validity)));
  }
  return text::join(parts, ";");
}

}  // namespace

TEST(Decimal, ParseAndNormalize) {
  EXPECT_EQ(Decimal::parse("100.50").to_string(), "100.5");
  EXPECT_EQ(Decimal::parse("1,234.50"), Decimal(12345, 1));
  EXPECT_EQ(Decimal::parse("0.005").to_string(), "0.005");
  EXPECT_EQ(Decimal::parse("300").to_string(), "300");
  EXPECT_THROW(Decimal::parse("1.2.3"), std::invalid_argument);
  EXPECT_THROW(Decimal::parse(""), std::invalid_argument);
  EXPECT_THROW(Decimal::parse("99999999999999999999"), std::invalid_argument);
}

TEST(Payextract, PriceExamples) {
  EXPECT_EQ(extract_price("it's gonna cost you some bucks bro ... $100"),
            (std::vector<Money>{{Decimal::from_int(100), "USD"}}));
  EXPECT_EQ(extract_price("Te costará 300 dólares"), (std::vector<Money>{{Decimal::from_int(300), "USD"}}));
  EXPECT_EQ(extract_price("send 0.005 BTC"), (std::vector<Money>{{Decimal(5, 3), "BTC"}}));
  EXPECT_TRUE(extract_price("no charge at all").empty());
  EXPECT_EQ(extract_price("$100 USD, that is $100"), (std::vector<Money>{{Decimal::from_int(100), "USD"}}));
  EXPECT_EQ(extract_price("50 Euro").front().currency, "EUR");
  EXPECT_EQ(extract_price("20 credits").front().currency, "UNK");
  EXPECT_TRUE(extract_price("it takes 30mins").empty());
}

TEST(Payextract, SpecExample) {
  const auto ps = extract_payment_profiles("Send $100 via PayPal to ear**_22@yahoo.com, family and friends only", 4);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].kind, PaymentKind::paypal);
  EXPECT_EQ(ps[0].identifier, "ear**_22@yahoo.com");
  EXPECT_EQ(ps[0].amount, (Money{Decimal::from_int(100), "USD"}));
  EXPECT_TRUE(ps[0].ff_flag);
  EXPECT_EQ(ps[0].source_turn, 4);
  EXPECT_TRUE(extract_payment_profiles("", 0).empty());
}

TEST(Payextract, FortyTurnCorpusMatchesLabels) {
  const auto rows = fixtures::tsv("payment_turns.tsv");
  ASSERT_EQ(rows.size(), 40u);
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(render(extract_payment_profiles(r[0], 0)), r[1]) << r[0];
  }
}

TEST(Payextract, InvariantsOverCorpus) {
  for (const auto& r : fixtures::tsv("payment_turns.tsv")) {
    const std::string lower = text::to_lower(r[0]);
    for (const auto& p : extract_payment_profiles(r[0], 0)) {
      if (p.kind == PaymentKind::crypto_btc || p.kind == PaymentKind::crypto_eth) {
        EXPECT_NE(p.validity, Validity::unknown) << p.identifier;
      }
      if (p.ff_flag) EXPECT_EQ(p.kind, PaymentKind::paypal);
      if (p.amount) EXPECT_TRUE(p.amount->amount.positive());
      EXPECT_NE(lower.find(text::to_lower(p.identifier)), std::string::npos) << p.identifier;
    }
  }
}

TEST(Payextract, InsensitiveToPunctuationAndLineBreaks) {
  const std::string plain = "pay 0.01 btc to 3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy";
  const auto base = extract_payment_profiles(plain, 2);
  for (const std::string variant : {"pay 0.01 btc to:\n3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy.",
                                    "pay 0.01 btc to \"3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy\"!",
                                    "pay 0.01 btc\r\nto (3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy)"}) {
    EXPECT_EQ(extract_payment_profiles(variant, 2), base) << variant;
  }
}

TEST(Payextract, ContextCarriesPriceAndRailAcrossTurns) {
  PaymentContext ctx;
  EXPECT_TRUE(extract_payment_profiles("$100 Can you send the payment through bitcoin?", 13, &ctx).empty());
  EXPECT_TRUE(extract_payment_profiles("Okay, PayPal is cool.", 15, &ctx).empty());
  const auto ps = extract_payment_profiles("*****@mail.com", 21, &ctx);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].kind, PaymentKind::paypal);
  EXPECT_EQ(ps[0].amount, (Money{Decimal::from_int(100), "USD"}));
  // Without the context a bare email is not a payment rail.
  EXPECT_TRUE(extract_payment_profiles("*****@mail.com", 21).empty());
}

TEST(Payextract, EnglishDialogueYieldsThePaypalProfile) {
  const auto t = fixtures::dialogue("wallet_dialogue_en.tsv", fixtures::at("2023-12-01T10:00:00Z"));
  PaymentContext ctx;
  std::vector<PaymentProfile> all;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    if (t.turns[i].author != Author::scammer) continue;
    for (auto& p : extract_payment_profiles(t.turns[i].text, static_cast<int>(i), &ctx)) all.push_back(p);
  }
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].kind, PaymentKind::paypal);
  EXPECT_EQ(all[0].identifier, "*****@mail.com");
  EXPECT_EQ(all[0].amount, (Money{Decimal::from_int(100), "USD"}));
  EXPECT_EQ(all[0].source_turn, 21);
  EXPECT_FALSE(all[0].ff_flag);
}

TEST(Payextract, SpanishAndGermanDialogues) {
  auto scan = [](const std::string& name) {
    const auto t = fixtures::dialogue(name, fixtures::at("2023-12-01T10:00:00Z"));
    PaymentContext ctx;
    std::vector<PaymentProfile> all;
    for (std::size_t i = 0; i < t.turns.size(); ++i) {
      if (t.turns[i].author != Author::scammer) continue;
      for (auto& p : extract_payment_profiles(t.turns[i].text, static_cast<int>(i), &ctx)) all.push_back(p);
    }
    return all;
  };
  const auto es = scan("wallet_dialogue_es.tsv");
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].identifier, "ear**_22@yahoo.com");
  EXPECT_EQ(es[0].amount, (Money{Decimal::from_int(300), "USD"}));
  const auto de = scan("wallet_dialogue_de.tsv");
  // The scammer hands out a second F&F address later in the conversation.
  ASSERT_EQ(de.size(), 2u);
  EXPECT_EQ(de[0].identifier, "mar***3@gmail.com");
  EXPECT_TRUE(de[0].ff_flag);
  EXPECT_EQ(de[0].amount, (Money{Decimal::from_int(200), "USD"}));
  EXPECT_EQ(de[1].identifier, "anthony***riy@daole1.net");
  EXPECT_TRUE(de[1].ff_flag);
}
