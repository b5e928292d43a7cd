#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "scambait/channels.hpp"
#include "scambait/simscammer.hpp"

using namespace scambait;

namespace {

const Timestamp kStart = parse_iso8601("2023-11-20T09:00:00Z");

InboundMessage msg(std::string id, Timestamp at, std::string text = "hi") {
  return {std::move(id), "cv-1", "scammer", std::move(text), at};
}

}  // namespace

TEST(Channels, DefaultRateLimits) {
  EXPECT_EQ(default_rate_limit(ChannelKind::x).max_sends, 20);
  EXPECT_EQ(default_rate_limit(ChannelKind::x).window, 15 * kMinute);
  EXPECT_EQ(default_rate_limit(ChannelKind::instagram).window, kHour);
  EXPECT_EQ(default_rate_limit(ChannelKind::email).max_sends, 50);
}

TEST(Channels, SendUsesTheSimulatedClock) {
  SimClock clock(kStart);
  SimulatedChannel ch("acct", ChannelKind::simulated, clock);
  const auto r = ch.send_message("cv-1", "Hello, I need help");
  EXPECT_EQ(r.sent_at, kStart);
  ASSERT_EQ(ch.outbox().size(), 1u);
  EXPECT_EQ(ch.outbox()[0].text, "Hello, I need help");
  EXPECT_EQ(ch.outbox()[0].conversation_id, "cv-1");
}

TEST(Channels, SixthSendInFivePerWindowIsRateLimited) {
  SimClock clock(kStart);
  SimulatedChannel ch("acct", ChannelKind::x, clock, RateLimit{5, 15 * kMinute});
  for (int i = 0; i < 5; ++i) {
    ch.send_message("cv", "m");
    clock.advance(kMinute);
  }
  try {
    ch.send_message("cv", "m");
    FAIL() << "expected rate_limited";
  } catch (const ChannelError& e) {
    EXPECT_EQ(e.code(), ChannelErrorCode::rate_limited);
    // Oldest send at t0 leaves the window at t0+15m; now is t0+5m.
    EXPECT_EQ(e.retry_after(), 10 * kMinute);
  }
  clock.advance(10 * kMinute);
  EXPECT_NO_THROW(ch.send_message("cv", "m"));
}

TEST(Channels, EmptyMessageIsInvalid) {
  SimClock clock(kStart);
  SimulatedChannel ch("acct", ChannelKind::email, clock);
  try {
    ch.send_message("cv", "   ");
    FAIL();
  } catch (const ChannelError& e) {
    EXPECT_EQ(e.code(), ChannelErrorCode::invalid_message);
  }
}

TEST(Channels, StubAdapterIsUnavailable) {
  PlatformStubAdapter a(ChannelKind::instagram, "persona_ig_1");
  try {
    a.send_message("cv", "hello");
    FAIL();
  } catch (const ChannelError& e) {
    EXPECT_EQ(e.code(), ChannelErrorCode::channel_unavailable);
  }
  EXPECT_THROW(a.poll_messages(kStart), ChannelError);
  EXPECT_EQ(a.kind(), ChannelKind::instagram);
}

TEST(Channels, PollOrdersAndHidesFutureMessages) {
  SimClock clock(kStart);
  SimulatedChannel ch("acct", ChannelKind::simulated, clock);
  EXPECT_TRUE(ch.poll_messages(Timestamp::min()).empty());
  ch.deliver(msg("b", kStart + 2 * kMinute));
  ch.deliver(msg("a", kStart + kMinute));
  ch.deliver(msg("c", kStart + kHour));
  clock.advance(5 * kMinute);
  const auto got = ch.poll_messages(Timestamp::min());
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].id, "a");
  EXPECT_EQ(got[1].id, "b");
  EXPECT_EQ(ch.pending(), 1u);
}

TEST(Channels, ScriptedConversationIsDeliveredExactlyOnce) {
  // A scammer script answering twenty persona lines; replies are queued as
  // they are produced and polled both incrementally and from the start.
  SimClock clock(kStart);
  SimulatedChannel ch("acct", ChannelKind::simulated, clock);
  const SimScammerScript script = fixtures::three_method_script();
  SimState state;
  std::vector<std::string> produced;
  Timestamp t = kStart;
  const char* persona_lines[] = {"Hello, I need help with my wallet", "My address is 0x12...", "It is stuck",
                                 "How much is it?", "Where do I send it?", "The payment failed, another way?"};
  int turn = 0;
  for (int i = 0; produced.size() < 20 && i < 500; ++i, ++turn) {
    if (state.stage == SimStage::gone) {
      state = SimState{};  // the next conversation with the same script
      turn = 0;
    }
    const std::string_view line = persona_lines[std::min(turn, 5)];
    SimClock at(t);
    const ScammerReply r = scammer_step(script, state, line, at);
    state = r.state;
    t = r.at;
    if (!r.text) continue;
    const std::string id = "in-" + std::to_string(produced.size());
    produced.push_back(id);
    ch.deliver(msg(id, r.at, *r.text));
    ch.deliver(msg(id, r.at, *r.text));  // duplicate from the far side is ignored
  }
  ASSERT_EQ(produced.size(), 20u);

  std::map<std::string, int> seen;
  Timestamp since = Timestamp::min();
  while (clock.now() <= t) {
    for (const auto& m : ch.poll_messages(since)) {
      ++seen[m.id];
      since = m.received_at;
    }
    // Re-polling from the beginning must not repeat anything.
    for (const auto& m : ch.poll_messages(Timestamp::min())) ++seen[m.id];
    clock.advance(7 * kMinute);
  }
  for (const auto& m : ch.poll_messages(Timestamp::min())) ++seen[m.id];
  EXPECT_EQ(seen.size(), produced.size());
  for (const auto& id : produced) EXPECT_EQ(seen[id], 1) << id;
  EXPECT_EQ(ch.pending(), 0u);
}
