#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scambait/event.hpp"
#include "scambait/time.hpp"

namespace scambait {

enum class ChannelErrorCode { rate_limited, channel_unavailable, invalid_message };

class ChannelError : public std::runtime_error {
 public:
  ChannelError(ChannelErrorCode code, const std::string& what, Millis retry_after = Millis{0})
      : std::runtime_error(what), code_(code), retry_after_(retry_after) {}
  ChannelErrorCode code() const { return code_; }
  // Meaningful for rate_limited: how long until a send would be admitted.
  Millis retry_after() const { return retry_after_; }

 private:
  ChannelErrorCode code_;
  Millis retry_after_;
};

struct RateLimit {
  int max_sends = 0;
  Millis window{0};
};

// Default per-platform send budgets.
RateLimit default_rate_limit(ChannelKind kind);

// Rolling-window counter over an injected clock.
class RateLimiter {
 public:
  explicit RateLimiter(RateLimit limit) : limit_(limit) {}
  // Records a send at `now` or returns the wait until one would be admitted.
  std::optional<Millis> try_acquire(Timestamp now);
  const RateLimit& limit() const { return limit_; }

 private:
  RateLimit limit_;
  std::deque<Timestamp> sends_;
};

struct DeliveryReceipt {
  std::string message_id;
  Timestamp sent_at{};
};

struct InboundMessage {
  std::string id;
  std::string conversation_id;
  std::string sender;
  std::string text;
  Timestamp received_at{};
};

struct OutboundMessage {
  std::string id;
  std::string conversation_id;
  std::string text;
  Timestamp sent_at{};
};

class ChannelAdapter {
 public:
  virtual ~ChannelAdapter() = default;
  virtual ChannelKind kind() const = 0;
  virtual const std::string& account_id() const = 0;
  // Throws ChannelError (rate_limited, channel_unavailable, invalid_message).
  virtual DeliveryReceipt send_message(const std::string& conversation_id, const std::string& text) = 0;
  // Messages with received_at > since, ordered, each delivered at most once.
  virtual std::vector<InboundMessage> poll_messages(Timestamp since) = 0;
};

// In-memory mailbox used by the simulation harness and tests. It can stand in
// for any platform kind so rate limits match the emulated platform.
class SimulatedChannel final : public ChannelAdapter {
 public:
  SimulatedChannel(std::string account_id, ChannelKind emulated, const Clock& clock,
                   std::optional<RateLimit> limit = std::nullopt);

  ChannelKind kind() const override { return emulated_; }
  const std::string& account_id() const override { return account_id_; }
  DeliveryReceipt send_message(const std::string& conversation_id, const std::string& text) override;
  std::vector<InboundMessage> poll_messages(Timestamp since) override;

  // Scammer side: queue a message for the engine. Ids must be unique.
  void deliver(InboundMessage msg);
  const std::vector<OutboundMessage>& outbox() const { return outbox_; }
  std::size_t pending() const;

 private:
  std::string account_id_;
  ChannelKind emulated_;
  const Clock& clock_;
  RateLimiter limiter_;
  std::vector<OutboundMessage> outbox_;
  std::multimap<Timestamp, InboundMessage> inbox_;
  std::set<std::string> seen_ids_;
  std::set<std::string> delivered_ids_;
  std::uint64_t next_out_ = 0;
};

// Placeholder for a real platform integration: configuration is accepted but
// every operation reports channel_unavailable until credentials and a client
// are wired in.
class PlatformStubAdapter final : public ChannelAdapter {
 public:
  PlatformStubAdapter(ChannelKind kind, std::string account_id, std::string credential = {});
  ChannelKind kind() const override { return kind_; }
  const std::string& account_id() const override { return account_id_; }
  DeliveryReceipt send_message(const std::string& conversation_id, const std::string& text) override;
  std::vector<InboundMessage> poll_messages(Timestamp since) override;

 private:
  ChannelKind kind_;
  std::string account_id_;
  std::string credential_;
};

}  // namespace scambait
