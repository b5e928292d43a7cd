#include "scambait/channels.hpp"

#include <cstdio>

#include "scambait/text.hpp"

namespace scambait {

RateLimit default_rate_limit(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::x:
      return {20, 15 * kMinute};
    case ChannelKind::instagram:
      return {20, kHour};
    case ChannelKind::email:
      return {50, kHour};
    case ChannelKind::simulated:
      break;
  }
  return {1000, kHour};
}

std::optional<Millis> RateLimiter::try_acquire(Timestamp now) {
  while (!sends_.empty() && sends_.front() + limit_.window <= now) sends_.pop_front();
  if (limit_.max_sends <= 0) return limit_.window;
  if (static_cast<int>(sends_.size()) >= limit_.max_sends) return sends_.front() + limit_.window - now;
  sends_.push_back(now);
  return std::nullopt;
}

SimulatedChannel::SimulatedChannel(std::string account_id, ChannelKind emulated, const Clock& clock,
                                   std::optional<RateLimit> limit)
    : account_id_(std::move(account_id)),
      emulated_(emulated),
      clock_(clock),
      limiter_(limit.value_or(default_rate_limit(emulated))) {}

DeliveryReceipt SimulatedChannel::send_message(const std::string& conversation_id, const std::string& msg) {
  if (text::trim(msg).empty()) throw ChannelError(ChannelErrorCode::invalid_message, "empty message");
  const Timestamp now = clock_.now();
  if (auto wait = limiter_.try_acquire(now)) {
    throw ChannelError(ChannelErrorCode::rate_limited, account_id_ + " is rate limited", *wait);
  }
  char id[64];
  std::snprintf(id, sizeof id, "%s/out/%llu", account_id_.c_str(), static_cast<unsigned long long>(next_out_++));
  outbox_.push_back({id, conversation_id, msg, now});
  return {id, now};
}

void SimulatedChannel::deliver(InboundMessage msg) {
  if (!seen_ids_.insert(msg.id).second) return;  // duplicate delivery from the far side
  inbox_.emplace(msg.received_at, std::move(msg));
}

std::vector<InboundMessage> SimulatedChannel::poll_messages(Timestamp since) {
  std::vector<InboundMessage> out;
  const Timestamp now = clock_.now();
  for (auto it = inbox_.upper_bound(since); it != inbox_.end() && it->first <= now; ++it) {
    if (delivered_ids_.insert(it->second.id).second) out.push_back(it->second);
  }
  return out;
}

std::size_t SimulatedChannel::pending() const {
  std::size_t n = 0;
  for (const auto& [ts, m] : inbox_) n += delivered_ids_.contains(m.id) ? 0 : 1;
  return n;
}

PlatformStubAdapter::PlatformStubAdapter(ChannelKind kind, std::string account_id, std::string credential)
    : kind_(kind), account_id_(std::move(account_id)), credential_(std::move(credential)) {}

DeliveryReceipt PlatformStubAdapter::send_message(const std::string&, const std::string&) {
  throw ChannelError(ChannelErrorCode::channel_unavailable,
                     std::string(to_string(kind_)) + " adapter is not connected" +
                         (credential_.empty() ? " (no credentials configured)" : ""));
}

std::vector<InboundMessage> PlatformStubAdapter::poll_messages(Timestamp) {
  throw ChannelError(ChannelErrorCode::channel_unavailable, std::string(to_string(kind_)) + " adapter is not connected");
}

}  // namespace scambait
