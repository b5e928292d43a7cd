#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scambait/time.hpp"

namespace scambait {

enum class EventKind {
  reply,
  quote,
  retweet,
  like,
  bookmark,
  impression,
  direct_message_in,
  direct_message_out,
  system,
};

enum class ChannelKind { x, instagram, email, simulated };

std::string_view to_string(EventKind k);
std::string_view to_string(ChannelKind k);
// Both throw std::invalid_argument on unknown names.
EventKind parse_event_kind(std::string_view s);
ChannelKind parse_channel_kind(std::string_view s);

// reply/quote/DMs carry text; retweet/like/bookmark/impression never do.
bool kind_requires_text(EventKind k);
bool kind_forbids_text(EventKind k);

struct InteractionEvent {
  std::string id;
  Timestamp ts{};
  EventKind kind = EventKind::system;
  std::string profile_id;
  std::string honeypost_id;                   // empty when not tied to a post
  std::optional<std::string> conversation_id;
  ChannelKind channel = ChannelKind::simulated;
  std::optional<std::string> text;

  bool operator==(const InteractionEvent&) const = default;
};

class EventInvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws EventInvariantError when the text presence rule or the required
// fields (id, profile_id) are violated.
void check_event(const InteractionEvent& e);

// One JSON object, no trailing newline. Keys are emitted in a fixed order so
// the serialized form is byte-stable.
std::string to_json_line(const InteractionEvent& e);
// Throws std::invalid_argument on malformed input.
InteractionEvent parse_json_line(std::string_view line);

}  // namespace scambait
