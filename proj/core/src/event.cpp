#include "scambait/event.hpp"

#include <json.hpp>

namespace scambait {
namespace {

constexpr std::string_view kEventNames[] = {
    "reply", "quote", "retweet", "like", "bookmark", "impression", "direct_message_in", "direct_message_out", "system",
};
constexpr std::string_view kChannelNames[] = {"x", "instagram", "email", "simulated"};

}  // namespace

std::string_view to_string(EventKind k) { return kEventNames[static_cast<int>(k)]; }
std::string_view to_string(ChannelKind k) { return kChannelNames[static_cast<int>(k)]; }

EventKind parse_event_kind(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kEventNames); ++i) {
    if (kEventNames[i] == s) return static_cast<EventKind>(i);
  }
  throw std::invalid_argument("unknown event kind: " + std::string(s));
}

ChannelKind parse_channel_kind(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kChannelNames); ++i) {
    if (kChannelNames[i] == s) return static_cast<ChannelKind>(i);
  }
  throw std::invalid_argument("unknown channel kind: " + std::string(s));
}

bool kind_requires_text(EventKind k) {
  return k == EventKind::reply || k == EventKind::quote || k == EventKind::direct_message_in ||
         k == EventKind::direct_message_out;
}

bool kind_forbids_text(EventKind k) {
  return k == EventKind::retweet || k == EventKind::like || k == EventKind::bookmark || k == EventKind::impression;
}

void check_event(const InteractionEvent& e) {
  if (e.id.empty()) throw EventInvariantError("event without id");
  if (e.profile_id.empty()) throw EventInvariantError("event " + e.id + " without profile_id");
  if (kind_requires_text(e.kind) && !e.text) {
    throw EventInvariantError("event " + e.id + ": " + std::string(to_string(e.kind)) + " requires text");
  }
  if (kind_forbids_text(e.kind) && e.text) {
    throw EventInvariantError("event " + e.id + ": " + std::string(to_string(e.kind)) + " must not carry text");
  }
}

std::string to_json_line(const InteractionEvent& e) {
  // ordered_json keeps insertion order, which makes the log diff-friendly.
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["ts"] = format_iso8601(e.ts);
  j["kind"] = to_string(e.kind);
  j["profile_id"] = e.profile_id;
  if (!e.honeypost_id.empty()) j["honeypost_id"] = e.honeypost_id;
  if (e.conversation_id) j["conversation_id"] = *e.conversation_id;
  j["channel"] = to_string(e.channel);
  if (e.text) j["text"] = *e.text;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

InteractionEvent parse_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("bad event record: ") + err.what());
  }
  if (!j.is_object()) throw std::invalid_argument("event record is not an object");
  try {
    InteractionEvent e;
    e.id = j.at("id").get<std::string>();
    e.ts = parse_iso8601(j.at("ts").get<std::string>());
    e.kind = parse_event_kind(j.at("kind").get<std::string>());
    e.profile_id = j.at("profile_id").get<std::string>();
    if (j.contains("honeypost_id")) e.honeypost_id = j["honeypost_id"].get<std::string>();
    if (j.contains("conversation_id")) e.conversation_id = j["conversation_id"].get<std::string>();
    e.channel = parse_channel_kind(j.at("channel").get<std::string>());
    if (j.contains("text")) e.text = j["text"].get<std::string>();
    return e;
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("bad event record: ") + err.what());
  }
}

}  // namespace scambait
