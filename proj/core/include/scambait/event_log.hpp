#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scambait/event.hpp"

namespace scambait {

enum class LogErrorCode { id_collision, invariant_violation, out_of_order, io };

class EventLogError : public std::runtime_error {
 public:
  EventLogError(LogErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  LogErrorCode code() const { return code_; }

 private:
  LogErrorCode code_;
};

// Append-only event sequence. When backed by a file, every append is written
// as one JSON line and flushed before returning; reopening the file replays
// the same sequence.
class EventLog {
 public:
  // In-memory log.
  EventLog() = default;
  // Opens (creating if needed) a JSON-lines file and replays what it holds.
  // A torn final line left by a crash is ignored and truncated away.
  static EventLog open(const std::filesystem::path& path);

  EventLog(EventLog&&) = default;
  EventLog& operator=(EventLog&&) = default;

  // Returns the offset of the new event. Throws EventLogError.
  std::size_t append(const InteractionEvent& e);

  const std::vector<InteractionEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool contains(const std::string& id) const { return ids_.contains(id); }

  // The log as the file would hold it.
  std::string serialize() const;

 private:
  void check(const InteractionEvent& e) const;
  void record(const InteractionEvent& e);

  std::vector<InteractionEvent> events_;
  std::set<std::string, std::less<>> ids_;
  std::map<std::string, Timestamp, std::less<>> last_ts_;  // per conversation
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
};

// Reads a JSON-lines log without opening it for append. Throws
// std::invalid_argument on a malformed line (with its line number).
std::vector<InteractionEvent> read_event_log(const std::filesystem::path& path);

}  // namespace scambait
