#include "scambait/event_log.hpp"

#include <sstream>

#include "scambait/text.hpp"

namespace scambait {

EventLog EventLog::open(const std::filesystem::path& path) {
  EventLog log;
  std::uintmax_t good_bytes = 0;
  if (std::filesystem::exists(path)) {
    const std::string content = text::read_file(path);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
      const std::size_t nl = content.find('\n', pos);
      ++line_no;
      if (nl == std::string::npos) break;  // unterminated tail: torn write
      const std::string_view line(content.data() + pos, nl - pos);
      if (!text::trim(line).empty()) {
        InteractionEvent e;
        try {
          e = parse_json_line(line);
        } catch (const std::invalid_argument& ex) {
          throw EventLogError(LogErrorCode::io,
                              path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
        }
        log.check(e);
        log.record(e);
      }
      pos = nl + 1;
      good_bytes = pos;
    }
    if (good_bytes != content.size()) std::filesystem::resize_file(path, good_bytes);
  }
  log.path_ = path;
  log.out_.open(path, std::ios::binary | std::ios::app);
  if (!log.out_) throw EventLogError(LogErrorCode::io, "cannot open event log " + path.string());
  return log;
}

void EventLog::check(const InteractionEvent& e) const {
  try {
    check_event(e);
  } catch (const EventInvariantError& ex) {
    throw EventLogError(LogErrorCode::invariant_violation, ex.what());
  }
  if (ids_.contains(e.id)) throw EventLogError(LogErrorCode::id_collision, "duplicate event id " + e.id);
  if (e.conversation_id) {
    auto it = last_ts_.find(*e.conversation_id);
    if (it != last_ts_.end() && e.ts < it->second) {
      throw EventLogError(LogErrorCode::out_of_order,
                          "event " + e.id + " precedes the last event of conversation " + *e.conversation_id);
    }
  }
}

void EventLog::record(const InteractionEvent& e) {
  events_.push_back(e);
  ids_.insert(e.id);
  if (e.conversation_id) last_ts_[*e.conversation_id] = e.ts;
}

std::size_t EventLog::append(const InteractionEvent& e) {
  check(e);
  if (path_) {
    out_ << to_json_line(e) << '\n';
    out_.flush();
    if (!out_) throw EventLogError(LogErrorCode::io, "write to event log " + path_->string() + " failed");
  }
  record(e);
  return events_.size() - 1;
}

std::string EventLog::serialize() const {
  std::string out;
  for (const auto& e : events_) {
    out += to_json_line(e);
    out += '\n';
  }
  return out;
}

std::vector<InteractionEvent> read_event_log(const std::filesystem::path& path) {
  std::vector<InteractionEvent> out;
  const std::string content = text::read_file(path);
  std::size_t line_no = 0;
  for (const auto& line : text::split(content, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace scambait
