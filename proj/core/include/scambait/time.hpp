#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace scambait {

// All campaign time is UTC with millisecond resolution.
using Millis = std::chrono::milliseconds;
using Timestamp = std::chrono::sys_time<Millis>;

inline constexpr Millis kSecond{1000};
inline constexpr Millis kMinute{60 * 1000};
inline constexpr Millis kHour{60 * 60 * 1000};
inline constexpr Millis kDay{24 * 60 * 60 * 1000};

constexpr Timestamp from_epoch_ms(std::int64_t ms) { return Timestamp{Millis{ms}}; }
constexpr std::int64_t to_epoch_ms(Timestamp t) { return t.time_since_epoch().count(); }

// "2023-11-20T08:15:00.000Z"
std::string format_iso8601(Timestamp t);

// Accepts "YYYY-MM-DDTHH:MM:SS[.fff]Z" (a trailing "+00:00" is also accepted).
// Throws std::invalid_argument on anything else.
Timestamp parse_iso8601(std::string_view text);

// Days since 1970-01-01 (UTC calendar day index, floor for negative times).
std::int64_t utc_day_index(Timestamp t);

// ISO weekday of the UTC calendar day: 0 = Monday ... 6 = Sunday.
int utc_weekday(Timestamp t);

std::string_view weekday_name(int iso_weekday);

// "2d 6:16:36" when at least one day, otherwise "0:33:09". Sub-second parts
// are truncated.
std::string format_duration(Millis d);

// Time source. Simulation and tests inject a SimClock; nothing under test reads
// the wall clock.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

class SimClock final : public Clock {
 public:
  explicit SimClock(Timestamp start = Timestamp{}) : now_(start) {}

  Timestamp now() const override { return now_; }
  void set(Timestamp t);
  void advance(Millis d);

 private:
  Timestamp now_;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() const override;
};

}  // namespace scambait
