#include "scambait/time.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace scambait {
namespace {

// Civil-from-days / days-from-civil (proleptic Gregorian), valid over the
// whole int64 day range we care about.
struct Civil {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {m <= 2 ? y + 1 : y, m, d};
}

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos + len > text.size()) throw std::invalid_argument("timestamp too short");
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
  if (ec != std::errc{} || ptr != text.data() + pos + len) {
    throw std::invalid_argument("malformed timestamp field in '" + std::string(text) + "'");
  }
  return value;
}

void expect_char(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw std::invalid_argument("malformed timestamp '" + std::string(text) + "'");
  }
}

}  // namespace

std::string format_iso8601(Timestamp t) {
  const std::int64_t ms = to_epoch_ms(t);
  const std::int64_t day = floor_div(ms, kDay.count());
  const std::int64_t in_day = ms - day * kDay.count();
  const Civil c = civil_from_days(day);
  const auto h = static_cast<int>(in_day / kHour.count());
  const auto mi = static_cast<int>((in_day / kMinute.count()) % 60);
  const auto s = static_cast<int>((in_day / 1000) % 60);
  const auto frac = static_cast<int>(in_day % 1000);
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<long long>(c.year), c.month, c.day, h, mi, s, frac);
  return buf.data();
}

Timestamp parse_iso8601(std::string_view text) {
  const int year = parse_fixed(text, 0, 4);
  expect_char(text, 4, '-');
  const int month = parse_fixed(text, 5, 2);
  expect_char(text, 7, '-');
  const int day = parse_fixed(text, 8, 2);
  expect_char(text, 10, 'T');
  const int hour = parse_fixed(text, 11, 2);
  expect_char(text, 13, ':');
  const int minute = parse_fixed(text, 14, 2);
  expect_char(text, 16, ':');
  const int second = parse_fixed(text, 17, 2);
  std::size_t pos = 19;
  int millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    const std::size_t digits = end - pos - 1;
    if (digits == 0) throw std::invalid_argument("empty fractional seconds");
    // Keep millisecond precision; extra digits are truncated.
    int scale = 100;
    for (std::size_t i = pos + 1; i < end && scale > 0; ++i, scale /= 10) {
      millis += (text[i] - '0') * scale;
    }
    pos = end;
  }
  const std::string_view zone = text.substr(pos);
  if (zone != "Z" && zone != "+00:00") {
    throw std::invalid_argument("timestamp must be UTC: '" + std::string(text) + "'");
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60) {
    throw std::invalid_argument("timestamp field out of range: '" + std::string(text) + "'");
  }
  const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  const std::int64_t ms = days * kDay.count() + hour * kHour.count() + minute * kMinute.count() +
                          second * 1000LL + millis;
  return from_epoch_ms(ms);
}

std::int64_t utc_day_index(Timestamp t) { return floor_div(to_epoch_ms(t), kDay.count()); }

int utc_weekday(Timestamp t) {
  // 1970-01-01 was a Thursday (ISO index 3).
  const std::int64_t d = utc_day_index(t);
  const std::int64_t w = (d % 7 + 7 + 3) % 7;
  return static_cast<int>(w);
}

std::string_view weekday_name(int iso_weekday) {
  static constexpr std::array<std::string_view, 7> names = {"Mon", "Tue", "Wed", "Thu",
                                                             "Fri", "Sat", "Sun"};
  if (iso_weekday < 0 || iso_weekday > 6) throw std::out_of_range("weekday index");
  return names[static_cast<std::size_t>(iso_weekday)];
}

std::string format_duration(Millis d) {
  const bool negative = d.count() < 0;
  std::int64_t total = (negative ? -d.count() : d.count()) / 1000;
  const std::int64_t days = total / 86400;
  total %= 86400;
  std::array<char, 48> buf{};
  if (days > 0) {
    std::snprintf(buf.data(), buf.size(), "%s%lldd %lld:%02lld:%02lld", negative ? "-" : "",
                  static_cast<long long>(days), static_cast<long long>(total / 3600),
                  static_cast<long long>((total / 60) % 60), static_cast<long long>(total % 60));
  } else {
    std::snprintf(buf.data(), buf.size(), "%s%lld:%02lld:%02lld", negative ? "-" : "",
                  static_cast<long long>(total / 3600), static_cast<long long>((total / 60) % 60),
                  static_cast<long long>(total % 60));
  }
  return buf.data();
}

void SimClock::set(Timestamp t) {
  if (t < now_) throw std::logic_error("SimClock cannot move backwards");
  now_ = t;
}

void SimClock::advance(Millis d) {
  if (d.count() < 0) throw std::logic_error("SimClock cannot move backwards");
  now_ += d;
}

Timestamp SystemClock::now() const {
  return std::chrono::time_point_cast<Millis>(std::chrono::system_clock::now());
}

}  // namespace scambait
