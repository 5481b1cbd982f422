#include "crdiff/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace crdiff {

namespace {

[[noreturn]] void bad_time(std::string_view text, std::string_view why) {
  throw DataError("invalid timestamp '" + std::string(text) + "': " + std::string(why));
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool digits(std::size_t n, int& value) {
    if (pos_ + n > s_.size()) return false;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + pos_ + n, value);
    if (ec != std::errc{} || ptr != s_.data() + pos_ + n) return false;
    pos_ += n;
    return true;
  }
  void skip_digits() {
    while (!done() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

TimeStamp parse_timestamp(std::string_view text) {
  if (text.empty()) bad_time(text, "empty");

  std::int64_t epoch = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), epoch);
  if (ec == std::errc{} && ptr == text.data() + text.size()) {
    if (epoch < 0) bad_time(text, "negative epoch seconds");
    return TimeStamp{epoch};
  }

  using namespace std::chrono;
  Cursor cur(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!cur.digits(4, y) || !cur.accept('-') || !cur.digits(2, mo) || !cur.accept('-') || !cur.digits(2, d)) {
    bad_time(text, "expected YYYY-MM-DD");
  }
  int offset_minutes = 0;
  if (!cur.done()) {
    if (!cur.accept('T') && !cur.accept(' ')) bad_time(text, "expected 'T' after date");
    if (!cur.digits(2, h) || !cur.accept(':') || !cur.digits(2, mi)) bad_time(text, "expected HH:MM");
    if (cur.accept(':') && !cur.digits(2, sec)) bad_time(text, "expected seconds");
    if (cur.accept('.')) cur.skip_digits();
    if (!cur.accept('Z') && (cur.peek() == '+' || cur.peek() == '-')) {
      const int sign = cur.peek() == '-' ? -1 : 1;
      cur.accept(cur.peek());
      int oh = 0, om = 0;
      if (!cur.digits(2, oh)) bad_time(text, "bad UTC offset");
      cur.accept(':');
      if (!cur.digits(2, om)) bad_time(text, "bad UTC offset");
      offset_minutes = sign * (oh * 60 + om);
    }
    if (!cur.done()) bad_time(text, "trailing characters");
  }
  if (h > 23 || mi > 59 || sec > 60) bad_time(text, "time of day out of range");

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad_time(text, "no such date");
  const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
  const std::int64_t seconds =
      static_cast<std::int64_t>(days_since_epoch) * 86400 + h * 3600 + mi * 60 + sec - offset_minutes * 60;
  if (seconds < 0) bad_time(text, "before the Unix epoch");
  return TimeStamp{seconds};
}

std::string format_iso8601(TimeStamp t) {
  using namespace std::chrono;
  const sys_seconds tp{seconds{t.seconds}};
  const auto day_point = floor<days>(tp);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{tp - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

}  // namespace crdiff
