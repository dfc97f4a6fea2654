#include "nolr/time.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace nolr {
namespace {

// Reads exactly `width` decimal digits starting at `pos`.
int read_digits(std::string_view s, std::size_t& pos, int width) {
  if (pos + width > s.size()) throw std::invalid_argument("truncated timestamp");
  int v = 0;
  for (int i = 0; i < width; ++i) {
    char c = s[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("expected digit in timestamp");
    }
    v = v * 10 + (c - '0');
  }
  pos += width;
  return v;
}

void expect(std::string_view s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) {
    throw std::invalid_argument(std::string("expected '") + c + "' in timestamp");
  }
  ++pos;
}

}  // namespace

Timestamp parse_rfc3339(std::string_view text) {
  using namespace std::chrono;
  try {
    std::size_t pos = 0;
    int year = read_digits(text, pos, 4);
    expect(text, pos, '-');
    int month = read_digits(text, pos, 2);
    expect(text, pos, '-');
    int day = read_digits(text, pos, 2);
    if (pos >= text.size() || (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' ')) {
      throw std::invalid_argument("expected 'T' separator");
    }
    ++pos;
    int hh = read_digits(text, pos, 2);
    expect(text, pos, ':');
    int mm = read_digits(text, pos, 2);
    expect(text, pos, ':');
    int ss = read_digits(text, pos, 2);
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw std::invalid_argument("empty fractional seconds");
    }
    int offset_seconds = 0;
    if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
      ++pos;
    } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      int sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      int oh = read_digits(text, pos, 2);
      expect(text, pos, ':');
      int om = read_digits(text, pos, 2);
      if (oh > 23 || om > 59) throw std::invalid_argument("offset out of range");
      offset_seconds = sign * (oh * 3600 + om * 60);
    } else {
      throw std::invalid_argument("missing timezone designator");
    }
    if (pos != text.size()) throw std::invalid_argument("trailing characters");

    year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                       std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
    // Leap seconds (ss == 60) are not representable on sys_seconds.
    if (hh > 23 || mm > 59 || ss > 59) throw std::invalid_argument("invalid time of day");

    sys_seconds t = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
    return t - seconds{offset_seconds};
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("unparseable timestamp '" + std::string(text) + "': " + e.what());
  }
}

std::string format_rfc3339(Timestamp t) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss tod{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

}  // namespace nolr
