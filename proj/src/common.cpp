#include "tweetsent/common.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace tweetsent {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ull;
  }
  return state;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view name) {
  std::uint64_t h = fnv1a64(name);
  h ^= master + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  // splitmix64 finalizer to decorrelate nearby masters
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      out.push_back(c);
      ++i;
      continue;
    }
    int extra;
    char32_t cp;
    if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + static_cast<std::size_t>(extra) >= n) {
      // truncated sequence
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    char32_t acc = cp;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      acc = (acc << 6) | (cc & 0x3F);
    }
    if (!ok || acc > 0x10FFFF) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(acc);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string codepoint_to_string(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

char32_t codepoint_from_string(std::string_view s) {
  if (s.size() > 2 && (s[0] == 'U' || s[0] == 'u') && s[1] == '+') {
    s.remove_prefix(2);
  }
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value > 0x10FFFF) {
    throw DataError("invalid codepoint literal: " + std::string(s));
  }
  return static_cast<char32_t>(value);
}

namespace {

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::int64_t parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw DataError("empty timestamp");

  // bare integer -> epoch seconds
  {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
  }

  if (s.size() < 10 || s[4] != '-' || s[7] != '-') {
    throw DataError("unrecognized timestamp: " + std::string(s));
  }
  int y, mo, d;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), mo) ||
      !parse_int(s.substr(8, 2), d)) {
    throw DataError("unrecognized timestamp: " + std::string(s));
  }
  int hh = 0, mi = 0, ss = 0;
  if (s.size() > 10) {
    if ((s[10] != 'T' && s[10] != ' ') || s.size() < 19 || s[13] != ':' ||
        s[16] != ':') {
      throw DataError("unrecognized timestamp: " + std::string(s));
    }
    if (!parse_int(s.substr(11, 2), hh) || !parse_int(s.substr(14, 2), mi) ||
        !parse_int(s.substr(17, 2), ss)) {
      throw DataError("unrecognized timestamp: " + std::string(s));
    }
    // trailing "Z" or UTC offset "+00:00" accepted, other offsets rejected
    std::string_view rest = s.substr(19);
    if (!rest.empty() && rest != "Z" && rest != "+00:00" && rest != "+0000") {
      throw DataError("non-UTC timestamp offset: " + std::string(s));
    }
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw DataError("invalid calendar date: " + std::string(s));
  sys_days days{ymd};
  return duration_cast<seconds>(days.time_since_epoch()).count() +
         hh * 3600 + mi * 60 + ss;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  sys_seconds tp{seconds{epoch_seconds}};
  sys_days dp = floor<days>(tp);
  year_month_day ymd{dp};
  auto tod = tp - dp;
  int hh = static_cast<int>(duration_cast<hours>(tod).count());
  int mi = static_cast<int>(duration_cast<minutes>(tod).count() % 60);
  int ss = static_cast<int>(duration_cast<seconds>(tod).count() % 60);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), hh, mi, ss);
  return buf;
}

}  // namespace tweetsent
