#ifndef TWEETSENT_COMMON_HPP
#define TWEETSENT_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsent {

// Exit-code mapping used by the CLI: UsageError -> 1, DataError -> 2,
// NumericError -> 3.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t state = 0xcbf29ce484222325ull);

// All randomness flows from one master seed through named sub-seeds
// (split, init, shuffle, dropout, ...).
std::uint64_t derive_seed(std::uint64_t master, std::string_view name);

// Lenient UTF-8 decoding: invalid sequences decode to U+FFFD, one
// replacement per bad byte.
std::vector<char32_t> decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

std::string to_lower_ascii(std::string_view s);

// "U+1F600" <-> codepoint
std::string codepoint_to_string(char32_t cp);
char32_t codepoint_from_string(std::string_view s);

// UTC timestamps are kept as seconds since the Unix epoch.
// Accepted input forms: "YYYY-MM-DD", "YYYY-MM-DD HH:MM:SS",
// "YYYY-MM-DDTHH:MM:SS[Z]", and raw integer seconds.
std::int64_t parse_timestamp(std::string_view s);
std::string format_timestamp(std::int64_t epoch_seconds);

}  // namespace tweetsent

#endif
