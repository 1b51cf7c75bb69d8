#ifndef TWEETSENT_PREPROCESS_HPP
#define TWEETSENT_PREPROCESS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tweetsent/ingest.hpp"

namespace tweetsent {

// Frozen 179-entry English stop-word list. The bundled data file
// (data/stopwords_en.txt, one token per line, '#' comments) carries the
// same entries as builtin(); a test keeps the two in sync.
class Stopwords {
 public:
  static const Stopwords& builtin();
  static Stopwords load(const std::filesystem::path& path);

  bool contains(std::string_view token) const {
    return words_.count(std::string(token)) > 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct CodepointRange {
  char32_t lo;
  char32_t hi;  // inclusive
};

// Default emoticon ranges: Misc Symbols & Pictographs through Symbols
// Extended-A, plus Misc Symbols / Dingbats.
inline constexpr CodepointRange kDefaultEmoticonRanges[] = {
    {0x1F300, 0x1FAFF},
    {0x2600, 0x27BF},
};

// Every codepoint of `text` inside the configured ranges, in text order,
// duplicates preserved. Runs on the original text: cleaning destroys
// non-ASCII characters.
std::vector<char32_t> extract_emoticons(
    std::string_view text,
    std::span<const CodepointRange> ranges = kDefaultEmoticonRanges);

struct CleaningReport {
  std::size_t mentions_removed = 0;
  std::size_t non_ascii_runs_replaced = 0;
  std::size_t stopwords_removed = 0;
  std::size_t emoticons_extracted = 0;
};

struct CleanResult {
  std::string cleaned_text;
  std::vector<std::string> tokens;
  CleaningReport report;
};

// The cleaning steps, individually exposed so tests can exercise ordering.

// Step 1: drop @-mentions ('@' + >=1 word character, maximal) and every
// ':' character.
std::string strip_mentions_and_colons(std::string_view text,
                                      std::size_t* mentions_removed = nullptr);

// Step 2: replace each maximal run of codepoints > U+007F with one space.
std::string replace_non_ascii_runs(std::string_view text,
                                   std::size_t* runs_replaced = nullptr);

// Step 3: split on ASCII whitespace/control characters and lowercase.
std::vector<std::string> tokenize_lower(std::string_view ascii_text);

// Step 4: drop stop-words, strip leading/trailing ASCII punctuation, drop
// tokens that become empty or turn into stop-words.
std::vector<std::string> filter_tokens(std::vector<std::string> tokens,
                                       const Stopwords& stopwords,
                                       std::size_t* stopwords_removed = nullptr);

// Steps 1-5 composed; idempotent on its own cleaned output.
CleanResult clean_tweet(std::string_view text,
                        const Stopwords& stopwords = Stopwords::builtin());

struct PreprocessOptions {
  const Stopwords* stopwords = nullptr;  // builtin() when null
  std::vector<CodepointRange> emoticon_ranges{
      std::begin(kDefaultEmoticonRanges), std::end(kDefaultEmoticonRanges)};
};

struct PreprocessSummary {
  std::size_t records = 0;
  std::size_t empty_cleaned = 0;  // kept, but flagged here
  CleaningReport totals;
};

// Populates cleaned_text and emoticons on every record, in place,
// preserving order. Pure per-record transformation.
PreprocessSummary preprocess_corpus(std::vector<TweetRecord>& records,
                                    const PreprocessOptions& options = {});

}  // namespace tweetsent

#endif
