#ifndef TWEETSENT_INGEST_HPP
#define TWEETSENT_INGEST_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tweetsent/emoticons.hpp"

namespace tweetsent {

struct TweetRecord {
  std::string tweet_id;
  std::int64_t time_utc = 0;  // seconds since the Unix epoch
  std::string original_text;
  std::optional<std::string> cleaned_text;
  std::string user_name;
  std::string user_location;
  std::optional<std::string> country;  // ISO-3166 alpha-2
  std::optional<std::vector<char32_t>> emoticons;
  std::optional<double> subjectivity;  // pass-through, never computed

  bool operator==(const TweetRecord&) const = default;
};

struct LabeledPolarityRecord {
  std::string text;
  Polarity polarity = Polarity::Negative;

  bool operator==(const LabeledPolarityRecord&) const = default;
};

struct LabeledEmotionRecord {
  std::string text;
  Emotion emotion = Emotion::Joy;

  bool operator==(const LabeledEmotionRecord&) const = default;
};

// Per-line recoverable parse error. `line` is 1-based.
struct ParseIssue {
  std::size_t line;
  std::string message;
};

struct ParseStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<ParseIssue> issues;  // capped at kMaxIssues, count in rejected

  static constexpr std::size_t kMaxIssues = 100;
  void reject(std::size_t line, std::string message);
};

using PolaritySink = std::function<void(LabeledPolarityRecord&&)>;
using EmotionSink = std::function<void(LabeledEmotionRecord&&)>;
using TweetSink = std::function<void(TweetRecord&&)>;

// Sentiment140: 6 quoted CSV fields per line
// (code, id, date, query, user, text), code 0 -> Negative, 4 -> Positive.
// Streaming; sinks are invoked in input order.
ParseStats parse_sentiment140(const std::filesystem::path& path,
                              const PolaritySink& sink);
ParseStats parse_sentiment140(std::istream& in, const PolaritySink& sink);

// Emotional Tweets: tab-separated "id<TAB>text<TAB>label" (the upstream
// distribution's layout) or "text<TAB>label"; label matched
// case-insensitively against the six emotions.
ParseStats parse_emotional_tweets(const std::filesystem::path& path,
                                  const EmotionSink& sink);
ParseStats parse_emotional_tweets(std::istream& in, const EmotionSink& sink);

// Hashtag/Kaggle-style tweet CSV with a header row. Column names are
// matched case-insensitively through an alias table (see ingest.cpp).
// `location_to_country` optionally maps a verbatim user-location string to
// an ISO alpha-2 code when the file has no usable country column.
struct HashtagCsvOptions {
  std::map<std::string, std::string> location_to_country;
};

ParseStats parse_hashtag_csv(const std::filesystem::path& path,
                             const TweetSink& sink,
                             const HashtagCsvOptions& options = {});
ParseStats parse_hashtag_csv(std::istream& in, const TweetSink& sink,
                             const HashtagCsvOptions& options = {});

// "location<TAB>alpha2" lines, '#' comments allowed.
std::map<std::string, std::string> load_location_map(
    const std::filesystem::path& path);

// Canonical record CSV: documented header + one row per record;
// re-parsing yields identical records.
extern const char* const kCanonicalCsvHeader;
void write_canonical_csv(std::ostream& out,
                         const std::vector<TweetRecord>& records);
ParseStats parse_canonical_csv(std::istream& in, const TweetSink& sink);
ParseStats parse_canonical_csv(const std::filesystem::path& path,
                               const TweetSink& sink);

template <typename Label>
struct ClassCounts {
  std::map<Label, std::size_t> counts;
  std::size_t total = 0;

  void add(Label l) {
    ++counts[l];
    ++total;
  }
};

ClassCounts<Polarity> dataset_stats_polarity(const std::filesystem::path& path,
                                             ParseStats* stats = nullptr);
ClassCounts<Emotion> dataset_stats_emotion(const std::filesystem::path& path,
                                           ParseStats* stats = nullptr);

}  // namespace tweetsent

#endif
