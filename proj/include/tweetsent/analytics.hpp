#ifndef TWEETSENT_ANALYTICS_HPP
#define TWEETSENT_ANALYTICS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetsent/emoticons.hpp"

namespace tweetsent {

// Calendar-day handling: days since the Unix epoch, UTC buckets.
std::int64_t day_of_timestamp(std::int64_t epoch_seconds);
std::string day_to_string(std::int64_t day);
std::int64_t day_from_string(std::string_view s);

// 2 polarity classes + the 5 modeled emotions.
enum class SeriesClass {
  Positive = 0,
  Negative,
  Joy,
  Surprise,
  Sad,
  Fear,
  Anger,
};
inline constexpr std::size_t kSeriesClassCount = 7;
std::string_view to_string(SeriesClass c);
std::optional<SeriesClass> series_class_from_string(std::string_view s);

// Per-country, per-day class counts on a contiguous (gap-filled) day axis.
struct DailySeries {
  std::string country;
  std::int64_t first_day = 0;  // axis is first_day, first_day+1, ...
  std::array<std::vector<double>, kSeriesClassCount> values;

  std::size_t days() const { return values[0].size(); }
  double& at(SeriesClass c, std::size_t day_idx) {
    return values[static_cast<std::size_t>(c)][day_idx];
  }
  double at(SeriesClass c, std::size_t day_idx) const {
    return values[static_cast<std::size_t>(c)][day_idx];
  }
  const std::vector<double>& series(SeriesClass c) const {
    return values[static_cast<std::size_t>(c)];
  }
  // total tweets over the whole period (each record is one polarity count)
  double total_tweets() const;
};

// One classified record ready for aggregation. Records without a country
// land in the "unassigned" bucket.
struct ClassifiedTweet {
  std::string country;  // empty -> unassigned
  std::int64_t time_utc = 0;
  Polarity polarity = Polarity::Negative;
  Emotion emotion = Emotion::Sad;
};

inline constexpr const char* kUnassignedCountry = "unassigned";

// UTC-calendar-day counts per country; missing days inside each country's
// min-max span are present with zero counts.
std::map<std::string, DailySeries> aggregate_daily(
    std::span<const ClassifiedTweet> tweets);

enum class NormalizationMode {
  PeriodTotal,  // value / country's whole-period tweet count
  DayTotal,     // value / that day's tweet count (sensitivity variant)
};

// Normalizes counts into [0, 1]. A zero-total country is an error.
DailySeries normalize(const DailySeries& series,
                      NormalizationMode mode = NormalizationMode::PeriodTotal);

// Arithmetic mean over the day axis, one scalar per class.
std::array<double, kSeriesClassCount> average_line(const DailySeries& series);

// Emotions stacked cumulatively (joy, surprise | sad, fear, anger), each
// polarity group rescaled linearly so its top line peaks at scale_max.
struct StackedEmotions {
  std::string country;
  std::int64_t first_day = 0;
  // positive[0] = joy, positive[1] = joy+surprise (rescaled)
  std::vector<std::vector<double>> positive;
  // negative[0] = sad, [1] = +fear, [2] = +anger (rescaled)
  std::vector<std::vector<double>> negative;
};

StackedEmotions stacked_emotions(const DailySeries& series, double scale_max);

// Sample Pearson correlation; nullopt when either series is constant
// (undefined, deliberately not reported as 0).
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

struct CorrelationEntry {
  std::string country_a;
  std::string country_b;
  SeriesClass cls = SeriesClass::Positive;
  std::optional<double> r;
  std::size_t common_days = 0;
};

struct CorrelationTable {
  std::vector<CorrelationEntry> entries;
};

// One coefficient per (pair, class) over the pair's overlapping day span
// (gap-filled zero days included). Pairs reference countries by name.
CorrelationTable correlation_table(
    const std::map<std::string, DailySeries>& normalized,
    std::span<const std::pair<std::string, std::string>> pairs);

// Tidy CSV exports: "country,date,class,value" rows.
void write_series_csv(std::ostream& out,
                      const std::map<std::string, DailySeries>& series);
// Inverse of write_series_csv; missing (country, class, day) cells are 0.
std::map<std::string, DailySeries> read_series_csv(std::istream& in);
void write_averages_csv(std::ostream& out,
                        const std::map<std::string, DailySeries>& series);
void write_stacked_csv(std::ostream& out, const StackedEmotions& stacked);
void write_correlations_csv(std::ostream& out, const CorrelationTable& table);

}  // namespace tweetsent

#endif
