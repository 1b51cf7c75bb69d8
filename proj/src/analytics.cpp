#include "tweetsent/analytics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <vector>

#include "tweetsent/common.hpp"

namespace tweetsent {

std::int64_t day_of_timestamp(std::int64_t epoch_seconds) {
  // floor division: pre-epoch timestamps bucket into the right day
  std::int64_t day = epoch_seconds / 86400;
  if (epoch_seconds % 86400 < 0) --day;
  return day;
}

std::string day_to_string(std::int64_t day) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{day}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::int64_t day_from_string(std::string_view s) {
  return day_of_timestamp(parse_timestamp(s));
}

std::string_view to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Positive: return "positive";
    case SeriesClass::Negative: return "negative";
    case SeriesClass::Joy: return "joy";
    case SeriesClass::Surprise: return "surprise";
    case SeriesClass::Sad: return "sad";
    case SeriesClass::Fear: return "fear";
    case SeriesClass::Anger: return "anger";
  }
  return "?";
}

std::optional<SeriesClass> series_class_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kSeriesClassCount; ++i) {
    if (to_string(static_cast<SeriesClass>(i)) == s) {
      return static_cast<SeriesClass>(i);
    }
  }
  return std::nullopt;
}

double DailySeries::total_tweets() const {
  double total = 0;
  for (double v : series(SeriesClass::Positive)) total += v;
  for (double v : series(SeriesClass::Negative)) total += v;
  return total;
}

std::map<std::string, DailySeries> aggregate_daily(
    std::span<const ClassifiedTweet> tweets) {
  struct Span {
    std::int64_t min_day = 0, max_day = 0;
    bool any = false;
  };
  std::map<std::string, Span> spans;
  for (const auto& t : tweets) {
    const std::string& key = t.country.empty() ? kUnassignedCountry : t.country;
    const std::int64_t day = day_of_timestamp(t.time_utc);
    Span& s = spans[key];
    if (!s.any) {
      s.min_day = s.max_day = day;
      s.any = true;
    } else {
      s.min_day = std::min(s.min_day, day);
      s.max_day = std::max(s.max_day, day);
    }
  }

  std::map<std::string, DailySeries> out;
  for (const auto& [country, span] : spans) {
    DailySeries series;
    series.country = country;
    series.first_day = span.min_day;
    const auto n = static_cast<std::size_t>(span.max_day - span.min_day + 1);
    for (auto& v : series.values) v.assign(n, 0.0);
    out.emplace(country, std::move(series));
  }

  for (const auto& t : tweets) {
    const std::string& key = t.country.empty() ? kUnassignedCountry : t.country;
    DailySeries& series = out.at(key);
    const auto idx = static_cast<std::size_t>(day_of_timestamp(t.time_utc) -
                                              series.first_day);
    series.at(t.polarity == Polarity::Positive ? SeriesClass::Positive
                                               : SeriesClass::Negative,
              idx) += 1.0;
    switch (t.emotion) {
      case Emotion::Joy: series.at(SeriesClass::Joy, idx) += 1.0; break;
      case Emotion::Surprise: series.at(SeriesClass::Surprise, idx) += 1.0; break;
      case Emotion::Sad: series.at(SeriesClass::Sad, idx) += 1.0; break;
      case Emotion::Fear: series.at(SeriesClass::Fear, idx) += 1.0; break;
      case Emotion::Anger: series.at(SeriesClass::Anger, idx) += 1.0; break;
      case Emotion::Disgust: break;  // not a modeled output
    }
  }
  return out;
}

DailySeries normalize(const DailySeries& series, NormalizationMode mode) {
  DailySeries out = series;
  if (mode == NormalizationMode::PeriodTotal) {
    const double total = series.total_tweets();
    if (total <= 0) {
      throw DataError("cannot normalize '" + series.country +
                      "': zero tweets over the period");
    }
    for (auto& vec : out.values) {
      for (double& v : vec) v /= total;
    }
  } else {
    const std::size_t n = series.days();
    for (std::size_t d = 0; d < n; ++d) {
      const double day_total = series.at(SeriesClass::Positive, d) +
                               series.at(SeriesClass::Negative, d);
      if (day_total <= 0) continue;  // zero-tweet day stays zero
      for (auto& vec : out.values) vec[d] /= day_total;
    }
    if (series.total_tweets() <= 0) {
      throw DataError("cannot normalize '" + series.country +
                      "': zero tweets over the period");
    }
  }
  return out;
}

std::array<double, kSeriesClassCount> average_line(const DailySeries& series) {
  std::array<double, kSeriesClassCount> out{};
  const std::size_t n = series.days();
  if (n == 0) throw DataError("average of an empty series");
  for (std::size_t c = 0; c < kSeriesClassCount; ++c) {
    double sum = 0;
    for (double v : series.values[c]) sum += v;
    out[c] = sum / static_cast<double>(n);
  }
  return out;
}

namespace {

std::vector<std::vector<double>> stack_group(
    const DailySeries& series, std::span<const SeriesClass> order,
    double scale_max) {
  const std::size_t n = series.days();
  std::vector<std::vector<double>> stack(order.size(),
                                         std::vector<double>(n, 0.0));
  for (std::size_t d = 0; d < n; ++d) {
    double cum = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      cum += series.at(order[i], d);
      stack[i][d] = cum;
    }
  }
  double peak = 0;
  if (!stack.empty()) {
    for (double v : stack.back()) peak = std::max(peak, v);
  }
  if (peak > 0) {
    const double scale = scale_max / peak;
    for (auto& row : stack) {
      for (double& v : row) v *= scale;
    }
  }
  return stack;
}

}  // namespace

StackedEmotions stacked_emotions(const DailySeries& series, double scale_max) {
  if (scale_max <= 0) throw UsageError("scale_max must be > 0");
  StackedEmotions out;
  out.country = series.country;
  out.first_day = series.first_day;
  const SeriesClass pos[] = {SeriesClass::Joy, SeriesClass::Surprise};
  const SeriesClass neg[] = {SeriesClass::Sad, SeriesClass::Fear,
                             SeriesClass::Anger};
  out.positive = stack_group(series, pos, scale_max);
  out.negative = stack_group(series, neg, scale_max);
  return out;
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("pearson needs aligned series");
  const std::size_t n = x.size();
  if (n < 2) throw DataError("pearson needs at least 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // constant series
  return sxy / std::sqrt(sxx * syy);
}

CorrelationTable correlation_table(
    const std::map<std::string, DailySeries>& normalized,
    std::span<const std::pair<std::string, std::string>> pairs) {
  CorrelationTable table;
  for (const auto& [a, b] : pairs) {
    auto ia = normalized.find(a);
    auto ib = normalized.find(b);
    if (ia == normalized.end() || ib == normalized.end()) {
      throw DataError("correlation pair references unknown country '" +
                      (ia == normalized.end() ? a : b) + "'");
    }
    const DailySeries& sa = ia->second;
    const DailySeries& sb = ib->second;
    const std::int64_t lo = std::max(sa.first_day, sb.first_day);
    const std::int64_t hi =
        std::min(sa.first_day + static_cast<std::int64_t>(sa.days()),
                 sb.first_day + static_cast<std::int64_t>(sb.days()));
    const std::int64_t overlap = hi - lo;
    for (std::size_t c = 0; c < kSeriesClassCount; ++c) {
      CorrelationEntry entry;
      entry.country_a = a;
      entry.country_b = b;
      entry.cls = static_cast<SeriesClass>(c);
      entry.common_days = overlap > 0 ? static_cast<std::size_t>(overlap) : 0;
      if (overlap >= 2) {
        std::span<const double> xs(
            sa.values[c].data() + (lo - sa.first_day),
            static_cast<std::size_t>(overlap));
        std::span<const double> ys(
            sb.values[c].data() + (lo - sb.first_day),
            static_cast<std::size_t>(overlap));
        entry.r = pearson(xs, ys);
      }
      table.entries.push_back(std::move(entry));
    }
  }
  return table;
}

void write_series_csv(std::ostream& out,
                      const std::map<std::string, DailySeries>& series) {
  out << "country,date,class,value\n";
  for (const auto& [country, s] : series) {
    for (std::size_t c = 0; c < kSeriesClassCount; ++c) {
      for (std::size_t d = 0; d < s.days(); ++d) {
        out << country << ',' << day_to_string(s.first_day + (std::int64_t)d)
            << ',' << to_string(static_cast<SeriesClass>(c)) << ','
            << s.values[c][d] << '\n';
      }
    }
  }
}

std::map<std::string, DailySeries> read_series_csv(std::istream& in) {
  struct Cell {
    std::string country;
    std::int64_t day;
    SeriesClass cls;
    double value;
  };
  std::vector<Cell> cells;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> spans;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || lineno == 1) continue;  // header
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
      std::size_t comma = line.find(',', begin);
      parts.push_back(line.substr(
          begin, comma == std::string::npos ? comma : comma - begin));
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    if (parts.size() != 4) {
      throw DataError("series CSV line " + std::to_string(lineno) +
                      ": expected country,date,class,value");
    }
    auto cls = series_class_from_string(parts[2]);
    if (!cls) {
      throw DataError("series CSV line " + std::to_string(lineno) +
                      ": unknown class '" + parts[2] + "'");
    }
    Cell cell{parts[0], day_from_string(parts[1]), *cls,
              std::stod(parts[3])};
    auto [it, fresh] = spans.try_emplace(
        cell.country, std::make_pair(cell.day, cell.day));
    if (!fresh) {
      it->second.first = std::min(it->second.first, cell.day);
      it->second.second = std::max(it->second.second, cell.day);
    }
    cells.push_back(std::move(cell));
  }

  std::map<std::string, DailySeries> out;
  for (const auto& [country, span] : spans) {
    DailySeries s;
    s.country = country;
    s.first_day = span.first;
    const auto n = static_cast<std::size_t>(span.second - span.first + 1);
    for (auto& v : s.values) v.assign(n, 0.0);
    out.emplace(country, std::move(s));
  }
  for (const Cell& cell : cells) {
    DailySeries& s = out.at(cell.country);
    s.at(cell.cls, static_cast<std::size_t>(cell.day - s.first_day)) =
        cell.value;
  }
  return out;
}

void write_averages_csv(std::ostream& out,
                        const std::map<std::string, DailySeries>& series) {
  out << "country,class,average\n";
  for (const auto& [country, s] : series) {
    auto avg = average_line(s);
    for (std::size_t c = 0; c < kSeriesClassCount; ++c) {
      out << country << ',' << to_string(static_cast<SeriesClass>(c)) << ','
          << avg[c] << '\n';
    }
  }
}

void write_stacked_csv(std::ostream& out, const StackedEmotions& stacked) {
  out << "country,date,stack,level,value\n";
  auto dump = [&](const char* group,
                  const std::vector<std::vector<double>>& rows) {
    for (std::size_t level = 0; level < rows.size(); ++level) {
      for (std::size_t d = 0; d < rows[level].size(); ++d) {
        out << stacked.country << ','
            << day_to_string(stacked.first_day + (std::int64_t)d) << ','
            << group << ',' << level << ',' << rows[level][d] << '\n';
      }
    }
  };
  dump("positive", stacked.positive);
  dump("negative", stacked.negative);
}

void write_correlations_csv(std::ostream& out, const CorrelationTable& table) {
  out << "country_a,country_b,class,r,common_days\n";
  for (const auto& e : table.entries) {
    out << e.country_a << ',' << e.country_b << ',' << to_string(e.cls) << ',';
    if (e.r) {
      out << *e.r;
    } else {
      out << "undefined";
    }
    out << ',' << e.common_days << '\n';
  }
}

}  // namespace tweetsent
