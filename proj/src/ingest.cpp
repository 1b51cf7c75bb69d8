#include "tweetsent/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tweetsent/common.hpp"
#include "tweetsent/csv.hpp"

namespace tweetsent {

void ParseStats::reject(std::size_t line, std::string message) {
  ++rejected;
  if (issues.size() < kMaxIssues) issues.push_back({line, std::move(message)});
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  return in;
}

}  // namespace

ParseStats parse_sentiment140(std::istream& in, const PolaritySink& sink) {
  ParseStats stats;
  CsvReader reader(in);
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != 6) {
      stats.reject(reader.record_line(),
                   "expected 6 fields, got " + std::to_string(fields.size()));
      continue;
    }
    const std::string& code = fields[0];
    Polarity polarity;
    if (code == "0") {
      polarity = Polarity::Negative;
    } else if (code == "4") {
      polarity = Polarity::Positive;
    } else {
      stats.reject(reader.record_line(), "sentiment code '" + code +
                                             "' not in {0, 4}");
      continue;
    }
    ++stats.accepted;
    sink(LabeledPolarityRecord{std::move(fields[5]), polarity});
  }
  return stats;
}

ParseStats parse_sentiment140(const std::filesystem::path& path,
                              const PolaritySink& sink) {
  auto in = open_or_throw(path);
  return parse_sentiment140(in, sink);
}

ParseStats parse_emotional_tweets(std::istream& in, const EmotionSink& sink) {
  ParseStats stats;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t last_tab = line.rfind('\t');
    if (last_tab == std::string::npos) {
      stats.reject(lineno, "expected tab-separated text and label");
      continue;
    }
    std::string label_str = line.substr(last_tab + 1);
    // strip the WASSA-style ":intensity" suffix if present
    if (std::size_t colon = label_str.find(':'); colon != std::string::npos) {
      label_str.resize(colon);
    }
    auto emotion = emotion_from_string(label_str);
    if (!emotion) {
      stats.reject(lineno, "unknown emotion label '" + label_str + "'");
      continue;
    }
    std::string text = line.substr(0, last_tab);
    // optional leading id column
    if (std::size_t first_tab = text.find('\t');
        first_tab != std::string::npos) {
      bool id_like = first_tab > 0;
      for (std::size_t i = 0; i < first_tab && id_like; ++i) {
        char c = text[i];
        id_like = (c >= '0' && c <= '9') || c == '-' || c == '.';
      }
      if (id_like) text.erase(0, first_tab + 1);
    }
    ++stats.accepted;
    sink(LabeledEmotionRecord{std::move(text), *emotion});
  }
  return stats;
}

ParseStats parse_emotional_tweets(const std::filesystem::path& path,
                                  const EmotionSink& sink) {
  auto in = open_or_throw(path);
  return parse_emotional_tweets(in, sink);
}

namespace {

std::string normalize_header(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

// Alias table for the two collection sources' differing headers.
int column_role(const std::string& normalized) {
  enum { kId = 0, kTime, kText, kCleaned, kUser, kLocation, kCountry,
         kSubjectivity, kEmoticons, kPolarity };
  if (normalized == "tweetid" || normalized == "statusid" || normalized == "id")
    return kId;
  if (normalized == "time" || normalized == "createdat" || normalized == "date")
    return kTime;
  if (normalized == "text" || normalized == "originaltext" ||
      normalized == "tweettext")
    return kText;
  if (normalized == "cleanedtext" || normalized == "cleantext") return kCleaned;
  if (normalized == "username" || normalized == "screenname" ||
      normalized == "user")
    return kUser;
  if (normalized == "userlocation" || normalized == "location") return kLocation;
  if (normalized == "country" || normalized == "countrycode") return kCountry;
  if (normalized == "subjectivity") return kSubjectivity;
  if (normalized == "emoticons") return kEmoticons;
  if (normalized == "polarity") return kPolarity;
  return -1;
}

std::optional<std::vector<char32_t>> parse_emoticon_field(
    const std::string& field) {
  if (field.empty()) return std::nullopt;
  std::vector<char32_t> cps;
  std::istringstream ss(field);
  std::string tok;
  while (ss >> tok) cps.push_back(codepoint_from_string(tok));
  return cps;
}

}  // namespace

ParseStats parse_hashtag_csv(std::istream& in, const TweetSink& sink,
                             const HashtagCsvOptions& options) {
  ParseStats stats;
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) return stats;

  enum { kId = 0, kTime, kText, kCleaned, kUser, kLocation, kCountry,
         kSubjectivity, kEmoticons, kPolarity, kRoleCount };
  std::array<int, kRoleCount> col;
  col.fill(-1);
  for (std::size_t i = 0; i < header.size(); ++i) {
    int role = column_role(normalize_header(header[i]));
    if (role >= 0 && col[static_cast<std::size_t>(role)] < 0) {
      col[static_cast<std::size_t>(role)] = static_cast<int>(i);
    }
  }
  if (col[kId] < 0 || col[kText] < 0) {
    throw DataError("hashtag CSV header lacks a tweet-id or text column");
  }

  auto get = [&](const std::vector<std::string>& f, int role) -> std::string {
    int idx = col[static_cast<std::size_t>(role)];
    if (idx < 0 || static_cast<std::size_t>(idx) >= f.size()) return {};
    return f[static_cast<std::size_t>(idx)];
  };

  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    TweetRecord rec;
    rec.tweet_id = get(fields, kId);
    rec.original_text = get(fields, kText);
    if (rec.tweet_id.empty()) {
      stats.reject(reader.record_line(), "empty tweet id");
      continue;
    }
    try {
      std::string time_str = get(fields, kTime);
      rec.time_utc = time_str.empty() ? 0 : parse_timestamp(time_str);
    } catch (const DataError& e) {
      stats.reject(reader.record_line(), e.what());
      continue;
    }
    if (std::string cleaned = get(fields, kCleaned); !cleaned.empty()) {
      rec.cleaned_text = std::move(cleaned);
    }
    rec.user_name = get(fields, kUser);
    rec.user_location = get(fields, kLocation);
    if (std::string country = get(fields, kCountry); !country.empty()) {
      for (char& c : country) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      }
      rec.country = std::move(country);
    } else if (auto it = options.location_to_country.find(rec.user_location);
               it != options.location_to_country.end()) {
      rec.country = it->second;
    }
    if (std::string subj = get(fields, kSubjectivity); !subj.empty()) {
      double v = 0;
      auto [p, ec] = std::from_chars(subj.data(), subj.data() + subj.size(), v);
      if (ec == std::errc{} && p == subj.data() + subj.size()) {
        rec.subjectivity = v;
      } else {
        stats.reject(reader.record_line(), "bad subjectivity '" + subj + "'");
        continue;
      }
    }
    try {
      rec.emoticons = parse_emoticon_field(get(fields, kEmoticons));
    } catch (const DataError& e) {
      stats.reject(reader.record_line(), e.what());
      continue;
    }
    ++stats.accepted;
    sink(std::move(rec));
  }
  return stats;
}

ParseStats parse_hashtag_csv(const std::filesystem::path& path,
                             const TweetSink& sink,
                             const HashtagCsvOptions& options) {
  auto in = open_or_throw(path);
  return parse_hashtag_csv(in, sink, options);
}

std::map<std::string, std::string> load_location_map(
    const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("location map line " + std::to_string(lineno) +
                      ": expected 'location<TAB>alpha2'");
    }
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

const char* const kCanonicalCsvHeader =
    "tweet_id,time,original_text,cleaned_text,user_name,user_location,"
    "country,subjectivity,emoticons";

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string emoticons_to_field(const std::vector<char32_t>& cps) {
  std::string out;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (i) out.push_back(' ');
    out += codepoint_to_string(cps[i]);
  }
  return out;
}

}  // namespace

void write_canonical_csv(std::ostream& out,
                         const std::vector<TweetRecord>& records) {
  out << kCanonicalCsvHeader << '\n';
  // Optional fields: an absent value is an unquoted empty field, a present
  // but empty value is written as "" so re-parsing restores presence.
  auto opt_field = [](const std::optional<std::string>& v) -> std::string {
    if (!v) return "";
    if (v->empty()) return "\"\"";
    return csv_quote(*v);
  };
  for (const TweetRecord& r : records) {
    out << csv_quote(r.tweet_id) << ',' << format_timestamp(r.time_utc) << ','
        << csv_quote(r.original_text) << ',' << opt_field(r.cleaned_text)
        << ',' << csv_quote(r.user_name) << ',' << csv_quote(r.user_location)
        << ',' << (r.country ? csv_quote(*r.country) : "") << ','
        << (r.subjectivity ? format_double(*r.subjectivity) : "") << ',';
    if (!r.emoticons) {
      out << '\n';
    } else if (r.emoticons->empty()) {
      out << "\"\"\n";
    } else {
      out << emoticons_to_field(*r.emoticons) << '\n';
    }
  }
}

ParseStats parse_canonical_csv(std::istream& in, const TweetSink& sink) {
  ParseStats stats;
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::vector<bool> quoted;
  if (!reader.next(fields)) return stats;  // header (or empty file)
  while (reader.next(fields, &quoted)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 9) {
      stats.reject(reader.record_line(),
                   "expected 9 fields, got " + std::to_string(fields.size()));
      continue;
    }
    TweetRecord rec;
    rec.tweet_id = std::move(fields[0]);
    if (rec.tweet_id.empty()) {
      stats.reject(reader.record_line(), "empty tweet id");
      continue;
    }
    try {
      rec.time_utc = parse_timestamp(fields[1]);
      rec.original_text = std::move(fields[2]);
      if (!fields[3].empty() || quoted[3]) rec.cleaned_text = std::move(fields[3]);
      rec.user_name = std::move(fields[4]);
      rec.user_location = std::move(fields[5]);
      if (!fields[6].empty()) rec.country = std::move(fields[6]);
      if (!fields[7].empty()) {
        double v = 0;
        auto [p, ec] =
            std::from_chars(fields[7].data(),
                            fields[7].data() + fields[7].size(), v);
        if (ec != std::errc{} || p != fields[7].data() + fields[7].size()) {
          throw DataError("bad subjectivity '" + fields[7] + "'");
        }
        rec.subjectivity = v;
      }
      if (!fields[8].empty() || quoted[8]) {
        rec.emoticons = parse_emoticon_field(fields[8]);
        if (!rec.emoticons) rec.emoticons = std::vector<char32_t>{};
      }
    } catch (const DataError& e) {
      stats.reject(reader.record_line(), e.what());
      continue;
    }
    ++stats.accepted;
    sink(std::move(rec));
  }
  return stats;
}

ParseStats parse_canonical_csv(const std::filesystem::path& path,
                               const TweetSink& sink) {
  auto in = open_or_throw(path);
  return parse_canonical_csv(in, sink);
}

ClassCounts<Polarity> dataset_stats_polarity(const std::filesystem::path& path,
                                             ParseStats* stats) {
  ClassCounts<Polarity> counts;
  ParseStats s = parse_sentiment140(
      path, [&](LabeledPolarityRecord&& r) { counts.add(r.polarity); });
  if (stats) *stats = std::move(s);
  return counts;
}

ClassCounts<Emotion> dataset_stats_emotion(const std::filesystem::path& path,
                                           ParseStats* stats) {
  ClassCounts<Emotion> counts;
  ParseStats s = parse_emotional_tweets(
      path, [&](LabeledEmotionRecord&& r) { counts.add(r.emotion); });
  if (stats) *stats = std::move(s);
  return counts;
}

}  // namespace tweetsent
