#include "tweetsent/preprocess.hpp"

#include <cctype>
#include <fstream>

#include "tweetsent/common.hpp"

namespace tweetsent {

namespace {

constexpr const char* kBuiltinStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
    "you're", "you've", "you'll", "you'd", "your", "yours", "yourself",
    "yourselves", "he", "him", "his", "himself", "she", "she's", "her",
    "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
    "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
    "be", "been", "being", "have", "has", "had", "having", "do", "does",
    "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
    "as", "until", "while", "of", "at", "by", "for", "with", "about",
    "against", "between", "into", "through", "during", "before", "after",
    "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
    "over", "under", "again", "further", "then", "once", "here", "there",
    "when", "where", "why", "how", "all", "any", "both", "each", "few",
    "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "don't", "should", "should've", "now", "d", "ll", "m",
    "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
    "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
    "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn",
    "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
    "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
    "won't", "wouldn", "wouldn't"};

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

const Stopwords& Stopwords::builtin() {
  static const Stopwords sw = [] {
    Stopwords s;
    for (const char* w : kBuiltinStopwords) s.words_.insert(w);
    return s;
  }();
  return sw;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stop-word list: " + path.string());
  Stopwords s;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    s.words_.insert(line);
  }
  return s;
}

std::vector<char32_t> extract_emoticons(std::string_view text,
                                        std::span<const CodepointRange> ranges) {
  std::vector<char32_t> out;
  for (char32_t cp : decode_utf8(text)) {
    for (const CodepointRange& r : ranges) {
      if (cp >= r.lo && cp <= r.hi) {
        out.push_back(cp);
        break;
      }
    }
  }
  return out;
}

std::string strip_mentions_and_colons(std::string_view text,
                                      std::size_t* mentions_removed) {
  std::string out;
  out.reserve(text.size());
  std::size_t removed = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '@' && i + 1 < text.size() && is_word_char(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() && is_word_char(text[j])) ++j;
      ++removed;
      i = j;
      continue;
    }
    if (c != ':') out.push_back(c);
    ++i;
  }
  if (mentions_removed) *mentions_removed = removed;
  return out;
}

std::string replace_non_ascii_runs(std::string_view text,
                                   std::size_t* runs_replaced) {
  std::string out;
  out.reserve(text.size());
  std::size_t runs = 0;
  bool in_run = false;
  for (char32_t cp : decode_utf8(text)) {
    if (cp > 0x7F) {
      if (!in_run) {
        out.push_back(' ');
        ++runs;
        in_run = true;
      }
    } else {
      out.push_back(static_cast<char>(cp));
      in_run = false;
    }
  }
  if (runs_replaced) *runs_replaced = runs;
  return out;
}

std::vector<std::string> tokenize_lower(std::string_view ascii_text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : ascii_text) {
    unsigned char uc = static_cast<unsigned char>(c);
    // non-printable ASCII separates tokens like whitespace does
    if (uc <= 0x20 || uc == 0x7F) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                           : c);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> filter_tokens(std::vector<std::string> tokens,
                                       const Stopwords& stopwords,
                                       std::size_t* stopwords_removed) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t removed = 0;
  for (std::string& tok : tokens) {
    if (stopwords.contains(tok)) {
      ++removed;
      continue;
    }
    std::size_t begin = 0, end = tok.size();
    while (begin < end && is_ascii_punct(tok[begin])) ++begin;
    while (end > begin && is_ascii_punct(tok[end - 1])) --end;
    if (begin == end) continue;  // pure punctuation
    std::string stripped = tok.substr(begin, end - begin);
    if (stopwords.contains(stripped)) {
      ++removed;
      continue;
    }
    out.push_back(std::move(stripped));
  }
  if (stopwords_removed) *stopwords_removed = removed;
  return out;
}

CleanResult clean_tweet(std::string_view text, const Stopwords& stopwords) {
  CleanResult result;
  std::string no_mentions =
      strip_mentions_and_colons(text, &result.report.mentions_removed);
  std::string ascii_only = replace_non_ascii_runs(
      no_mentions, &result.report.non_ascii_runs_replaced);
  result.tokens = filter_tokens(tokenize_lower(ascii_only), stopwords,
                                &result.report.stopwords_removed);
  std::size_t len = 0;
  for (const auto& t : result.tokens) len += t.size() + 1;
  result.cleaned_text.reserve(len);
  for (std::size_t i = 0; i < result.tokens.size(); ++i) {
    if (i) result.cleaned_text.push_back(' ');
    result.cleaned_text += result.tokens[i];
  }
  return result;
}

PreprocessSummary preprocess_corpus(std::vector<TweetRecord>& records,
                                    const PreprocessOptions& options) {
  const Stopwords& sw = options.stopwords ? *options.stopwords
                                          : Stopwords::builtin();
  PreprocessSummary summary;
  for (TweetRecord& rec : records) {
    rec.emoticons = extract_emoticons(rec.original_text,
                                      options.emoticon_ranges);
    CleanResult cleaned = clean_tweet(rec.original_text, sw);
    cleaned.report.emoticons_extracted = rec.emoticons->size();
    rec.cleaned_text = std::move(cleaned.cleaned_text);
    ++summary.records;
    if (rec.cleaned_text->empty()) ++summary.empty_cleaned;
    summary.totals.mentions_removed += cleaned.report.mentions_removed;
    summary.totals.non_ascii_runs_replaced +=
        cleaned.report.non_ascii_runs_replaced;
    summary.totals.stopwords_removed += cleaned.report.stopwords_removed;
    summary.totals.emoticons_extracted += cleaned.report.emoticons_extracted;
  }
  return summary;
}

}  // namespace tweetsent
