#include "tweetsent/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "tweetsent/common.hpp"

namespace tweetsent {

Vocabulary Vocabulary::build(std::span<const std::vector<std::string>> token_seqs,
                             std::size_t max_size) {
  if (max_size < 3) throw UsageError("vocabulary max_size must be >= 3");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& seq : token_seqs) {
    for (const auto& tok : seq) ++freq[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(),
                                                          freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  std::size_t keep = std::min(ranked.size(), max_size - 2);
  v.tokens_.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    v.index_[ranked[i].first] = static_cast<std::int32_t>(i + 2);
    v.tokens_.push_back(std::move(ranked[i].first));
  }
  return v;
}

std::int32_t Vocabulary::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kOovIndex : it->second;
}

const std::string* Vocabulary::token_of(std::int32_t index) const {
  if (index < 2 || static_cast<std::size_t>(index - 2) >= tokens_.size()) {
    return nullptr;
  }
  return &tokens_[static_cast<std::size_t>(index - 2)];
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write vocabulary: " + path.string());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i] << '\t' << i + 2 << '\n';
  }
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vocabulary: " + path.string());
  Vocabulary v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw DataError("vocabulary line " + std::to_string(lineno) +
                      ": expected 'token<TAB>index'");
    }
    std::int32_t idx = 0;
    auto [p, ec] = std::from_chars(line.data() + tab + 1,
                                   line.data() + line.size(), idx);
    if (ec != std::errc{} || p != line.data() + line.size() ||
        idx != static_cast<std::int32_t>(v.tokens_.size() + 2)) {
      throw DataError("vocabulary line " + std::to_string(lineno) +
                      ": indices must be dense starting at 2");
    }
    std::string tok = line.substr(0, tab);
    v.index_[tok] = idx;
    v.tokens_.push_back(std::move(tok));
  }
  return v;
}

VectorFormat vector_format_from_string(std::string_view s) {
  std::string t = to_lower_ascii(s);
  if (t == "glove-text" || t == "glove") return VectorFormat::GloveText;
  if (t == "fasttext-vec" || t == "fasttext") return VectorFormat::FasttextVec;
  throw UsageError("unknown vector format: " + std::string(s));
}

namespace {

// Parses "token v1 ... vd" into (token, values). Returns false on any
// malformed number or if a value count was expected and not met.
bool parse_vector_line(std::string_view line, std::string& token,
                       std::vector<float>& values) {
  values.clear();
  std::size_t pos = 0;
  while (pos < line.size() && line[pos] == ' ') ++pos;
  std::size_t tok_end = line.find(' ', pos);
  if (tok_end == std::string_view::npos) return false;
  token.assign(line.substr(pos, tok_end - pos));
  pos = tok_end;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    float v = 0;
    auto [p, ec] = std::from_chars(line.data() + pos,
                                   line.data() + line.size(), v);
    if (ec != std::errc{}) return false;
    values.push_back(v);
    pos = static_cast<std::size_t>(p - line.data());
  }
  return !values.empty();
}

}  // namespace

EmbeddingMatrix load_pretrained(const std::filesystem::path& path,
                                VectorFormat format, const Vocabulary& vocab,
                                std::size_t dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vector file: " + path.string());

  EmbeddingMatrix m;
  m.rows = vocab.size();
  m.dim = dim;
  m.data.assign(m.rows * m.dim, 0.0f);

  std::string line;
  if (format == VectorFormat::FasttextVec) {
    if (!std::getline(in, line)) {
      throw DataError("empty fasttext vector file: " + path.string());
    }
    std::size_t count = 0, header_dim = 0;
    std::size_t sp = line.find(' ');
    if (sp == std::string::npos) {
      throw DataError("fasttext header must be 'count dim': " + path.string());
    }
    auto r1 = std::from_chars(line.data(), line.data() + sp, count);
    std::string_view rest(line.data() + sp + 1, line.size() - sp - 1);
    while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) {
      rest.remove_suffix(1);
    }
    auto r2 = std::from_chars(rest.data(), rest.data() + rest.size(),
                              header_dim);
    if (r1.ec != std::errc{} || r2.ec != std::errc{}) {
      throw DataError("fasttext header must be 'count dim': " + path.string());
    }
    if (header_dim != dim) {
      throw DataError("vector dimension mismatch: file has " +
                      std::to_string(header_dim) + ", configured " +
                      std::to_string(dim));
    }
  }

  std::size_t found = 0;
  std::vector<bool> seen(m.rows, false);
  std::string token;
  std::vector<float> values;
  values.reserve(dim);
  while (std::getline(in, line)) {
    if (!parse_vector_line(line, token, values)) {
      ++m.malformed_lines;
      continue;
    }
    if (values.size() != dim) {
      if (format == VectorFormat::GloveText) {
        throw DataError("vector dimension mismatch: line has " +
                        std::to_string(values.size()) + ", configured " +
                        std::to_string(dim));
      }
      ++m.malformed_lines;
      continue;
    }
    std::int32_t idx = vocab.index_of(token);
    if (idx <= Vocabulary::kOovIndex) continue;
    std::copy(values.begin(), values.end(),
              m.row(static_cast<std::size_t>(idx)));
    if (!seen[static_cast<std::size_t>(idx)]) {
      seen[static_cast<std::size_t>(idx)] = true;
      ++found;
    }
  }
  std::size_t real_tokens = vocab.size() - 2;
  m.coverage = real_tokens == 0
                   ? 0.0
                   : static_cast<double>(found) / static_cast<double>(real_tokens);
  return m;
}

std::vector<std::int32_t> encode_and_pad(std::span<const std::string> tokens,
                                         const Vocabulary& vocab,
                                         std::size_t sequence_length) {
  if (sequence_length < 1) throw UsageError("sequence length must be >= 1");
  std::vector<std::int32_t> out(sequence_length, Vocabulary::kPadIndex);
  std::size_t n = std::min(tokens.size(), sequence_length);
  for (std::size_t i = 0; i < n; ++i) out[i] = vocab.index_of(tokens[i]);
  return out;
}

std::vector<std::string> decode(std::span<const std::int32_t> indices,
                                const Vocabulary& vocab) {
  std::vector<std::string> out;
  for (std::int32_t idx : indices) {
    if (idx == Vocabulary::kPadIndex) break;
    const std::string* tok = vocab.token_of(idx);
    out.push_back(tok ? *tok : "<oov>");
  }
  return out;
}

}  // namespace tweetsent
