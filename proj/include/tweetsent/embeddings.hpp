#ifndef TWEETSENT_EMBEDDINGS_HPP
#define TWEETSENT_EMBEDDINGS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tweetsent {

// Token -> dense index map. Index 0 is the padding slot, index 1 the
// out-of-vocabulary slot; real tokens start at 2.
class Vocabulary {
 public:
  static constexpr std::int32_t kPadIndex = 0;
  static constexpr std::int32_t kOovIndex = 1;

  // Keeps the most frequent tokens (ties broken lexicographically) up to
  // max_size total entries including the two reserved slots.
  static Vocabulary build(std::span<const std::vector<std::string>> token_seqs,
                          std::size_t max_size);

  std::int32_t index_of(std::string_view token) const;
  const std::string* token_of(std::int32_t index) const;
  std::size_t size() const { return tokens_.size() + 2; }

  // "token<TAB>index" lines, ordered by index.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  std::unordered_map<std::string, std::int32_t> index_;
  std::vector<std::string> tokens_;  // tokens_[i] has index i + 2
};

// V x d row-major table of 32-bit reals aligned with a Vocabulary.
// Row 0 (padding) is all-zero at initialization.
struct EmbeddingMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<float> data;
  bool trainable = false;
  double coverage = 0.0;          // |vocab tokens found| / (V - 2)
  std::size_t malformed_lines = 0;

  float* row(std::size_t r) { return data.data() + r * dim; }
  const float* row(std::size_t r) const { return data.data() + r * dim; }
};

enum class VectorFormat { GloveText, FasttextVec };

// glove-text lines are "token v1 ... vd"; fasttext-vec starts with a
// "count dim" header. Vocabulary tokens found in the file get their
// vectors, misses stay zero. A malformed line is skipped and counted; a
// dimension mismatch against `dim` is fatal.
EmbeddingMatrix load_pretrained(const std::filesystem::path& path,
                                VectorFormat format, const Vocabulary& vocab,
                                std::size_t dim);

VectorFormat vector_format_from_string(std::string_view s);

// First L tokens mapped through the vocabulary (unknowns -> 1), then
// post-padded with 0 to exactly L positions.
std::vector<std::int32_t> encode_and_pad(std::span<const std::string> tokens,
                                         const Vocabulary& vocab,
                                         std::size_t sequence_length);

std::vector<std::string> decode(std::span<const std::int32_t> indices,
                                const Vocabulary& vocab);

}  // namespace tweetsent

#endif
