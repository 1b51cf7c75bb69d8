#ifndef TWEETSENT_EMOTICONS_HPP
#define TWEETSENT_EMOTICONS_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsent {

enum class Polarity { Negative = 0, Positive = 1 };

enum class Emotion { Joy = 0, Surprise = 1, Sad = 2, Fear = 3, Anger = 4, Disgust = 5 };

inline constexpr std::array<Emotion, 6> kAllEmotions = {
    Emotion::Joy,  Emotion::Surprise, Emotion::Sad,
    Emotion::Fear, Emotion::Anger,    Emotion::Disgust};

// Joy and Surprise are the positive emotions; the rest are negative.
Polarity polarity_of(Emotion e);

std::string_view to_string(Polarity p);
std::string_view to_string(Emotion e);
std::optional<Polarity> polarity_from_string(std::string_view s);
std::optional<Emotion> emotion_from_string(std::string_view s);

// Codepoint -> emotion map. The built-in table is the paper's emoticon
// grouping with one amendment: U+1F632 stays under Surprise ("astonished
// face") and U+1F631 ("face screaming in fear") carries the Fear row whose
// description it matches, keeping the map one-to-one.
class EmoticonLexicon {
 public:
  static const EmoticonLexicon& builtin();

  // One entry per line: "U+XXXX<TAB>Emotion<TAB>description".
  // '#'-prefixed lines are comments.
  static EmoticonLexicon from_file(const std::filesystem::path& path);
  void write(std::ostream& out) const;

  std::optional<Emotion> emotion_of(char32_t cp) const;
  const std::string* description_of(char32_t cp) const;
  std::size_t size() const { return entries_.size(); }

  struct Entry {
    char32_t codepoint;
    Emotion emotion;
    std::string description;
  };
  const std::vector<Entry>& entries() const { return entries_; }

  void add(char32_t cp, Emotion e, std::string description);

 private:
  std::vector<Entry> entries_;
  std::map<char32_t, std::size_t> index_;
};

// Label derived from the emoticons of one tweet. Unmapped codepoints are
// ignored; agreement on a single emotion is the strongest label, agreement
// on one polarity across several emotions keeps only the polarity, and
// emoticons of both polarities mark the tweet Mixed (excluded downstream
// as a sarcastic usage).
struct WeakLabel {
  enum class Kind { NoEmoticon, PolarityOnly, SingleEmotion, Mixed };
  Kind kind = Kind::NoEmoticon;
  Polarity polarity = Polarity::Negative;  // valid for PolarityOnly/SingleEmotion
  Emotion emotion = Emotion::Joy;          // valid for SingleEmotion

  bool has_polarity() const {
    return kind == Kind::PolarityOnly || kind == Kind::SingleEmotion;
  }
};

WeakLabel weak_label(std::span<const char32_t> emoticons,
                     const EmoticonLexicon& lexicon);

struct TweetRecord;

// Index partition {no_emoticon, positive, negative, mixed}; exhaustive and
// disjoint over the input. Records must have emoticons populated.
struct CorpusPartition {
  std::vector<std::size_t> no_emoticon;
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
  std::vector<std::size_t> mixed;

  std::size_t total() const {
    return no_emoticon.size() + positive.size() + negative.size() + mixed.size();
  }
};

CorpusPartition partition_corpus(std::span<const TweetRecord> records,
                                 const EmoticonLexicon& lexicon);

}  // namespace tweetsent

#endif
