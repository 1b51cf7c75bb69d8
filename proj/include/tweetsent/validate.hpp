#ifndef TWEETSENT_VALIDATE_HPP
#define TWEETSENT_VALIDATE_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "tweetsent/emoticons.hpp"
#include "tweetsent/ingest.hpp"
#include "tweetsent/metrics.hpp"
#include "tweetsent/preprocess.hpp"

namespace tweetsent {

// Weak-supervision validation: emoticon-derived labels are the ground
// truth, the model only ever sees the cleaned text (cleaning strips every
// emoticon, which the harness asserts per record).
struct ValidationReport {
  std::size_t corpus_size = 0;
  std::size_t no_emoticon = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t mixed = 0;
  std::size_t evaluated = 0;
  std::size_t excluded_disgust = 0;  // emotion validation only
  Metrics metrics;
  std::vector<std::string> class_names;

  void print(std::ostream& out) const;
};

using PolarityClassifier = std::function<Polarity(const TweetRecord&)>;
using EmotionClassifier = std::function<Emotion(const TweetRecord&)>;

// Polarity validation over records whose weak label carries a polarity
// (single-emotion and same-polarity multi-emotion tweets); Mixed and
// NoEmoticon records are excluded.
ValidationReport validate_polarity(
    const PolarityClassifier& classifier, std::span<const TweetRecord> corpus,
    const EmoticonLexicon& lexicon = EmoticonLexicon::builtin(),
    std::span<const CodepointRange> emoticon_ranges = kDefaultEmoticonRanges);

// Emotion validation (an extension of the polarity scheme): only records
// weak-labeled with a single emotion count; joy/surprise go to the
// positive classifier, sad/fear/anger to the negative one, and
// disgust-labeled records are excluded (no classifier emits disgust).
// The confusion matrix covers the five modeled emotions.
ValidationReport validate_emotions(
    const EmotionClassifier& positive_classifier,
    const EmotionClassifier& negative_classifier,
    std::span<const TweetRecord> corpus,
    const EmoticonLexicon& lexicon = EmoticonLexicon::builtin(),
    std::span<const CodepointRange> emoticon_ranges = kDefaultEmoticonRanges);

}  // namespace tweetsent

#endif
