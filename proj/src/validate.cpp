#include "tweetsent/validate.hpp"

#include <ostream>

#include "tweetsent/common.hpp"

namespace tweetsent {

namespace {

// The model input must never contain an emoticon; cleaning guarantees it,
// this re-checks every record (no-leakage invariant).
void assert_no_leakage(const TweetRecord& rec,
                       std::span<const CodepointRange> ranges) {
  if (!rec.cleaned_text) {
    throw DataError("validation corpus record " + rec.tweet_id +
                    " was not preprocessed (no cleaned text)");
  }
  if (!extract_emoticons(*rec.cleaned_text, ranges).empty()) {
    throw DataError("emoticon leaked into model input for record " +
                    rec.tweet_id);
  }
}

}  // namespace

void ValidationReport::print(std::ostream& out) const {
  out << "corpus size:        " << corpus_size << '\n'
      << "  no emoticon:      " << no_emoticon << '\n'
      << "  positive weak:    " << positive << '\n'
      << "  negative weak:    " << negative << '\n'
      << "  mixed (excluded): " << mixed << '\n'
      << "evaluated:          " << evaluated << '\n';
  if (excluded_disgust) {
    out << "disgust (excluded): " << excluded_disgust << '\n';
  }
  out << "accuracy:           " << metrics.accuracy << '\n'
      << "macro F1:           " << metrics.f1_macro << '\n';
  if (class_names.size() == 2) {
    out << "positive-class F1:  " << metrics.f1_positive << '\n';
  }
  out << "confusion (rows = weak label, cols = predicted):\n";
  for (std::size_t i = 0; i < metrics.confusion.size(); ++i) {
    out << "  " << (i < class_names.size() ? class_names[i] : "?") << ':';
    for (std::size_t j = 0; j < metrics.confusion[i].size(); ++j) {
      out << ' ' << metrics.confusion[i][j];
    }
    out << '\n';
  }
}

ValidationReport validate_polarity(const PolarityClassifier& classifier,
                                   std::span<const TweetRecord> corpus,
                                   const EmoticonLexicon& lexicon,
                                   std::span<const CodepointRange> ranges) {
  CorpusPartition part = partition_corpus(corpus, lexicon);
  ValidationReport report;
  report.corpus_size = corpus.size();
  report.no_emoticon = part.no_emoticon.size();
  report.positive = part.positive.size();
  report.negative = part.negative.size();
  report.mixed = part.mixed.size();
  report.class_names = {"negative", "positive"};

  std::vector<std::size_t> actual, predicted;
  auto run = [&](const std::vector<std::size_t>& indices, Polarity truth) {
    for (std::size_t i : indices) {
      const TweetRecord& rec = corpus[i];
      assert_no_leakage(rec, ranges);
      actual.push_back(truth == Polarity::Positive ? 1 : 0);
      predicted.push_back(classifier(rec) == Polarity::Positive ? 1 : 0);
    }
  };
  run(part.negative, Polarity::Negative);
  run(part.positive, Polarity::Positive);
  report.evaluated = actual.size();
  if (report.evaluated == 0) {
    throw DataError("no records with usable weak polarity labels");
  }
  report.metrics = Metrics::from_pairs(actual, predicted, 2);
  return report;
}

ValidationReport validate_emotions(const EmotionClassifier& positive_classifier,
                                   const EmotionClassifier& negative_classifier,
                                   std::span<const TweetRecord> corpus,
                                   const EmoticonLexicon& lexicon,
                                   std::span<const CodepointRange> ranges) {
  ValidationReport report;
  report.corpus_size = corpus.size();
  report.class_names = {"joy", "surprise", "sad", "fear", "anger"};

  // five modeled emotions; Emotion enum order matches the class list
  auto cls = [](Emotion e) { return static_cast<std::size_t>(e); };

  std::vector<std::size_t> actual, predicted;
  for (const TweetRecord& rec : corpus) {
    WeakLabel label = rec.emoticons ? weak_label(*rec.emoticons, lexicon)
                                    : WeakLabel{};
    switch (label.kind) {
      case WeakLabel::Kind::NoEmoticon:
        ++report.no_emoticon;
        continue;
      case WeakLabel::Kind::Mixed:
        ++report.mixed;
        continue;
      case WeakLabel::Kind::PolarityOnly:
        // polarity agreement without a single emotion: not usable here
        (label.polarity == Polarity::Positive ? report.positive
                                              : report.negative)++;
        continue;
      case WeakLabel::Kind::SingleEmotion:
        break;
    }
    (label.polarity == Polarity::Positive ? report.positive
                                          : report.negative)++;
    if (label.emotion == Emotion::Disgust) {
      ++report.excluded_disgust;
      continue;
    }
    assert_no_leakage(rec, ranges);
    const bool positive = polarity_of(label.emotion) == Polarity::Positive;
    Emotion guess = positive ? positive_classifier(rec)
                             : negative_classifier(rec);
    actual.push_back(cls(label.emotion));
    predicted.push_back(cls(guess));
  }
  report.evaluated = actual.size();
  if (report.evaluated == 0) {
    throw DataError("no records with single-emotion weak labels");
  }
  report.metrics = Metrics::from_pairs(actual, predicted, 5);
  return report;
}

}  // namespace tweetsent
