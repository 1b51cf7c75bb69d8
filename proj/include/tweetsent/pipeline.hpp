#ifndef TWEETSENT_PIPELINE_HPP
#define TWEETSENT_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetsent/embeddings.hpp"
#include "tweetsent/emoticons.hpp"
#include "tweetsent/metrics.hpp"
#include "tweetsent/nn/adam.hpp"
#include "tweetsent/nn/network.hpp"
#include "tweetsent/nn/train.hpp"
#include "tweetsent/preprocess.hpp"

namespace tweetsent {

// Stage A decides polarity; B picks the positive emotion (joy/surprise),
// C the negative one (sad/fear/anger — disgust is dropped for support).
enum class Stage { A, B, C };

enum class ModelVariant {
  DnnBaseline,
  LstmFasttext,
  LstmGlove,
  LstmGloveTwitter,
  LstmScratch,
};

std::string_view to_string(Stage s);
std::string_view to_string(ModelVariant v);
Stage stage_from_string(std::string_view s);
ModelVariant variant_from_string(std::string_view s);

bool variant_needs_pretrained(ModelVariant v);
VectorFormat variant_vector_format(ModelVariant v);
std::size_t variant_default_dim(ModelVariant v);  // 200 for glove-twitter

std::size_t stage_num_classes(Stage s);
std::vector<std::string> stage_class_names(Stage s);
// Class index within a stage's label set; nullopt if the emotion does not
// belong to the stage (e.g. Disgust never maps into C).
std::optional<std::size_t> stage_class_of_emotion(Stage s, Emotion e);
Emotion stage_emotion_of_class(Stage s, std::size_t cls);

struct LabeledText {
  std::string text;
  std::size_t label = 0;
};

struct ClassifierSpec {
  Stage stage = Stage::A;
  ModelVariant variant = ModelVariant::LstmFasttext;
  std::size_t epochs = 2;
  std::uint64_t seed = 1;
  double test_fraction = 0.1;
  double val_fraction = 0.1;
  std::size_t sequence_length = 280;
  std::size_t embed_dim = 0;  // 0 -> variant default
  std::size_t lstm_units = 32;
  std::vector<std::size_t> baseline_dense{128, 64, 32};
  std::size_t batch_size = 128;
  double learning_rate = 1e-3;
  double dropout = 0.2;
  double recurrent_dropout = 0.2;
  std::size_t vocab_max = 50000;
  nn::LossKind loss = nn::LossKind::CrossEntropy;
  bool class_weighted = false;
  double max_grad_norm = 0.0;  // 0 = no clipping
  std::filesystem::path embeddings_path;
};

// Stratified split: test_fraction per class for the test set, then
// val_fraction of the remainder for validation. Deterministic per seed;
// indices within each split come back in input order.
struct SplitIndices {
  std::vector<std::size_t> train, val, test;
};

SplitIndices split_dataset(std::span<const std::size_t> labels,
                           std::size_t num_classes, std::uint64_t seed,
                           double test_fraction = 0.1,
                           double val_fraction = 0.1);

// Seeded balanced subsample: per_class records of each class, input order
// not preserved (class-shuffled), deterministic per seed.
std::vector<LabeledText> subsample_balanced(std::span<const LabeledText> data,
                                            std::size_t num_classes,
                                            std::size_t per_class,
                                            std::uint64_t seed);

struct ModelBuildConfig {
  ModelVariant variant = ModelVariant::LstmFasttext;
  std::size_t num_classes = 2;
  std::size_t vocab_size = 2;
  std::size_t embed_dim = 300;
  std::size_t sequence_length = 280;
  std::size_t lstm_units = 32;
  std::vector<std::size_t> baseline_dense{128, 64, 32};
  double dropout = 0.2;
  double recurrent_dropout = 0.2;
  nn::LossKind loss = nn::LossKind::CrossEntropy;
  std::uint64_t seed = 1;
};

// Builds the variant's architecture with seeded initialization; when
// `pretrained` is given its rows back the (frozen) embedding.
// Double instantiation exists for gradient checking.
template <typename T>
nn::Network<T> build_model(const ModelBuildConfig& cfg,
                           const EmbeddingMatrix* pretrained = nullptr) {
  nn::Network<T> net(cfg.seed, cfg.loss, cfg.sequence_length);
  Rng init_rng(derive_seed(cfg.seed, "init"));

  const bool trainable = !variant_needs_pretrained(cfg.variant);
  auto embedding = std::make_unique<nn::Embedding<T>>(cfg.vocab_size,
                                                      cfg.embed_dim, trainable);
  if (pretrained) {
    if (pretrained->rows != cfg.vocab_size || pretrained->dim != cfg.embed_dim) {
      throw DataError("pretrained matrix does not match model config");
    }
    embedding->load_rows(pretrained->data.data(), pretrained->rows,
                         pretrained->dim);
  } else {
    embedding->init_scratch(init_rng);
  }
  net.add(std::move(embedding));

  const nn::Activation head = cfg.num_classes >= 3 ? nn::Activation::Softmax
                                                   : nn::Activation::Sigmoid;
  if (cfg.variant == ModelVariant::DnnBaseline) {
    net.add(std::make_unique<nn::GlobalMaxPool<T>>());
    std::size_t width = cfg.embed_dim;
    for (std::size_t units : cfg.baseline_dense) {
      auto dense =
          std::make_unique<nn::Dense<T>>(width, units, nn::Activation::ReLU);
      dense->init(init_rng);
      net.add(std::move(dense));
      width = units;
    }
    auto out = std::make_unique<nn::Dense<T>>(width, cfg.num_classes, head);
    out->init(init_rng);
    net.add(std::move(out));
  } else {
    auto lstm = std::make_unique<nn::Lstm<T>>(cfg.embed_dim, cfg.lstm_units,
                                              cfg.dropout,
                                              cfg.recurrent_dropout);
    lstm->init(init_rng);
    net.add(std::move(lstm));
    auto out =
        std::make_unique<nn::Dense<T>>(cfg.lstm_units, cfg.num_classes, head);
    out->init(init_rng);
    net.add(std::move(out));
  }
  return net;
}

// Cleans and encodes raw texts into a (N, L) index tensor.
nn::Tensor<float> encode_texts(std::span<const std::string> texts,
                               const Vocabulary& vocab,
                               std::size_t sequence_length,
                               const Stopwords& stopwords);

nn::Tensor<float> one_hot(std::span<const std::size_t> labels,
                          std::size_t num_classes);

struct TrainCurvePoint {
  std::size_t epoch = 0;
  double train_loss = 0, train_accuracy = 0;
  double val_loss = 0, val_accuracy = 0;
};

struct TrainOutcome {
  nn::Network<float> net;
  Vocabulary vocab;
  Metrics test_metrics;
  std::vector<TrainCurvePoint> curves;
  double embedding_coverage = 1.0;
  std::vector<std::size_t> class_support;  // training-split counts
};

// Full training path: clean -> split -> vocab (train split only) ->
// encode -> train spec.epochs -> test metrics.
TrainOutcome train_classifier(const ClassifierSpec& spec,
                              const std::vector<LabeledText>& data,
                              const Stopwords& stopwords = Stopwords::builtin());

// Confusion-matrix evaluation of a trained network on labeled texts.
Metrics evaluate_classifier(nn::Network<float>& net, const Vocabulary& vocab,
                            const std::vector<LabeledText>& data,
                            std::size_t batch_size = 256,
                            const Stopwords& stopwords = Stopwords::builtin());

// Raw class scores for already-encoded sequences, batched eval-mode.
nn::Tensor<float> predict_scores(nn::Network<float>& net,
                                 const nn::Tensor<float>& x,
                                 std::size_t batch_size = 256);

struct Prediction {
  Polarity polarity = Polarity::Negative;
  std::array<float, 2> polarity_scores{};
  Emotion emotion = Emotion::Sad;
  std::vector<float> emotion_scores;
  bool low_confidence = false;  // empty cleaned text: scored on all-pad input
};

struct StageModel {
  nn::Network<float> net;
  Vocabulary vocab;
};

struct TwoStageModel {
  StageModel a, b, c;
};

// A decides polarity, routing positive texts to B and negative ones to C,
// so the emotion always agrees with the polarity group.
std::vector<Prediction> classify_two_stage(
    TwoStageModel& model, std::span<const std::string> texts,
    const Stopwords& stopwords = Stopwords::builtin(),
    std::size_t batch_size = 256);

Prediction classify_two_stage_one(
    TwoStageModel& model, std::string_view text,
    const Stopwords& stopwords = Stopwords::builtin());

}  // namespace tweetsent

#endif
