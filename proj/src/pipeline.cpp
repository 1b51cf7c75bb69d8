#include "tweetsent/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tweetsent {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::A: return "A";
    case Stage::B: return "B";
    case Stage::C: return "C";
  }
  return "?";
}

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::DnnBaseline: return "dnn-baseline";
    case ModelVariant::LstmFasttext: return "lstm-fasttext";
    case ModelVariant::LstmGlove: return "lstm-glove";
    case ModelVariant::LstmGloveTwitter: return "lstm-glove-twitter";
    case ModelVariant::LstmScratch: return "lstm-scratch";
  }
  return "?";
}

Stage stage_from_string(std::string_view s) {
  if (s == "A" || s == "a") return Stage::A;
  if (s == "B" || s == "b") return Stage::B;
  if (s == "C" || s == "c") return Stage::C;
  throw UsageError("unknown stage: " + std::string(s));
}

ModelVariant variant_from_string(std::string_view s) {
  if (s == "dnn-baseline") return ModelVariant::DnnBaseline;
  if (s == "lstm-fasttext") return ModelVariant::LstmFasttext;
  if (s == "lstm-glove") return ModelVariant::LstmGlove;
  if (s == "lstm-glove-twitter") return ModelVariant::LstmGloveTwitter;
  if (s == "lstm-scratch") return ModelVariant::LstmScratch;
  throw UsageError("unknown model variant: " + std::string(s));
}

bool variant_needs_pretrained(ModelVariant v) {
  return v == ModelVariant::LstmFasttext || v == ModelVariant::LstmGlove ||
         v == ModelVariant::LstmGloveTwitter;
}

VectorFormat variant_vector_format(ModelVariant v) {
  return v == ModelVariant::LstmFasttext ? VectorFormat::FasttextVec
                                         : VectorFormat::GloveText;
}

std::size_t variant_default_dim(ModelVariant v) {
  return v == ModelVariant::LstmGloveTwitter ? 200 : 300;
}

std::size_t stage_num_classes(Stage s) { return s == Stage::C ? 3 : 2; }

std::vector<std::string> stage_class_names(Stage s) {
  switch (s) {
    case Stage::A: return {"negative", "positive"};
    case Stage::B: return {"joy", "surprise"};
    case Stage::C: return {"sad", "fear", "anger"};
  }
  return {};
}

std::optional<std::size_t> stage_class_of_emotion(Stage s, Emotion e) {
  if (s == Stage::B) {
    if (e == Emotion::Joy) return 0;
    if (e == Emotion::Surprise) return 1;
    return std::nullopt;
  }
  if (s == Stage::C) {
    if (e == Emotion::Sad) return 0;
    if (e == Emotion::Fear) return 1;
    if (e == Emotion::Anger) return 2;
    return std::nullopt;
  }
  return std::nullopt;
}

Emotion stage_emotion_of_class(Stage s, std::size_t cls) {
  if (s == Stage::B) {
    if (cls == 0) return Emotion::Joy;
    if (cls == 1) return Emotion::Surprise;
  } else if (s == Stage::C) {
    if (cls == 0) return Emotion::Sad;
    if (cls == 1) return Emotion::Fear;
    if (cls == 2) return Emotion::Anger;
  }
  throw UsageError("class index outside the stage label set");
}

SplitIndices split_dataset(std::span<const std::size_t> labels,
                           std::size_t num_classes, std::uint64_t seed,
                           double test_fraction, double val_fraction) {
  std::vector<std::vector<std::size_t>> per_class(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) throw DataError("label outside class set");
    per_class[labels[i]].push_back(i);
  }
  Rng rng(derive_seed(seed, "split"));
  SplitIndices split;
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& idx = per_class[c];
    if (idx.size() < 10) {
      throw DataError("class " + std::to_string(c) + " has only " +
                      std::to_string(idx.size()) +
                      " instances; need at least 10 to split");
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(idx.size()) * test_fraction));
    const std::size_t n_rem = idx.size() - n_test;
    const auto n_val = static_cast<std::size_t>(
        std::llround(static_cast<double>(n_rem) * val_fraction));
    split.test.insert(split.test.end(), idx.begin(), idx.begin() + n_test);
    split.val.insert(split.val.end(), idx.begin() + n_test,
                     idx.begin() + n_test + n_val);
    split.train.insert(split.train.end(), idx.begin() + n_test + n_val,
                       idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<LabeledText> subsample_balanced(std::span<const LabeledText> data,
                                            std::size_t num_classes,
                                            std::size_t per_class,
                                            std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> per_class_idx(num_classes);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label >= num_classes) throw DataError("label outside class set");
    per_class_idx[data[i].label].push_back(i);
  }
  Rng rng(derive_seed(seed, "subsample"));
  std::vector<LabeledText> out;
  out.reserve(per_class * num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& idx = per_class_idx[c];
    if (idx.size() < per_class) {
      throw DataError("class " + std::to_string(c) + " has only " +
                      std::to_string(idx.size()) + " records; need " +
                      std::to_string(per_class));
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 0; i < per_class; ++i) out.push_back(data[idx[i]]);
  }
  return out;
}

nn::Tensor<float> encode_texts(std::span<const std::string> texts,
                               const Vocabulary& vocab,
                               std::size_t sequence_length,
                               const Stopwords& stopwords) {
  nn::Tensor<float> x({texts.size(), sequence_length});
  for (std::size_t i = 0; i < texts.size(); ++i) {
    CleanResult cleaned = clean_tweet(texts[i], stopwords);
    auto encoded = encode_and_pad(cleaned.tokens, vocab, sequence_length);
    for (std::size_t k = 0; k < sequence_length; ++k) {
      x.at(i, k) = static_cast<float>(encoded[k]);
    }
  }
  return x;
}

nn::Tensor<float> one_hot(std::span<const std::size_t> labels,
                          std::size_t num_classes) {
  nn::Tensor<float> y({labels.size(), num_classes});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) throw DataError("label outside class set");
    y.at(i, labels[i]) = 1.0f;
  }
  return y;
}

nn::Tensor<float> predict_scores(nn::Network<float>& net,
                                 const nn::Tensor<float>& x,
                                 std::size_t batch_size) {
  const std::size_t n = x.dim(0), L = x.dim(1);
  nn::Tensor<float> scores;
  for (std::size_t begin = 0; begin < n; begin += batch_size) {
    const std::size_t end = std::min(begin + batch_size, n);
    nn::Tensor<float> xb({end - begin, L});
    std::copy(x.data.begin() + begin * L, x.data.begin() + end * L,
              xb.data.begin());
    nn::Tensor<float> sb = net.forward(xb, /*training=*/false);
    if (scores.size() == 0) {
      scores = nn::Tensor<float>({n, sb.dim(1)});
    }
    std::copy(sb.data.begin(), sb.data.end(),
              scores.data.begin() + begin * sb.dim(1));
  }
  return scores;
}

namespace {

struct EncodedSplit {
  nn::Tensor<float> x;
  nn::Tensor<float> y;
};

EncodedSplit gather_split(const nn::Tensor<float>& x_all,
                          std::span<const std::size_t> labels,
                          std::span<const std::size_t> indices,
                          std::size_t num_classes) {
  const std::size_t L = x_all.dim(1);
  EncodedSplit out;
  out.x = nn::Tensor<float>({indices.size(), L});
  out.y = nn::Tensor<float>({indices.size(), num_classes});
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::size_t src = indices[i];
    std::copy(x_all.data.begin() + src * L, x_all.data.begin() + (src + 1) * L,
              out.x.data.begin() + i * L);
    out.y.at(i, labels[src]) = 1.0f;
  }
  return out;
}

}  // namespace

TrainOutcome train_classifier(const ClassifierSpec& spec,
                              const std::vector<LabeledText>& data,
                              const Stopwords& stopwords) {
  const std::size_t num_classes = stage_num_classes(spec.stage);
  const std::size_t embed_dim =
      spec.embed_dim ? spec.embed_dim : variant_default_dim(spec.variant);

  if (variant_needs_pretrained(spec.variant)) {
    if (spec.embeddings_path.empty() ||
        !std::filesystem::exists(spec.embeddings_path)) {
      throw DataError("pretrained variant '" +
                      std::string(to_string(spec.variant)) +
                      "' needs an existing embeddings file (got '" +
                      spec.embeddings_path.string() + "')");
    }
  }

  std::vector<std::size_t> labels(data.size());
  std::vector<std::vector<std::string>> token_seqs(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    labels[i] = data[i].label;
    token_seqs[i] = clean_tweet(data[i].text, stopwords).tokens;
  }

  SplitIndices split = split_dataset(labels, num_classes, spec.seed,
                                     spec.test_fraction, spec.val_fraction);

  // vocabulary from the training split only
  std::vector<std::vector<std::string>> train_tokens;
  train_tokens.reserve(split.train.size());
  for (std::size_t i : split.train) train_tokens.push_back(token_seqs[i]);
  Vocabulary vocab = Vocabulary::build(train_tokens, spec.vocab_max);

  TrainOutcome outcome{
      nn::Network<float>(spec.seed, spec.loss, spec.sequence_length),
      std::move(vocab),
      {},
      {},
      1.0,
      std::vector<std::size_t>(num_classes, 0)};

  EmbeddingMatrix matrix;
  const EmbeddingMatrix* matrix_ptr = nullptr;
  if (variant_needs_pretrained(spec.variant)) {
    matrix = load_pretrained(spec.embeddings_path,
                             variant_vector_format(spec.variant),
                             outcome.vocab, embed_dim);
    outcome.embedding_coverage = matrix.coverage;
    matrix_ptr = &matrix;
  }

  ModelBuildConfig build_cfg;
  build_cfg.variant = spec.variant;
  build_cfg.num_classes = num_classes;
  build_cfg.vocab_size = outcome.vocab.size();
  build_cfg.embed_dim = embed_dim;
  build_cfg.sequence_length = spec.sequence_length;
  build_cfg.lstm_units = spec.lstm_units;
  build_cfg.baseline_dense = spec.baseline_dense;
  build_cfg.dropout = spec.dropout;
  build_cfg.recurrent_dropout = spec.recurrent_dropout;
  build_cfg.loss = spec.loss;
  build_cfg.seed = spec.seed;
  outcome.net = build_model<float>(build_cfg, matrix_ptr);
  outcome.net.reset_dropout_rng();

  // encode once, gather per split
  nn::Tensor<float> x_all({data.size(), spec.sequence_length});
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto encoded = encode_and_pad(token_seqs[i], outcome.vocab,
                                  spec.sequence_length);
    for (std::size_t k = 0; k < spec.sequence_length; ++k) {
      x_all.at(i, k) = static_cast<float>(encoded[k]);
    }
  }
  EncodedSplit train = gather_split(x_all, labels, split.train, num_classes);
  EncodedSplit val = gather_split(x_all, labels, split.val, num_classes);
  EncodedSplit test = gather_split(x_all, labels, split.test, num_classes);

  for (std::size_t i : split.train) ++outcome.class_support[labels[i]];
  if (spec.class_weighted) {
    std::vector<float> weights(num_classes, 1.0f);
    const double n_train = static_cast<double>(split.train.size());
    for (std::size_t c = 0; c < num_classes; ++c) {
      const double support = static_cast<double>(outcome.class_support[c]);
      weights[c] = support > 0 ? static_cast<float>(
                                     n_train / (num_classes * support))
                               : 1.0f;
    }
    outcome.net.set_class_weights(std::move(weights));
  }

  nn::Adam<float> optimizer(static_cast<float>(spec.learning_rate), 0.9f,
                            0.999f, 1e-8f, spec.max_grad_norm);
  Rng shuffle_rng(derive_seed(spec.seed, "shuffle"));
  for (std::size_t epoch = 1; epoch <= spec.epochs; ++epoch) {
    nn::EpochMetrics tm = nn::train_epoch(outcome.net, train.x, train.y,
                                          spec.batch_size, optimizer,
                                          shuffle_rng);
    nn::EpochMetrics vm = nn::evaluate_epoch(outcome.net, val.x, val.y,
                                             spec.batch_size);
    outcome.curves.push_back(
        {epoch, tm.mean_loss, tm.accuracy, vm.mean_loss, vm.accuracy});
  }

  nn::Tensor<float> test_scores =
      predict_scores(outcome.net, test.x, spec.batch_size);
  auto predicted = nn::argmax_rows(test_scores);
  auto truth = nn::argmax_rows(test.y);
  outcome.test_metrics = Metrics::from_pairs(truth, predicted, num_classes);
  return outcome;
}

Metrics evaluate_classifier(nn::Network<float>& net, const Vocabulary& vocab,
                            const std::vector<LabeledText>& data,
                            std::size_t batch_size,
                            const Stopwords& stopwords) {
  std::vector<std::string> texts(data.size());
  std::vector<std::size_t> labels(data.size());
  std::size_t num_classes = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    texts[i] = data[i].text;
    labels[i] = data[i].label;
    num_classes = std::max(num_classes, data[i].label + 1);
  }
  nn::Tensor<float> x = encode_texts(texts, vocab, net.input_len(), stopwords);
  nn::Tensor<float> scores = predict_scores(net, x, batch_size);
  if (scores.dim(1) < num_classes) {
    throw DataError("labels outside the model's class set");
  }
  num_classes = scores.dim(1);
  auto predicted = nn::argmax_rows(scores);
  return Metrics::from_pairs(labels, predicted, num_classes);
}

std::vector<Prediction> classify_two_stage(TwoStageModel& model,
                                           std::span<const std::string> texts,
                                           const Stopwords& stopwords,
                                           std::size_t batch_size) {
  const std::size_t n = texts.size();
  std::vector<Prediction> out(n);
  if (n == 0) return out;

  std::vector<std::vector<std::string>> tokens(n);
  for (std::size_t i = 0; i < n; ++i) {
    tokens[i] = clean_tweet(texts[i], stopwords).tokens;
    out[i].low_confidence = tokens[i].empty();
  }

  auto encode_with = [&](const Vocabulary& vocab, std::size_t L,
                         std::span<const std::size_t> subset) {
    nn::Tensor<float> x({subset.size(), L});
    for (std::size_t i = 0; i < subset.size(); ++i) {
      auto encoded = encode_and_pad(tokens[subset[i]], vocab, L);
      for (std::size_t k = 0; k < L; ++k) {
        x.at(i, k) = static_cast<float>(encoded[k]);
      }
    }
    return x;
  };

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  nn::Tensor<float> xa = encode_with(model.a.vocab, model.a.net.input_len(), all);
  nn::Tensor<float> sa = predict_scores(model.a.net, xa, batch_size);

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    out[i].polarity_scores = {sa.at(i, 0), sa.at(i, 1)};
    out[i].polarity = sa.at(i, 1) > sa.at(i, 0) ? Polarity::Positive
                                                : Polarity::Negative;
    (out[i].polarity == Polarity::Positive ? pos : neg).push_back(i);
  }

  auto run_stage = [&](Stage stage, StageModel& m,
                       std::span<const std::size_t> subset) {
    if (subset.empty()) return;
    nn::Tensor<float> x = encode_with(m.vocab, m.net.input_len(), subset);
    nn::Tensor<float> s = predict_scores(m.net, x, batch_size);
    for (std::size_t i = 0; i < subset.size(); ++i) {
      Prediction& p = out[subset[i]];
      p.emotion_scores.assign(s.data.begin() + i * s.dim(1),
                              s.data.begin() + (i + 1) * s.dim(1));
      std::size_t best = 0;
      for (std::size_t k = 1; k < s.dim(1); ++k) {
        if (s.at(i, k) > s.at(i, best)) best = k;
      }
      p.emotion = stage_emotion_of_class(stage, best);
    }
  };
  run_stage(Stage::B, model.b, pos);
  run_stage(Stage::C, model.c, neg);
  return out;
}

Prediction classify_two_stage_one(TwoStageModel& model, std::string_view text,
                                  const Stopwords& stopwords) {
  std::vector<std::string> texts{std::string(text)};
  return classify_two_stage(model, texts, stopwords)[0];
}

}  // namespace tweetsent
