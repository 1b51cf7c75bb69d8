// tweetsent CLI: ingest, preprocess, train, evaluate, classify, emoticon
// validation, and per-country analytics over tweet corpora.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "tweetsent/analytics.hpp"
#include "tweetsent/checkpoint.hpp"
#include "tweetsent/common.hpp"
#include "tweetsent/config.hpp"
#include "tweetsent/embeddings.hpp"
#include "tweetsent/emoticons.hpp"
#include "tweetsent/ingest.hpp"
#include "tweetsent/manifest.hpp"
#include "tweetsent/metrics.hpp"
#include "tweetsent/nn/gradcheck.hpp"
#include "tweetsent/pipeline.hpp"
#include "tweetsent/preprocess.hpp"
#include "tweetsent/validate.hpp"

namespace fs = std::filesystem;
using namespace tweetsent;

namespace {

struct Context {
  RunConfig config = RunConfig::defaults();
  fs::path output_dir;
  RunManifest manifest;

  fs::path out_path(const std::string& name) {
    manifest.outputs.push_back(name);
    return output_dir / name;
  }

  void note_input(const fs::path& p) { manifest.inputs.push_back(p); }

  void finish(const std::string& subcommand) {
    manifest.subcommand = subcommand;
    manifest.config = &config;
    fs::create_directories(output_dir);
    manifest.write(output_dir / "manifest.json");
  }
};

const Stopwords& stopwords_for(const RunConfig& cfg) {
  static std::optional<Stopwords> loaded;
  const std::string path = cfg.get_string("paths.stopwords");
  if (path.empty()) return Stopwords::builtin();
  if (!loaded) loaded = Stopwords::load(path);
  return *loaded;
}

const EmoticonLexicon& lexicon_for(const RunConfig& cfg) {
  static std::optional<EmoticonLexicon> loaded;
  const std::string path = cfg.get_string("paths.lexicon");
  if (path.empty()) return EmoticonLexicon::builtin();
  if (!loaded) loaded = EmoticonLexicon::from_file(path);
  return *loaded;
}

nlohmann::json metrics_to_json(const Metrics& m) {
  return nlohmann::json{{"accuracy", m.accuracy},
                        {"f1_positive", m.f1_positive},
                        {"f1_macro", m.f1_macro},
                        {"confusion", m.confusion}};
}

nlohmann::json report_to_json(const ValidationReport& r) {
  return nlohmann::json{{"corpus_size", r.corpus_size},
                        {"no_emoticon", r.no_emoticon},
                        {"positive", r.positive},
                        {"negative", r.negative},
                        {"mixed", r.mixed},
                        {"evaluated", r.evaluated},
                        {"excluded_disgust", r.excluded_disgust},
                        {"class_names", r.class_names},
                        {"metrics", metrics_to_json(r.metrics)}};
}

std::vector<LabeledText> load_stage_data(Stage stage, const fs::path& input,
                                         ParseStats* stats_out,
                                         std::size_t* dropped_out) {
  std::vector<LabeledText> data;
  ParseStats stats;
  std::size_t dropped = 0;
  if (stage == Stage::A) {
    stats = parse_sentiment140(input, [&](LabeledPolarityRecord&& r) {
      data.push_back({std::move(r.text),
                      r.polarity == Polarity::Positive ? 1u : 0u});
    });
  } else {
    stats = parse_emotional_tweets(input, [&](LabeledEmotionRecord&& r) {
      auto cls = stage_class_of_emotion(stage, r.emotion);
      if (cls) {
        data.push_back({std::move(r.text), *cls});
      } else {
        ++dropped;
      }
    });
  }
  if (stats_out) *stats_out = stats;
  if (dropped_out) *dropped_out = dropped;
  return data;
}

ClassifierSpec spec_from_config(const RunConfig& cfg, Stage stage,
                                const std::string& variant) {
  ClassifierSpec spec;
  spec.stage = stage;
  spec.variant = variant_from_string(
      variant.empty() ? cfg.get_string("model.variant") : variant);
  spec.epochs = static_cast<std::size_t>(cfg.get_int("model.epochs"));
  spec.seed = cfg.seed();
  spec.test_fraction = cfg.get_double("model.test_fraction");
  spec.val_fraction = cfg.get_double("model.val_fraction");
  spec.sequence_length =
      static_cast<std::size_t>(cfg.get_int("model.sequence_length"));
  spec.embed_dim = static_cast<std::size_t>(cfg.get_int("model.embed_dim"));
  spec.lstm_units = static_cast<std::size_t>(cfg.get_int("model.lstm_units"));
  spec.batch_size = static_cast<std::size_t>(cfg.get_int("model.batch_size"));
  spec.learning_rate = cfg.get_double("model.learning_rate");
  spec.dropout = cfg.get_double("model.dropout");
  spec.recurrent_dropout = cfg.get_double("model.recurrent_dropout");
  spec.vocab_max = static_cast<std::size_t>(cfg.get_int("model.vocab_max"));
  spec.loss = nn::loss_from_name(cfg.get_string("model.loss"));
  spec.class_weighted = cfg.get_bool("model.class_weighted");
  spec.max_grad_norm = cfg.get_double("model.max_grad_norm");
  spec.embeddings_path = cfg.get_string("paths.embeddings");
  return spec;
}

StageModel load_stage_model(const RunConfig& cfg, char stage_letter) {
  const std::string key(1, stage_letter);
  const std::string ckpt = cfg.get_string("paths.checkpoint_" + key);
  const std::string vocab = cfg.get_string("paths.vocab_" + key);
  if (ckpt.empty() || vocab.empty()) {
    throw UsageError("paths.checkpoint_" + key + " and paths.vocab_" + key +
                     " must be set");
  }
  return StageModel{load_checkpoint(ckpt), Vocabulary::load(vocab)};
}

std::vector<TweetRecord> read_corpus(Context& ctx, const fs::path& input) {
  std::vector<TweetRecord> records;
  ctx.note_input(input);
  ParseStats stats = parse_canonical_csv(
      input, [&](TweetRecord&& r) { records.push_back(std::move(r)); });
  if (stats.rejected > 0) {
    std::cerr << "warning: " << stats.rejected << " rejected records in "
              << input << '\n';
  }
  return records;
}

std::string join_scores(std::span<const float> scores) {
  std::string out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (i) out.push_back(';');
    out += std::to_string(scores[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_ingest_stats(Context& ctx, const std::string& dataset,
                     const fs::path& input) {
  ctx.note_input(input);
  nlohmann::json j;
  if (dataset == "sentiment140") {
    ParseStats stats;
    auto counts = dataset_stats_polarity(input, &stats);
    j["dataset"] = "sentiment140";
    j["total"] = counts.total;
    j["rejected"] = stats.rejected;
    for (const auto& [label, n] : counts.counts) {
      j["classes"][std::string(to_string(label))] = n;
    }
  } else if (dataset == "emotional") {
    ParseStats stats;
    auto counts = dataset_stats_emotion(input, &stats);
    j["dataset"] = "emotional";
    j["total"] = counts.total;
    j["rejected"] = stats.rejected;
    for (const auto& [label, n] : counts.counts) {
      j["classes"][std::string(to_string(label))] = n;
    }
  } else if (dataset == "hashtag") {
    std::size_t total = 0;
    std::map<std::string, std::size_t> by_country;
    HashtagCsvOptions options;
    const std::string map_path = ctx.config.get_string("paths.location_map");
    if (!map_path.empty()) {
      options.location_to_country = load_location_map(map_path);
      ctx.note_input(map_path);
    }
    ParseStats stats = parse_hashtag_csv(input, [&](TweetRecord&& r) {
      ++total;
      ++by_country[r.country.value_or(kUnassignedCountry)];
    }, options);
    j["dataset"] = "hashtag";
    j["total"] = total;
    j["rejected"] = stats.rejected;
    j["by_country"] = by_country;
  } else {
    throw UsageError("unknown dataset kind: " + dataset);
  }
  std::cout << j.dump(2) << '\n';
  std::ofstream out(ctx.out_path("stats.json"));
  out << j.dump(2) << '\n';
  ctx.finish("ingest-stats");
  return 0;
}

int cmd_preprocess(Context& ctx, const fs::path& input,
                   const std::string& format) {
  std::vector<TweetRecord> records;
  ctx.note_input(input);
  HashtagCsvOptions options;
  const std::string map_path = ctx.config.get_string("paths.location_map");
  if (!map_path.empty()) {
    options.location_to_country = load_location_map(map_path);
    ctx.note_input(map_path);
  }
  ParseStats stats;
  if (format == "hashtag") {
    stats = parse_hashtag_csv(
        input, [&](TweetRecord&& r) { records.push_back(std::move(r)); },
        options);
  } else if (format == "canonical") {
    stats = parse_canonical_csv(
        input, [&](TweetRecord&& r) { records.push_back(std::move(r)); });
  } else {
    throw UsageError("unknown input format: " + format);
  }

  PreprocessOptions popts;
  const Stopwords& sw = stopwords_for(ctx.config);
  popts.stopwords = &sw;
  popts.emoticon_ranges = ctx.config.emoticon_ranges();
  PreprocessSummary summary = preprocess_corpus(records, popts);

  std::ofstream out(ctx.out_path("preprocessed.csv"), std::ios::binary);
  write_canonical_csv(out, records);

  nlohmann::json j{{"records", summary.records},
                   {"rejected_input_lines", stats.rejected},
                   {"empty_cleaned", summary.empty_cleaned},
                   {"mentions_removed", summary.totals.mentions_removed},
                   {"non_ascii_runs_replaced",
                    summary.totals.non_ascii_runs_replaced},
                   {"stopwords_removed", summary.totals.stopwords_removed},
                   {"emoticons_extracted",
                    summary.totals.emoticons_extracted}};
  std::cout << j.dump(2) << '\n';
  ctx.finish("preprocess");
  return 0;
}

int cmd_train(Context& ctx, const std::string& stage_str,
              const std::string& variant, const fs::path& input) {
  const Stage stage = stage_from_string(stage_str);
  ctx.note_input(input);

  ParseStats stats;
  std::size_t dropped = 0;
  std::vector<LabeledText> data = load_stage_data(stage, input, &stats, &dropped);

  const auto per_class = static_cast<std::size_t>(
      ctx.config.get_int("model.subsample_per_class"));
  if (per_class > 0) {
    data = subsample_balanced(data, stage_num_classes(stage), per_class,
                              ctx.config.seed());
  }

  ClassifierSpec spec = spec_from_config(ctx.config, stage, variant);
  if (variant_needs_pretrained(spec.variant)) {
    ctx.note_input(spec.embeddings_path);
  }
  TrainOutcome outcome = train_classifier(spec, data, stopwords_for(ctx.config));

  const std::string suffix = to_lower_ascii(stage_str);
  fs::create_directories(ctx.output_dir);
  const fs::path ckpt = ctx.out_path("checkpoint_" + suffix + ".bin");
  save_checkpoint(outcome.net, ckpt);
  outcome.vocab.save(ctx.out_path("vocab_" + suffix + ".tsv"));

  {
    std::ofstream curves(ctx.out_path("curves_" + suffix + ".csv"));
    curves << "epoch,train_loss,train_accuracy,val_loss,val_accuracy\n";
    for (const auto& p : outcome.curves) {
      curves << p.epoch << ',' << p.train_loss << ',' << p.train_accuracy
             << ',' << p.val_loss << ',' << p.val_accuracy << '\n';
    }
  }

  nlohmann::json j{{"stage", std::string(to_string(stage))},
                   {"variant", std::string(to_string(spec.variant))},
                   {"records", data.size()},
                   {"rejected_input_lines", stats.rejected},
                   {"out_of_stage_labels", dropped},
                   {"class_support", outcome.class_support},
                   {"embedding_coverage", outcome.embedding_coverage},
                   {"test", metrics_to_json(outcome.test_metrics)}};
  {
    std::ofstream mout(ctx.out_path("metrics_" + suffix + ".json"));
    mout << j.dump(2) << '\n';
  }
  std::cout << j.dump(2) << '\n';
  ctx.finish("train");
  return 0;
}

int cmd_evaluate(Context& ctx, const std::string& stage_str,
                 const fs::path& input) {
  const Stage stage = stage_from_string(stage_str);
  ctx.note_input(input);
  StageModel model = load_stage_model(
      ctx.config, static_cast<char>(std::tolower(stage_str[0])));
  verify_checkpoint_config(
      model.net,
      static_cast<std::size_t>(ctx.config.get_int("model.sequence_length")),
      ctx.config.get_int("model.embed_dim") > 0
          ? static_cast<std::size_t>(ctx.config.get_int("model.embed_dim"))
          : variant_default_dim(
                variant_from_string(ctx.config.get_string("model.variant"))));

  std::vector<LabeledText> data = load_stage_data(stage, input, nullptr, nullptr);
  Metrics metrics = evaluate_classifier(model.net, model.vocab, data, 256,
                                        stopwords_for(ctx.config));
  nlohmann::json j = metrics_to_json(metrics);
  std::ofstream out(ctx.out_path("evaluate_" + to_lower_ascii(stage_str) +
                                 ".json"));
  out << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
  ctx.finish("evaluate");
  return 0;
}

TwoStageModel load_two_stage(const RunConfig& cfg) {
  return TwoStageModel{load_stage_model(cfg, 'a'), load_stage_model(cfg, 'b'),
                       load_stage_model(cfg, 'c')};
}

int cmd_classify(Context& ctx, const fs::path& input) {
  std::vector<TweetRecord> records = read_corpus(ctx, input);
  TwoStageModel model = load_two_stage(ctx.config);

  std::vector<std::string> texts(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    texts[i] = records[i].original_text;
  }
  std::vector<Prediction> predictions =
      classify_two_stage(model, texts, stopwords_for(ctx.config));

  std::ofstream out(ctx.out_path("predictions.csv"), std::ios::binary);
  out << "tweet_id,polarity,p_negative,p_positive,emotion,e_scores,"
         "low_confidence\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Prediction& p = predictions[i];
    std::vector<std::string> fields{
        records[i].tweet_id,
        std::string(to_string(p.polarity)),
        std::to_string(p.polarity_scores[0]),
        std::to_string(p.polarity_scores[1]),
        std::string(to_string(p.emotion)),
        join_scores(p.emotion_scores),
        p.low_confidence ? "1" : "0"};
    write_csv_record(out, fields);
  }
  std::cout << "classified " << records.size() << " records\n";
  ctx.finish("classify");
  return 0;
}

int cmd_validate(Context& ctx, const fs::path& input, bool emotions_too) {
  std::vector<TweetRecord> records = read_corpus(ctx, input);
  // preprocess in place when the corpus lacks cleaned text / emoticons
  bool needs_prep = false;
  for (const auto& r : records) {
    if (!r.cleaned_text || !r.emoticons) {
      needs_prep = true;
      break;
    }
  }
  if (needs_prep) {
    PreprocessOptions popts;
    const Stopwords& sw = stopwords_for(ctx.config);
    popts.stopwords = &sw;
    popts.emoticon_ranges = ctx.config.emoticon_ranges();
    preprocess_corpus(records, popts);
  }

  TwoStageModel model = load_two_stage(ctx.config);
  const EmoticonLexicon& lexicon = lexicon_for(ctx.config);
  const Stopwords& sw = stopwords_for(ctx.config);

  auto polarity_clf = [&](const TweetRecord& rec) {
    return classify_two_stage_one(model, rec.original_text, sw).polarity;
  };
  ValidationReport polarity_report =
      validate_polarity(polarity_clf, records, lexicon);

  nlohmann::json j{{"polarity", report_to_json(polarity_report)}};
  std::cout << "== polarity validation ==\n";
  polarity_report.print(std::cout);

  if (emotions_too) {
    auto emo_clf = [&](const TweetRecord& rec) {
      return classify_two_stage_one(model, rec.original_text, sw).emotion;
    };
    ValidationReport emotion_report =
        validate_emotions(emo_clf, emo_clf, records, lexicon);
    j["emotions"] = report_to_json(emotion_report);
    std::cout << "== emotion validation (extension) ==\n";
    emotion_report.print(std::cout);
  }

  std::ofstream out(ctx.out_path("validation.json"));
  out << j.dump(2) << '\n';
  ctx.finish("validate-emoticons");
  return 0;
}

std::vector<ClassifiedTweet> join_predictions(Context& ctx,
                                              const fs::path& records_path,
                                              const fs::path& predictions_path) {
  std::vector<TweetRecord> records = read_corpus(ctx, records_path);
  std::unordered_map<std::string, const TweetRecord*> by_id;
  by_id.reserve(records.size());
  for (const auto& r : records) by_id[r.tweet_id] = &r;

  ctx.note_input(predictions_path);
  std::ifstream in(predictions_path, std::ios::binary);
  if (!in) throw DataError("cannot open predictions: " + predictions_path.string());
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::vector<ClassifiedTweet> out;
  bool header = true;
  std::size_t unmatched = 0;
  while (reader.next(fields)) {
    if (header) {
      header = false;
      continue;
    }
    if (fields.size() < 5) continue;
    auto it = by_id.find(fields[0]);
    if (it == by_id.end()) {
      ++unmatched;
      continue;
    }
    auto polarity = polarity_from_string(fields[1]);
    auto emotion = emotion_from_string(fields[4]);
    if (!polarity || !emotion) {
      throw DataError("bad prediction row for tweet " + fields[0]);
    }
    out.push_back(ClassifiedTweet{it->second->country.value_or(""),
                                  it->second->time_utc, *polarity, *emotion});
  }
  if (unmatched > 0) {
    std::cerr << "warning: " << unmatched
              << " predictions had no matching record\n";
  }
  return out;
}

NormalizationMode normalization_from_config(const RunConfig& cfg) {
  const std::string mode = cfg.get_string("analytics.normalization");
  if (mode == "period-total") return NormalizationMode::PeriodTotal;
  if (mode == "day-total") return NormalizationMode::DayTotal;
  throw UsageError("analytics.normalization must be period-total or day-total");
}

std::vector<std::pair<std::string, std::string>> pairs_from_config(
    const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> pairs;
  const std::string spec = cfg.get_string("analytics.pairs");
  std::size_t begin = 0;
  while (begin < spec.size()) {
    std::size_t comma = spec.find(',', begin);
    std::string part =
        spec.substr(begin, comma == std::string::npos ? comma : comma - begin);
    std::size_t dash = part.find('-');
    if (dash == std::string::npos) {
      throw UsageError("pair must be 'XX-YY': " + part);
    }
    pairs.emplace_back(part.substr(0, dash), part.substr(dash + 1));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return pairs;
}

int cmd_aggregate(Context& ctx, const fs::path& records_path,
                  const fs::path& predictions_path) {
  auto tweets = join_predictions(ctx, records_path, predictions_path);
  auto counts = aggregate_daily(tweets);

  std::map<std::string, DailySeries> normalized;
  const NormalizationMode mode = normalization_from_config(ctx.config);
  for (const auto& [country, series] : counts) {
    normalized.emplace(country, normalize(series, mode));
  }

  {
    std::ofstream out(ctx.out_path("daily_counts.csv"));
    write_series_csv(out, counts);
  }
  {
    std::ofstream out(ctx.out_path("series_normalized.csv"));
    write_series_csv(out, normalized);
  }
  {
    std::ofstream out(ctx.out_path("averages.csv"));
    write_averages_csv(out, normalized);
  }
  std::cout << "aggregated " << tweets.size() << " classified tweets across "
            << counts.size() << " countries\n";
  ctx.finish("aggregate");
  return 0;
}

int cmd_correlate(Context& ctx, const fs::path& series_path) {
  ctx.note_input(series_path);
  std::ifstream in(series_path, std::ios::binary);
  if (!in) throw DataError("cannot open series: " + series_path.string());
  auto series = read_series_csv(in);
  auto pairs = pairs_from_config(ctx.config);
  CorrelationTable table = correlation_table(series, pairs);

  {
    std::ofstream out(ctx.out_path("correlations.csv"));
    write_correlations_csv(out, table);
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : table.entries) {
    nlohmann::json entry{{"pair", e.country_a + "-" + e.country_b},
                         {"class", std::string(to_string(e.cls))},
                         {"common_days", e.common_days}};
    if (e.r) {
      entry["r"] = *e.r;
    } else {
      entry["r"] = nullptr;
    }
    j.push_back(std::move(entry));
  }
  {
    std::ofstream out(ctx.out_path("correlations.json"));
    out << j.dump(2) << '\n';
  }
  std::cout << j.dump(2) << '\n';
  ctx.finish("correlate");
  return 0;
}

int cmd_export_plot_data(Context& ctx, const fs::path& records_path,
                         const fs::path& predictions_path) {
  auto tweets = join_predictions(ctx, records_path, predictions_path);
  auto counts = aggregate_daily(tweets);
  const NormalizationMode mode = normalization_from_config(ctx.config);
  std::map<std::string, DailySeries> normalized;
  for (const auto& [country, series] : counts) {
    normalized.emplace(country, normalize(series, mode));
  }
  {
    std::ofstream out(ctx.out_path("series_normalized.csv"));
    write_series_csv(out, normalized);
  }
  {
    std::ofstream out(ctx.out_path("averages.csv"));
    write_averages_csv(out, normalized);
  }
  const double scale_max = ctx.config.get_double("analytics.scale_max");
  {
    std::ofstream out(ctx.out_path("stacked_emotions.csv"));
    out << "country,date,stack,level,value\n";
    for (const auto& [country, series] : counts) {
      StackedEmotions stacked = stacked_emotions(series, scale_max);
      std::ostringstream tmp;
      write_stacked_csv(tmp, stacked);
      std::string body = tmp.str();
      out << body.substr(body.find('\n') + 1);  // drop per-country header
    }
  }
  {
    auto pairs = pairs_from_config(ctx.config);
    CorrelationTable table = correlation_table(normalized, pairs);
    std::ofstream out(ctx.out_path("correlations.csv"));
    write_correlations_csv(out, table);
  }
  std::cout << "plot data exported for " << counts.size() << " countries\n";
  ctx.finish("export-plot-data");
  return 0;
}

int run_self_test(Context& ctx) {
  // lexicon consistency
  const EmoticonLexicon& lex = lexicon_for(ctx.config);
  if (lex.size() < 23) {
    std::cerr << "self-test: lexicon has " << lex.size()
              << " entries, expected >= 23\n";
    return 3;
  }
  for (const auto& entry : lex.entries()) {
    Polarity via_emotion = polarity_of(entry.emotion);
    auto looked_up = lex.emotion_of(entry.codepoint);
    if (!looked_up || polarity_of(*looked_up) != via_emotion) {
      std::cerr << "self-test: lexicon inconsistency at "
                << codepoint_to_string(entry.codepoint) << '\n';
      return 3;
    }
  }
  std::cout << "lexicon consistency: ok (" << lex.size() << " entries)\n";

  // gradient check on a toy LSTM classifier and the baseline
  for (ModelVariant variant :
       {ModelVariant::LstmScratch, ModelVariant::DnnBaseline}) {
    ModelBuildConfig cfg;
    cfg.variant = variant;
    cfg.num_classes = 3;
    cfg.vocab_size = 12;
    cfg.embed_dim = 5;
    cfg.sequence_length = 6;
    cfg.lstm_units = 4;
    cfg.baseline_dense = {8, 4};
    cfg.seed = ctx.config.has("seed") ? ctx.config.seed() : 7;
    auto net = build_model<double>(cfg);

    Rng rng(derive_seed(cfg.seed, "selftest"));
    nn::Tensor<double> x({3, cfg.sequence_length});
    std::uniform_int_distribution<int> tok(0, 11);
    for (auto& v : x.data) v = tok(rng);
    nn::Tensor<double> y({3, 3});
    for (std::size_t b = 0; b < 3; ++b) y.at(b, b % 3) = 1.0;

    auto report = nn::gradient_check(net, x, y, 1e-5, 1e-4, 400, rng);
    std::cout << "gradient check (" << to_string(variant)
              << "): max rel err " << report.max_rel_err << " over "
              << report.checked << " parameters -> "
              << (report.pass ? "ok" : "FAIL") << '\n';
    if (!report.pass) {
      std::cerr << "self-test: gradient check failed: " << report.worst
                << '\n';
      return 3;
    }
  }
  std::cout << "self-test passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tweet sentiment & emotion analysis pipeline"};
  app.require_subcommand(0, 1);
  app.allow_extras();

  std::string config_path;
  std::string output_dir;
  std::int64_t seed = -1;
  bool self_test = false;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--output-dir", output_dir, "artifact directory");
  app.add_option("--seed", seed, "master seed (required unless in config)");
  app.add_flag("--self-test", self_test,
               "run gradient & lexicon checks, then exit");
  app.add_option("--set", sets, "override config key: dotted.key=value");

  std::string dataset = "sentiment140";
  std::string stage_str = "A";
  std::string variant;
  std::string format = "hashtag";
  std::string input, records_path, predictions_path, series_path;
  bool with_emotions = false;

  CLI::App* sc_stats = app.add_subcommand("ingest-stats",
                                          "parse a corpus and report counts");
  sc_stats->add_option("--dataset", dataset,
                       "sentiment140 | emotional | hashtag");
  sc_stats->add_option("--input", input, "corpus file")->required();

  CLI::App* sc_prep = app.add_subcommand(
      "preprocess", "clean a corpus into canonical records CSV");
  sc_prep->add_option("--input", input, "corpus file")->required();
  sc_prep->add_option("--format", format, "hashtag | canonical");

  CLI::App* sc_train = app.add_subcommand("train", "train one classifier");
  sc_train->add_option("--stage", stage_str, "A | B | C")->required();
  sc_train->add_option("--variant", variant, "model variant");
  sc_train->add_option("--input", input, "labeled dataset")->required();
  sc_train->add_option("--embeddings", predictions_path,
                       "pretrained vector file (overrides paths.embeddings)");

  CLI::App* sc_eval = app.add_subcommand("evaluate",
                                         "evaluate a trained checkpoint");
  sc_eval->add_option("--stage", stage_str, "A | B | C")->required();
  sc_eval->add_option("--input", input, "labeled dataset")->required();

  CLI::App* sc_classify = app.add_subcommand(
      "classify", "two-stage classification of a canonical corpus");
  sc_classify->add_option("--input", input, "canonical records CSV")
      ->required();

  CLI::App* sc_validate = app.add_subcommand(
      "validate-emoticons", "weak-label validation of trained models");
  sc_validate->add_option("--input", input, "canonical records CSV")
      ->required();
  sc_validate->add_flag("--emotions", with_emotions,
                        "also run the emotion-validation extension");

  CLI::App* sc_agg = app.add_subcommand("aggregate",
                                        "per-country daily series");
  sc_agg->add_option("--records", records_path, "canonical records CSV")
      ->required();
  sc_agg->add_option("--predictions", predictions_path, "predictions CSV")
      ->required();

  CLI::App* sc_corr = app.add_subcommand("correlate",
                                         "country-pair Pearson correlations");
  sc_corr->add_option("--series", series_path, "normalized tidy series CSV")
      ->required();

  CLI::App* sc_export = app.add_subcommand(
      "export-plot-data", "everything needed to redraw the figures");
  sc_export->add_option("--records", records_path, "canonical records CSV")
      ->required();
  sc_export->add_option("--predictions", predictions_path, "predictions CSV")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    Context ctx;
    if (!config_path.empty()) ctx.config = RunConfig::from_file(config_path);
    if (seed >= 0) ctx.config.set("seed", std::to_string(seed));
    for (const std::string& kv : sets) {
      std::size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        throw UsageError("--set expects dotted.key=value, got: " + kv);
      }
      ctx.config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    // leftover "--dotted.key value" pairs override config too
    std::vector<std::string> extras = app.remaining();
    for (std::size_t i = 0; i < extras.size(); ++i) {
      std::string key = extras[i];
      if (key.rfind("--", 0) != 0 || key.find('.') == std::string::npos) {
        throw UsageError("unrecognized argument: " + key);
      }
      key = key.substr(2);
      std::size_t eq = key.find('=');
      if (eq != std::string::npos) {
        ctx.config.set(key.substr(0, eq), key.substr(eq + 1));
      } else if (i + 1 < extras.size()) {
        ctx.config.set(key, extras[++i]);
      } else {
        throw UsageError("missing value for override --" + key);
      }
    }
    if (!output_dir.empty()) ctx.config.set("output_dir", output_dir);
    ctx.output_dir = ctx.config.get_string("output_dir");

    if (self_test) return run_self_test(ctx);

    if (sc_stats->parsed()) return cmd_ingest_stats(ctx, dataset, input);
    if (sc_prep->parsed()) return cmd_preprocess(ctx, input, format);
    if (sc_train->parsed()) {
      if (!predictions_path.empty()) {
        ctx.config.set("paths.embeddings", predictions_path);
      }
      return cmd_train(ctx, stage_str, variant, input);
    }
    if (sc_eval->parsed()) return cmd_evaluate(ctx, stage_str, input);
    if (sc_classify->parsed()) return cmd_classify(ctx, input);
    if (sc_validate->parsed()) return cmd_validate(ctx, input, with_emotions);
    if (sc_agg->parsed()) return cmd_aggregate(ctx, records_path,
                                               predictions_path);
    if (sc_corr->parsed()) return cmd_correlate(ctx, series_path);
    if (sc_export->parsed()) {
      return cmd_export_plot_data(ctx, records_path, predictions_path);
    }
    std::cerr << app.help() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
