#include "tweetsent/config.hpp"

#include <fstream>

#include "tweetsent/common.hpp"

namespace tweetsent {

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.tree_ = nlohmann::json{
      {"output_dir", "out"},
      {"workers", 1},
      {"paths",
       {{"stopwords", ""},
        {"lexicon", ""},
        {"sentiment140", ""},
        {"emotional_tweets", ""},
        {"corpus", ""},
        {"embeddings", ""},
        {"location_map", ""},
        {"checkpoint_a", ""},
        {"vocab_a", ""},
        {"checkpoint_b", ""},
        {"vocab_b", ""},
        {"checkpoint_c", ""},
        {"vocab_c", ""}}},
      {"model",
       {{"variant", "lstm-fasttext"},
        {"sequence_length", 280},
        {"embed_dim", 0},
        {"lstm_units", 32},
        {"batch_size", 128},
        {"epochs", 2},
        {"learning_rate", 1e-3},
        {"dropout", 0.2},
        {"recurrent_dropout", 0.2},
        {"vocab_max", 50000},
        {"loss", "cross-entropy"},
        {"class_weighted", false},
        {"max_grad_norm", 0.0},
        {"test_fraction", 0.1},
        {"val_fraction", 0.1},
        {"subsample_per_class", 0}}},
      {"preprocess", {{"emoticon_ranges", "1F300-1FAFF,2600-27BF"}}},
      {"analytics",
       {{"pairs", "US-CA,PK-IN,NO-SW"},
        {"normalization", "period-total"},
        {"scale_max", 25.0}}},
  };
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path.string());
  nlohmann::json loaded;
  try {
    in >> loaded;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config parse error in " + path.string() + ": " +
                     e.what());
  }
  RunConfig cfg = defaults();
  cfg.tree_.merge_patch(loaded);
  return cfg;
}

void RunConfig::set(std::string_view dotted_key, std::string_view value) {
  std::string pointer = "/";
  for (char c : dotted_key) pointer.push_back(c == '.' ? '/' : c);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
    if (!parsed.is_number() && !parsed.is_boolean() && !parsed.is_null() &&
        !parsed.is_string()) {
      parsed = std::string(value);
    }
  } catch (const nlohmann::json::exception&) {
    parsed = std::string(value);
  }
  tree_[nlohmann::json::json_pointer(pointer)] = parsed;
}

const nlohmann::json* RunConfig::find(std::string_view dotted_key) const {
  const nlohmann::json* cur = &tree_;
  std::size_t begin = 0;
  const std::string key(dotted_key);
  while (begin <= key.size()) {
    std::size_t dot = key.find('.', begin);
    const std::string part =
        key.substr(begin, dot == std::string::npos ? dot : dot - begin);
    if (!cur->is_object() || !cur->contains(part)) return nullptr;
    cur = &(*cur)[part];
    if (dot == std::string::npos) return cur;
    begin = dot + 1;
  }
  return nullptr;
}

bool RunConfig::has(std::string_view dotted_key) const {
  return find(dotted_key) != nullptr;
}

std::string RunConfig::get_string(std::string_view dotted_key) const {
  const nlohmann::json* v = find(dotted_key);
  if (!v) throw UsageError("missing config key: " + std::string(dotted_key));
  if (v->is_string()) return v->get<std::string>();
  return v->dump();
}

std::int64_t RunConfig::get_int(std::string_view dotted_key) const {
  const nlohmann::json* v = find(dotted_key);
  if (!v) throw UsageError("missing config key: " + std::string(dotted_key));
  if (v->is_number_integer()) return v->get<std::int64_t>();
  if (v->is_number()) return static_cast<std::int64_t>(v->get<double>());
  throw UsageError("config key " + std::string(dotted_key) +
                   " is not a number");
}

double RunConfig::get_double(std::string_view dotted_key) const {
  const nlohmann::json* v = find(dotted_key);
  if (!v) throw UsageError("missing config key: " + std::string(dotted_key));
  if (v->is_number()) return v->get<double>();
  throw UsageError("config key " + std::string(dotted_key) +
                   " is not a number");
}

bool RunConfig::get_bool(std::string_view dotted_key) const {
  const nlohmann::json* v = find(dotted_key);
  if (!v) throw UsageError("missing config key: " + std::string(dotted_key));
  if (v->is_boolean()) return v->get<bool>();
  throw UsageError("config key " + std::string(dotted_key) +
                   " is not a boolean");
}

std::uint64_t RunConfig::seed() const {
  const nlohmann::json* v = find("seed");
  if (!v || !v->is_number()) {
    throw UsageError(
        "config must state an explicit integer seed (key 'seed' or --seed); "
        "wall-clock defaults are not allowed");
  }
  return v->get<std::uint64_t>();
}

std::vector<CodepointRange> RunConfig::emoticon_ranges() const {
  const std::string spec = get_string("preprocess.emoticon_ranges");
  std::vector<CodepointRange> ranges;
  std::size_t begin = 0;
  while (begin < spec.size()) {
    std::size_t comma = spec.find(',', begin);
    const std::string part =
        spec.substr(begin, comma == std::string::npos ? comma : comma - begin);
    std::size_t dash = part.find('-');
    if (dash == std::string::npos) {
      throw UsageError("emoticon range must be LO-HI hex: " + part);
    }
    CodepointRange r{codepoint_from_string(part.substr(0, dash)),
                     codepoint_from_string(part.substr(dash + 1))};
    if (r.lo > r.hi) throw UsageError("emoticon range is inverted: " + part);
    ranges.push_back(r);
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  if (ranges.empty()) throw UsageError("no emoticon ranges configured");
  return ranges;
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical_dump()); }

}  // namespace tweetsent
