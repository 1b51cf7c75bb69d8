#ifndef TWEETSENT_CONFIG_HPP
#define TWEETSENT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tweetsent/preprocess.hpp"

namespace tweetsent {

// Declarative run configuration: a JSON tree with documented defaults.
// Every key is overridable on the command line by its dotted name
// ("--model.epochs 3"). The seed has no default on purpose — runs must
// state it.
class RunConfig {
 public:
  static RunConfig defaults();
  static RunConfig from_file(const std::filesystem::path& path);

  // "model.epochs" style key; value parsed as JSON scalar when possible,
  // kept as string otherwise.
  void set(std::string_view dotted_key, std::string_view value);

  bool has(std::string_view dotted_key) const;
  std::string get_string(std::string_view dotted_key) const;
  std::int64_t get_int(std::string_view dotted_key) const;
  double get_double(std::string_view dotted_key) const;
  bool get_bool(std::string_view dotted_key) const;

  // Throws UsageError when the mandatory seed is missing.
  std::uint64_t seed() const;

  std::vector<CodepointRange> emoticon_ranges() const;

  const nlohmann::json& tree() const { return tree_; }
  std::string canonical_dump() const { return tree_.dump(2); }
  std::uint64_t hash() const;

 private:
  const nlohmann::json* find(std::string_view dotted_key) const;

  nlohmann::json tree_ = nlohmann::json::object();
};

}  // namespace tweetsent

#endif
