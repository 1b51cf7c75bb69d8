#ifndef TWEETSENT_MANIFEST_HPP
#define TWEETSENT_MANIFEST_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "tweetsent/config.hpp"

namespace tweetsent {

inline constexpr const char* kToolVersion = "0.1.0";

// Every run writes <output_dir>/manifest.json recording the tool version,
// subcommand, seed, config (and its hash), input-file digests, and the
// artifacts produced. Deliberately no wall-clock fields: identical runs
// produce byte-identical manifests.
struct RunManifest {
  std::string subcommand;
  const RunConfig* config = nullptr;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::string> outputs;

  void write(const std::filesystem::path& path) const;
};

std::uint64_t digest_file(const std::filesystem::path& path);

}  // namespace tweetsent

#endif
