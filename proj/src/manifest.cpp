#include "tweetsent/manifest.hpp"

#include <fstream>

#include "tweetsent/common.hpp"

namespace tweetsent {

std::uint64_t digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot digest missing file: " + path.string());
  std::uint64_t state = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    state = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())),
                    state);
  }
  return state;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["subcommand"] = subcommand;
  if (config) {
    j["seed"] = config->seed();
    j["config_hash"] = hex64(config->hash());
    j["config"] = config->tree();
  }
  j["inputs"] = nlohmann::json::array();
  for (const auto& input : inputs) {
    j["inputs"].push_back({
        {"path", input.string()},
        {"bytes", std::filesystem::file_size(input)},
        {"fnv1a64", hex64(digest_file(input))},
    });
  }
  j["outputs"] = outputs;

  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest: " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace tweetsent
