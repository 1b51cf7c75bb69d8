#ifndef TWEETSENT_CHECKPOINT_HPP
#define TWEETSENT_CHECKPOINT_HPP

#include <filesystem>

#include "tweetsent/nn/network.hpp"

namespace tweetsent {

// Versioned binary container: magic bytes, format version, a JSON layer
// manifest, then raw little-endian float32 payloads with per-tensor shape
// headers. load(save(n)) reproduces forward outputs bit-identically.
void save_checkpoint(nn::Network<float>& net, const std::filesystem::path& path);
nn::Network<float> load_checkpoint(const std::filesystem::path& path);

// Guards a loaded checkpoint against a differently-configured run
// (e.g. a 300-dim checkpoint under a 200-dim config).
void verify_checkpoint_config(nn::Network<float>& net,
                              std::size_t expected_input_len,
                              std::size_t expected_embed_dim);

}  // namespace tweetsent

#endif
