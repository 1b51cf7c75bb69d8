#include "tweetsent/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "tweetsent/common.hpp"

namespace tweetsent {

namespace {

using nn::Activation;
using nn::Layer;
using nn::Network;
using nn::Tensor;

constexpr char kMagic[8] = {'T', 'S', 'E', 'N', 'T', 'N', 'E', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

nlohmann::json layer_descriptor(const Layer<float>& layer) {
  nlohmann::json j;
  j["kind"] = layer.kind();
  if (auto* e = dynamic_cast<const nn::Embedding<float>*>(&layer)) {
    j["vocab_size"] = e->vocab_size();
    j["dim"] = e->dim();
    j["trainable"] = e->trainable();
  } else if (auto* l = dynamic_cast<const nn::Lstm<float>*>(&layer)) {
    j["input_dim"] = l->input_dim();
    j["units"] = l->units();
    j["dropout"] = l->dropout_rate();
    j["recurrent_dropout"] = l->recurrent_dropout_rate();
  } else if (auto* d = dynamic_cast<const nn::Dense<float>*>(&layer)) {
    j["in"] = d->in_features();
    j["out"] = d->out_features();
    j["activation"] = nn::activation_name(d->activation());
  } else if (auto* p = dynamic_cast<const nn::Dropout<float>*>(&layer)) {
    j["rate"] = p->rate();
  }
  return j;
}

std::unique_ptr<Layer<float>> layer_from_descriptor(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "embedding") {
    return std::make_unique<nn::Embedding<float>>(
        j.at("vocab_size").get<std::size_t>(), j.at("dim").get<std::size_t>(),
        j.at("trainable").get<bool>());
  }
  if (kind == "lstm") {
    return std::make_unique<nn::Lstm<float>>(
        j.at("input_dim").get<std::size_t>(), j.at("units").get<std::size_t>(),
        j.at("dropout").get<double>(), j.at("recurrent_dropout").get<double>());
  }
  if (kind == "dense") {
    return std::make_unique<nn::Dense<float>>(
        j.at("in").get<std::size_t>(), j.at("out").get<std::size_t>(),
        nn::activation_from_name(j.at("activation").get<std::string>()));
  }
  if (kind == "global_max_pool") {
    return std::make_unique<nn::GlobalMaxPool<float>>();
  }
  if (kind == "dropout") {
    return std::make_unique<nn::Dropout<float>>(j.at("rate").get<double>());
  }
  throw DataError("checkpoint names unknown layer kind '" + kind + "'");
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw DataError(std::string("truncated checkpoint while reading ") + what);
  }
  return v;
}

}  // namespace

void save_checkpoint(Network<float>& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path.string());

  nlohmann::json manifest;
  manifest["loss"] = nn::loss_name(net.loss_kind());
  manifest["seed"] = net.seed();
  manifest["input_len"] = net.input_len();
  manifest["layers"] = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    manifest["layers"].push_back(layer_descriptor(*layer));
  }
  const std::string manifest_str = manifest.dump();

  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kFormatVersion);
  write_pod(out, static_cast<std::uint64_t>(manifest_str.size()));
  out.write(manifest_str.data(),
            static_cast<std::streamsize>(manifest_str.size()));

  for (Tensor<float>* tensor : net.state()) {
    write_pod(out, static_cast<std::uint32_t>(tensor->rank()));
    for (std::size_t d : tensor->shape) {
      write_pod(out, static_cast<std::uint64_t>(d));
    }
    out.write(reinterpret_cast<const char*>(tensor->data.data()),
              static_cast<std::streamsize>(tensor->size() * sizeof(float)));
  }
  if (!out) throw DataError("failed writing checkpoint: " + path.string());
}

Network<float> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path.string());

  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw DataError("not a checkpoint file: " + path.string());
  }
  const auto version = read_pod<std::uint32_t>(in, "format version");
  if (version != kFormatVersion) {
    throw DataError("unsupported checkpoint format version " +
                    std::to_string(version) + " (expected " +
                    std::to_string(kFormatVersion) + ")");
  }
  const auto manifest_len = read_pod<std::uint64_t>(in, "manifest length");
  std::string manifest_str(manifest_len, '\0');
  if (!in.read(manifest_str.data(),
               static_cast<std::streamsize>(manifest_len))) {
    throw DataError("truncated checkpoint while reading manifest");
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_str);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad checkpoint manifest: ") + e.what());
  }

  Network<float> net(manifest.at("seed").get<std::uint64_t>(),
                     nn::loss_from_name(manifest.at("loss").get<std::string>()),
                     manifest.at("input_len").get<std::size_t>());
  for (const auto& jlayer : manifest.at("layers")) {
    net.add(layer_from_descriptor(jlayer));
  }

  for (Tensor<float>* tensor : net.state()) {
    const auto rank = read_pod<std::uint32_t>(in, "tensor rank");
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) {
      d = static_cast<std::size_t>(read_pod<std::uint64_t>(in, "tensor shape"));
    }
    if (shape != tensor->shape) {
      throw DataError("checkpoint tensor shape mismatch against manifest");
    }
    if (!in.read(reinterpret_cast<char*>(tensor->data.data()),
                 static_cast<std::streamsize>(tensor->size() * sizeof(float)))) {
      throw DataError("truncated checkpoint while reading tensor payload");
    }
  }
  return net;
}

void verify_checkpoint_config(Network<float>& net,
                              std::size_t expected_input_len,
                              std::size_t expected_embed_dim) {
  if (net.input_len() != expected_input_len) {
    throw DataError("checkpoint sequence length " +
                    std::to_string(net.input_len()) +
                    " does not match configured " +
                    std::to_string(expected_input_len));
  }
  for (const auto& layer : net.layers()) {
    if (auto* e = dynamic_cast<const nn::Embedding<float>*>(layer.get())) {
      if (e->dim() != expected_embed_dim) {
        throw DataError("checkpoint embedding dimension " +
                        std::to_string(e->dim()) +
                        " does not match configured " +
                        std::to_string(expected_embed_dim));
      }
      return;
    }
  }
  throw DataError("checkpoint has no embedding layer");
}

}  // namespace tweetsent
