#include "qbek/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbek/errors.hpp"

namespace qbek {
namespace {

constexpr char kMagic[8] = {'Q', 'B', 'E', 'K', 'C', 'K', 'P', 'T'};

void append_u32(std::string& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

void append_u64(std::string& out, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

void append_f64(std::string& out, double value) {
  append_u64(out, std::bit_cast<std::uint64_t>(value));
}

class Reader {
 public:
  Reader(const std::string& bytes, const std::string& path)
      : bytes_(bytes), path_(path) {}

  std::uint32_t read_u32() {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      value |= static_cast<std::uint32_t>(byte()) << (8 * i);
    }
    return value;
  }

  std::uint64_t read_u64() {
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
      value |= static_cast<std::uint64_t>(byte()) << (8 * i);
    }
    return value;
  }

  double read_f64() { return std::bit_cast<double>(read_u64()); }

  std::string read_bytes(std::size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw CorruptFile(path_, "unexpected end of file");
    }
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  unsigned char byte() {
    if (pos_ >= bytes_.size()) {
      throw CorruptFile(path_, "unexpected end of file");
    }
    return static_cast<unsigned char>(bytes_[pos_++]);
  }

  const std::string& bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

nlohmann::json config_to_json(const EncoderConfig& cfg) {
  return {
      {"dropout_rate", cfg.dropout_rate},
      {"ffn_size", cfg.ffn_size},
      {"hidden_size", cfg.hidden_size},
      {"init_std", cfg.init_std},
      {"max_positions", cfg.max_positions},
      {"num_heads", cfg.num_heads},
      {"num_layers", cfg.num_layers},
      {"num_segments", cfg.num_segments},
      {"seed", cfg.seed},
      {"shared_bias", cfg.shared_bias},
      {"vocab_size", cfg.vocab_size},
  };
}

EncoderConfig config_from_json(const nlohmann::json& j) {
  EncoderConfig cfg;
  cfg.dropout_rate = j.at("dropout_rate").get<double>();
  cfg.ffn_size = j.at("ffn_size").get<std::size_t>();
  cfg.hidden_size = j.at("hidden_size").get<std::size_t>();
  cfg.init_std = j.at("init_std").get<double>();
  cfg.max_positions = j.at("max_positions").get<std::size_t>();
  cfg.num_heads = j.at("num_heads").get<std::size_t>();
  cfg.num_layers = j.at("num_layers").get<std::size_t>();
  cfg.num_segments = j.at("num_segments").get<std::size_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.shared_bias = j.at("shared_bias").get<bool>();
  cfg.vocab_size = j.at("vocab_size").get<std::size_t>();
  return cfg;
}

void append_views(std::string& out, const std::vector<TensorView>& views) {
  for (const TensorView& view : views) {
    for (std::size_t i = 0; i < view.size(); ++i) {
      append_f64(out, view.data[i]);
    }
  }
}

void read_views(Reader& reader, std::vector<TensorView>& views) {
  for (TensorView& view : views) {
    for (std::size_t i = 0; i < view.size(); ++i) {
      view.data[i] = reader.read_f64();
    }
  }
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  // const_cast: parameter_views exposes mutable pointers but we only read.
  auto views = const_cast<ModelParams&>(ckpt.params).parameter_views();

  nlohmann::json tensors = nlohmann::json::array();
  for (const TensorView& view : views) {
    tensors.push_back({{"cols", view.cols},
                       {"name", view.name},
                       {"rows", view.rows}});
  }
  nlohmann::json header = {
      {"config", config_to_json(ckpt.params.config)},
      {"optimizer",
       ckpt.optimizer
           ? nlohmann::json({{"present", true}, {"t", ckpt.optimizer->t}})
           : nlohmann::json({{"present", false}})},
      {"step", ckpt.step},
      {"tensors", tensors},
      {"vocab_hash", ckpt.vocab_hash},
  };
  const std::string header_text = header.dump();

  std::string out;
  out.append(kMagic, sizeof(kMagic));
  append_u32(out, kCheckpointFormatVersion);
  append_u64(out, header_text.size());
  out += header_text;
  append_views(out, views);
  if (ckpt.optimizer) {
    auto m = const_cast<ModelParams&>(ckpt.optimizer->m).parameter_views();
    auto v = const_cast<ModelParams&>(ckpt.optimizer->v).parameter_views();
    append_views(out, m);
    append_views(out, v);
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error("cannot open for writing: " + path.string());
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  file.flush();
  if (!file) {
    throw Error("write failed: " + path.string());
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<std::uint64_t> expected_vocab_hash) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error("cannot open for reading: " + path.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(file)),
                    std::istreambuf_iterator<char>());
  if (!file.good() && !file.eof()) {
    throw Error("read failed: " + path.string());
  }

  Reader reader(bytes, path.string());
  const std::string magic = reader.read_bytes(sizeof(kMagic));
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CorruptFile(path.string(), "not a checkpoint file");
  }
  const std::uint32_t version = reader.read_u32();
  if (version != kCheckpointFormatVersion) {
    throw FormatVersionMismatch(
        path.string() + ": format version " + std::to_string(version) +
        ", this build reads version " +
        std::to_string(kCheckpointFormatVersion));
  }
  const std::uint64_t header_size = reader.read_u64();
  if (header_size > bytes.size()) {
    throw CorruptFile(path.string(), "header length exceeds file size");
  }
  const std::string header_text = reader.read_bytes(header_size);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFile(path.string(), std::string("bad header: ") + e.what());
  }

  Checkpoint ckpt;
  try {
    const EncoderConfig config = config_from_json(header.at("config"));
    config.validate();
    ckpt.params = ModelParams::zeros(config);
    ckpt.step = header.at("step").get<std::uint64_t>();
    ckpt.vocab_hash = header.at("vocab_hash").get<std::uint64_t>();

    auto views = ckpt.params.parameter_views();
    const nlohmann::json& tensors = header.at("tensors");
    if (!tensors.is_array() || tensors.size() != views.size()) {
      throw CorruptFile(path.string(),
                        "tensor manifest does not match configuration");
    }
    for (std::size_t i = 0; i < views.size(); ++i) {
      const nlohmann::json& entry = tensors.at(i);
      if (entry.at("name").get<std::string>() != views[i].name ||
          entry.at("rows").get<std::size_t>() != views[i].rows ||
          entry.at("cols").get<std::size_t>() != views[i].cols) {
        throw CorruptFile(path.string(),
                          "tensor manifest does not match configuration: " +
                              views[i].name);
      }
    }
    read_views(reader, views);

    const nlohmann::json& opt = header.at("optimizer");
    if (opt.at("present").get<bool>()) {
      OptimizerState state = OptimizerState::zeros(config);
      state.t = opt.at("t").get<std::uint64_t>();
      auto m = state.m.parameter_views();
      auto v = state.v.parameter_views();
      read_views(reader, m);
      read_views(reader, v);
      ckpt.optimizer = std::move(state);
    }
  } catch (const CorruptFile&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFile(path.string(), std::string("bad header: ") + e.what());
  } catch (const ConfigError& e) {
    throw CorruptFile(path.string(),
                      std::string("invalid configuration: ") + e.what());
  }

  if (!reader.exhausted()) {
    throw CorruptFile(path.string(), "trailing bytes after tensor payload");
  }
  if (expected_vocab_hash && ckpt.vocab_hash != *expected_vocab_hash) {
    throw VocabHashMismatch(
        "checkpoint was trained with a different vocabulary (hash mismatch)");
  }
  return ckpt;
}

}  // namespace qbek
