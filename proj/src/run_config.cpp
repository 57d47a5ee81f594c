#include "qbek/run_config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "qbek/errors.hpp"

namespace qbek {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
  throw ConfigError("config key '" + key + "': cannot parse '" + value +
                    "' as " + expected);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    bad_value(key, value, "a non-negative integer");
  }
  return out;
}

double parse_f64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value, "a number");
    return out;
  } catch (const std::logic_error&) {
    bad_value(key, value, "a number");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value, "a boolean (true/false)");
}

std::vector<std::uint64_t> parse_u64_list(const std::string& key,
                                          const std::string& value) {
  std::vector<std::uint64_t> out;
  if (trim(value).empty()) return out;
  std::stringstream parts(value);
  std::string item;
  while (std::getline(parts, item, ',')) {
    out.push_back(parse_u64(key, trim(item)));
  }
  return out;
}

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

template <typename T>
std::string format_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

void RunConfig::fan_out_seed() {
  encoder.seed = seed;
  training.seed = seed;
}

void RunConfig::validate() const {
  if (chunking.window_sentences < 1) {
    throw ConfigError("window_sentences must be at least 1");
  }
  if (chunking.max_input_size < 1) {
    throw ConfigError("max_input_size must be positive");
  }
  if (extraction.top_k < 1) {
    throw ConfigError("top_k must be at least 1");
  }
  if (extraction.max_span_tokens < 1) {
    throw ConfigError("max_span_tokens must be at least 1");
  }
  for (std::size_t w : sweep_windows) {
    if (w < 1) throw ConfigError("sweep_windows entries must be at least 1");
  }
  training.validate();
}

void apply_config_value(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  // Paths and names.
  if (key == "dataset") {
    cfg.dataset = value;
  } else if (key == "val_dataset") {
    cfg.val_dataset = value;
  } else if (key == "vocab") {
    cfg.vocab = value;
  } else if (key == "checkpoint") {
    cfg.checkpoint = value;
  } else if (key == "predictions") {
    cfg.predictions = value;
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "normalizer") {
    cfg.normalizer = value;
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
    // Context assembly.
  } else if (key == "window_sentences") {
    cfg.chunking.window_sentences = parse_u64(key, value);
  } else if (key == "with_query") {
    cfg.chunking.with_query = parse_bool(key, value);
  } else if (key == "max_input_size") {
    cfg.chunking.max_input_size = parse_u64(key, value);
    // Encoder shape.
  } else if (key == "num_layers") {
    cfg.encoder.num_layers = parse_u64(key, value);
  } else if (key == "hidden_size") {
    cfg.encoder.hidden_size = parse_u64(key, value);
  } else if (key == "num_heads") {
    cfg.encoder.num_heads = parse_u64(key, value);
  } else if (key == "ffn_size") {
    cfg.encoder.ffn_size = parse_u64(key, value);
  } else if (key == "max_positions") {
    cfg.encoder.max_positions = parse_u64(key, value);
  } else if (key == "dropout_rate") {
    cfg.encoder.dropout_rate = parse_f64(key, value);
  } else if (key == "shared_bias") {
    cfg.encoder.shared_bias = parse_bool(key, value);
  } else if (key == "init_std") {
    cfg.encoder.init_std = parse_f64(key, value);
    // Optimization.
  } else if (key == "learning_rate") {
    cfg.training.learning_rate = parse_f64(key, value);
  } else if (key == "weight_decay") {
    cfg.training.weight_decay = parse_f64(key, value);
  } else if (key == "beta1") {
    cfg.training.beta1 = parse_f64(key, value);
  } else if (key == "beta2") {
    cfg.training.beta2 = parse_f64(key, value);
  } else if (key == "epsilon") {
    cfg.training.epsilon = parse_f64(key, value);
  } else if (key == "batch_size") {
    cfg.training.batch_size = parse_u64(key, value);
  } else if (key == "eval_interval_steps") {
    cfg.training.eval_interval_steps = parse_u64(key, value);
  } else if (key == "patience") {
    cfg.training.patience = parse_u64(key, value);
  } else if (key == "max_steps") {
    cfg.training.max_steps = parse_u64(key, value);
  } else if (key == "selection_metric") {
    cfg.training.selection_metric = parse_selection_metric(value);
  } else if (key == "max_grad_norm") {
    cfg.training.max_grad_norm = parse_f64(key, value);
    // Extraction and sweep.
  } else if (key == "max_span_tokens") {
    cfg.extraction.max_span_tokens = parse_u64(key, value);
  } else if (key == "top_k") {
    cfg.extraction.top_k = parse_u64(key, value);
  } else if (key == "merge_mode") {
    cfg.extraction.merge_mode = parse_merge_mode(value);
  } else if (key == "sweep_windows") {
    cfg.sweep_windows.clear();
    for (std::uint64_t w : parse_u64_list(key, value)) {
      cfg.sweep_windows.push_back(static_cast<std::size_t>(w));
    }
  } else if (key == "sweep_seeds") {
    cfg.sweep_seeds = parse_u64_list(key, value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) {
    throw ConfigError("cannot open config file: " + path);
  }
  load_config_file(cfg, in, path);
}

void load_config_file(RunConfig& cfg, std::istream& in, const std::string& label) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno += 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(label + " line " + std::to_string(lineno) +
                        ": expected key=value");
    }
    try {
      apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(label + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::string effective_config(const RunConfig& cfg) {
  std::string out;
  auto put = [&out](const char* key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  put("batch_size", std::to_string(cfg.training.batch_size));
  put("beta1", format_double(cfg.training.beta1));
  put("beta2", format_double(cfg.training.beta2));
  put("checkpoint", cfg.checkpoint);
  put("dataset", cfg.dataset);
  put("dropout_rate", format_double(cfg.encoder.dropout_rate));
  put("epsilon", format_double(cfg.training.epsilon));
  put("eval_interval_steps", std::to_string(cfg.training.eval_interval_steps));
  put("ffn_size", std::to_string(cfg.encoder.ffn_size));
  put("hidden_size", std::to_string(cfg.encoder.hidden_size));
  put("init_std", format_double(cfg.encoder.init_std));
  put("learning_rate", format_double(cfg.training.learning_rate));
  put("max_grad_norm", format_double(cfg.training.max_grad_norm));
  put("max_input_size", std::to_string(cfg.chunking.max_input_size));
  put("max_positions", std::to_string(cfg.encoder.max_positions));
  put("max_span_tokens", std::to_string(cfg.extraction.max_span_tokens));
  put("max_steps", std::to_string(cfg.training.max_steps));
  put("merge_mode", to_string(cfg.extraction.merge_mode));
  put("normalizer", cfg.normalizer);
  put("num_heads", std::to_string(cfg.encoder.num_heads));
  put("num_layers", std::to_string(cfg.encoder.num_layers));
  put("out", cfg.out);
  put("patience", std::to_string(cfg.training.patience));
  put("predictions", cfg.predictions);
  put("seed", std::to_string(cfg.seed));
  put("selection_metric", to_string(cfg.training.selection_metric));
  put("shared_bias", cfg.encoder.shared_bias ? "true" : "false");
  put("sweep_seeds", format_list(cfg.sweep_seeds));
  put("sweep_windows", format_list(cfg.sweep_windows));
  put("top_k", std::to_string(cfg.extraction.top_k));
  put("val_dataset", cfg.val_dataset);
  put("vocab", cfg.vocab);
  put("weight_decay", format_double(cfg.training.weight_decay));
  put("window_sentences", std::to_string(cfg.chunking.window_sentences));
  put("with_query", cfg.chunking.with_query ? "true" : "false");
  return out;
}

void write_effective_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) {
    throw Error("cannot write effective config: " + path);
  }
  out << effective_config(cfg);
  if (!out.good()) {
    throw Error("failed writing effective config: " + path);
  }
}

}  // namespace qbek
