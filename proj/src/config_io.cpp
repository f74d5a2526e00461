#include "femto/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace femto {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("bad value for " + key + ": '" + value + "' is not a number");
  }
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& value) {
  Int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("bad value for " + key + ": '" + value + "' is not an integer");
  }
  return out;
}

std::string json_scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::pair<std::string, std::string> split_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + text + "'");
  return {trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1))};
}

void apply_setting(NetworkConfig& c, const std::string& key, const std::string& value) {
  if (key == "n_f_mean") c.n_f_mean = to_double(key, value);
  else if (key == "femtocell_count_mode") c.femtocell_count_mode = parse_count_mode(value);
  else if (key == "n_channels") c.n_channels = to_int<int>(key, value);
  else if (key == "n_macro_users") c.n_macro_users = to_int<int>(key, value);
  else if (key == "n_femto_users_per_cell") c.n_femto_users_per_cell = to_int<int>(key, value);
  else if (key == "beta_m_db") c.beta_m_db = to_double(key, value);
  else if (key == "beta_f_db") c.beta_f_db = to_double(key, value);
  else if (key == "kappa_m") c.kappa_m = to_double(key, value);
  else if (key == "noise_dbm") c.noise_dbm = to_double(key, value);
  else if (key == "r_macro_m") c.r_macro_m = to_double(key, value);
  else if (key == "r_femto_m") c.r_femto_m = to_double(key, value);
  else if (key == "alpha") c.alpha = to_double(key, value);
  else if (key == "psi") c.psi = to_double(key, value);
  else if (key == "phi") c.phi = to_double(key, value);
  else if (key == "gamma") c.gamma = to_int<int>(key, value);
  else if (key == "epsilon") c.epsilon = to_double(key, value);
  else if (key == "p_femto_const_dbm") {
    if (value == "auto") c.p_femto_const_dbm.reset();
    else c.p_femto_const_dbm = to_double(key, value);
  }
  else if (key == "min_distance_m") c.min_distance_m = to_double(key, value);
  else if (key == "seed") c.seed = to_int<std::uint64_t>(key, value);
  else if (key == "replicates") c.replicates = to_int<int>(key, value);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

NetworkConfig parse_config_text(std::string_view text, const Overrides& overrides) {
  NetworkConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    try {
      const auto [key, value] = split_override(line);
      apply_setting(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (const auto& [key, value] : overrides) apply_setting(config, key, value);
  validate(config);
  return config;
}

NetworkConfig parse_config_file(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return parse_config_text(text, overrides);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("manifest '" + path.string() + "': " + e.what());
  }
  const auto& params = doc.contains("config") ? doc["config"] : doc;
  NetworkConfig config;
  for (const auto& [key, value] : params.items()) apply_setting(config, key, json_scalar_text(value));
  for (const auto& [key, value] : overrides) apply_setting(config, key, value);
  validate(config);
  return config;
}

NetworkConfig default_config(const Overrides& overrides) {
  return parse_config_text("", overrides);
}

nlohmann::ordered_json config_to_json(const NetworkConfig& c) {
  nlohmann::ordered_json j;
  j["n_f_mean"] = c.n_f_mean;
  j["femtocell_count_mode"] = to_string(c.femtocell_count_mode);
  j["n_channels"] = c.n_channels;
  j["n_macro_users"] = c.n_macro_users;
  j["n_femto_users_per_cell"] = c.n_femto_users_per_cell;
  j["beta_m_db"] = c.beta_m_db;
  j["beta_f_db"] = c.beta_f_db;
  j["kappa_m"] = c.kappa_m;
  j["noise_dbm"] = c.noise_dbm;
  j["r_macro_m"] = c.r_macro_m;
  j["r_femto_m"] = c.r_femto_m;
  j["alpha"] = c.alpha;
  j["psi"] = c.psi;
  j["phi"] = c.phi;
  j["gamma"] = c.gamma;
  j["epsilon"] = c.epsilon;
  if (c.p_femto_const_dbm) {
    j["p_femto_const_dbm"] = *c.p_femto_const_dbm;
  } else {
    j["p_femto_const_dbm"] = "auto";
  }
  j["min_distance_m"] = c.min_distance_m;
  j["seed"] = c.seed;
  j["replicates"] = c.replicates;
  return j;
}

std::string format_config(const NetworkConfig& config) {
  std::ostringstream out;
  const auto params = config_to_json(config);
  for (const auto& [key, value] : params.items()) {
    out << key << '=' << json_scalar_text(value) << '\n';
  }
  return out.str();
}

}  // namespace femto
