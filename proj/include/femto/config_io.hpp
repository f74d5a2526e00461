#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "femto/config.hpp"

namespace femto {

/// "key=value" pairs applied after the file is read.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Splits "key=value"; throws ConfigError when there is no '='.
std::pair<std::string, std::string> split_override(const std::string& text);

/// Sets one parameter from its text form. Throws ConfigError for unknown keys
/// and malformed values.
void apply_setting(NetworkConfig& config, const std::string& key, const std::string& value);

/// Flat key=value text, one parameter per line, '#' starts a comment. Starts
/// from the built-in defaults, so an empty text yields the default network.
/// Errors carry the line number. The result is validated.
NetworkConfig parse_config_text(std::string_view text, const Overrides& overrides = {});

/// Reads a key=value file, or a run manifest (a JSON object, optionally with
/// the parameters under "config").
NetworkConfig parse_config_file(const std::filesystem::path& path, const Overrides& overrides = {});

NetworkConfig default_config(const Overrides& overrides = {});

/// key=value text that parse_config_text maps back to an identical config.
std::string format_config(const NetworkConfig& config);

nlohmann::ordered_json config_to_json(const NetworkConfig& config);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

}  // namespace femto
