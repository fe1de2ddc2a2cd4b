#pragma once

#include <string>
#include <string_view>

#include "settle/scenario.hpp"

namespace settle {

/// Parsed scenario configuration plus process-level settings that live
/// outside the engine (the field modulus is installed once at startup).
struct LoadedConfig {
    ScenarioConfig scenario;
    std::string field_modulus_decimal; // empty = BN254 default
};

/// Sectioned key/value text: `[section]` headers, `key = value` lines,
/// `#` comments. Unknown sections or keys are hard errors carrying the line
/// number. See configs/ for the full schema.
LoadedConfig parse_config_text(std::string_view text, const std::string& origin);
LoadedConfig load_config_file(const std::string& path);

/// `--set section.key=value` override; same key table as the file parser.
void apply_override(LoadedConfig& config, std::string_view dotted_key, std::string_view value);

} // namespace settle
