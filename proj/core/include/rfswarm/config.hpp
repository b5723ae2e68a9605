#pragma once

#include <filesystem>
#include <string>

#include "rfswarm/error.hpp"
#include "rfswarm/scenario.hpp"

namespace rfswarm {

/// The config file does not exist or cannot be read.
class ConfigFileMissing : public ConfigError {
public:
    explicit ConfigFileMissing(const std::string& path)
        : ConfigError("config", "cannot read file '" + path + "'") {}
};

/// The file is not well-formed INI, or a value does not parse.
class ConfigParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A scenario file: the scenario itself plus batch/output settings.
struct ConfigFile {
    ScenarioConfig scenario;
    std::size_t runs = 100;
    double intensity_resolution_m = 0.05;
    double intensity_margin_m = 1.0;
};

/// Parses INI text ([section] / key = value). Unset keys keep the
/// defaults of ScenarioConfig; unknown sections or keys are rejected.
/// The result is validated before it is returned.
ConfigFile parse_config_text(const std::string& text);

/// Reads and parses a config file.
ConfigFile parse_config(const std::filesystem::path& path);

}  // namespace rfswarm
