#pragma once

#include "mixtype/pipeline.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace mixtype {

// Run configuration: the problem itself plus output controls. Parsed from a
// flat TOML-style file with [section] headers and key = value lines.
struct RunConfig {
    ProblemSpec problem;
    std::filesystem::path output_dir = "out";
    int field_resolution = 33;
    int probe_M = 64;
};

// Raw key-value view, keys are "section.key". Kept around for error reporting.
using FlatConfig = std::map<std::string, std::string>;

FlatConfig read_flat_config(const std::filesystem::path& path); // throws ConfigError
RunConfig parse_run_config(const std::filesystem::path& path);  // throws ConfigError

} // namespace mixtype
