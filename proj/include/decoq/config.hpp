// config.hpp — experiment configuration: JSON schema in, validated specs out
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "decoq/models.hpp"

namespace decoq {

enum class OutputFormat { csv, json };

struct RunParams {
    double t_max = 2.0;
    int steps = 400;
    double eps_s = 0.05;
};

struct SweepParams {
    std::string parameter; // dotted path into the config document
    std::vector<double> values;
};

struct OutputParams {
    OutputFormat format = OutputFormat::csv;
    std::string path; // empty = stdout
};

struct ExperimentConfig {
    std::variant<PureDephasingSpec, CavityThermalSpec, SpinBosonSpec> model;
    RunParams run;
    std::optional<SweepParams> sweep;
    OutputParams output;
    nlohmann::json document;  // normalized source document
    std::string model_hash;   // FNV-1a of the canonical dump

    const char* model_name() const;
};

/// Parses and validates; throws ConfigError with a field-path message.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Replaces the numeric leaf at a dotted path (digit tokens index arrays).
/// Throws ConfigError if the path does not resolve to a number.
nlohmann::json with_path_value(const nlohmann::json& j, const std::string& path, double value);

/// FNV-1a over the canonical (sorted-key) dump.
std::string canonical_hash(const nlohmann::json& j);

/// %.17g formatting used for all CSV numbers.
std::string fmt17(double v);

} // namespace decoq
