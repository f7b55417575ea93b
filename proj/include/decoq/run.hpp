// run.hpp — command implementations behind the CLI surface
#pragma once

#include <iosfwd>
#include <string>

#include "decoq/config.hpp"
#include "decoq/evolution.hpp"

namespace decoq {

// Exit codes: 0 success, 2 config error, 3 capacity/truncation, 4 validation
// FAIL. Config/capacity errors are thrown (ConfigError, CapacityError,
// TruncationError) and mapped by the caller.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitValidation = 4;

/// Model pieces shared by the series-driven commands.
struct PreparedModel {
    QOperator h;
    QOperator rho0;
    InitialCondition ic;
    std::vector<int> truncations;
    double leakage = 0.0;
    std::vector<std::string> warnings;
};
PreparedModel prepare_model(const ExperimentConfig& cfg);

int cmd_td(const ExperimentConfig& cfg, std::ostream& out);
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out);
int cmd_validate(const ExperimentConfig& cfg, std::ostream& out);
int cmd_fig1(const std::string& out_dir, std::ostream& out);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, int workers);

/// Renders a series in the configured format (CSV: header `t,entropy`).
std::string render_series_csv(const EntropySeries& s);
std::string render_series_json(const EntropySeries& s, const std::string& model_name);

/// Throws ConfigError when a report document does not match the report shape.
void check_report_schema(const nlohmann::json& report);

} // namespace decoq
