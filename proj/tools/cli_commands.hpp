#pragma once

#include <string>

#include "cli_config.hpp"

namespace netadopt::cli {

// Exit codes: 0 success, 1 computation failure, 2 invalid input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputeError = 1;
inline constexpr int kExitBadInput = 2;

int run_solve(const ExperimentConfig& cfg);
int run_profit(const ExperimentConfig& cfg);
int run_optimize(const ExperimentConfig& cfg);
int run_figure(int id, const ExperimentConfig& cfg);
int run_finite(const ExperimentConfig& cfg);
int run_dist(const ExperimentConfig& cfg);

/// Writes content under cfg.out_dir (created if needed); returns the path.
std::string write_output(const ExperimentConfig& cfg, const std::string& file_name,
                         const std::string& content);

}  // namespace netadopt::cli
