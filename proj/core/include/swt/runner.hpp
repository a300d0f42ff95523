#pragma once

#include "swt/config.hpp"

#include <string>

namespace swt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIdentityFailure = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitBudgetExceeded = 3;
inline constexpr int kExitUsage = 4;

// Each runner writes its reports under out_dir (created if needed) and
// returns the process exit code. Reports carry no timestamps or host info:
// equal (config, seed) pairs produce byte-identical files.
int run_identities(const ExperimentConfig& ec, const std::string& out_dir);
int run_flow(const ExperimentConfig& ec, const std::string& out_dir);
int run_screen(const ExperimentConfig& ec, const std::string& out_dir);

}  // namespace swt
