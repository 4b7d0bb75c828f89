#ifndef CONJPAIR_COMMANDS_HPP
#define CONJPAIR_COMMANDS_HPP

#include "conjpair/config.hpp"

#include <string>
#include <vector>

namespace conjpair::cli {

// Exit codes: 0 success, 2 config/input error, 3 numerical non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;

int cmd_mesh(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& files);
int cmd_dtn(const RunConfig& cfg);
int cmd_convergence(const RunConfig& cfg);
int cmd_check_cr(const std::string& matrix_csv, const std::string& alpha_csv);

/// Map an escaped exception onto the documented exit codes.
int exit_code_for(const std::exception& ex);

} // namespace conjpair::cli

#endif
