#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "errw/cli/config.hpp"

namespace errw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIdentity = 2;
inline constexpr int kExitIo = 3;

struct IdentityCheck {
  std::string name;
  std::uint64_t cases = 0;
  bool passed = true;
  std::string detail;
};

std::vector<IdentityCheck> run_identity_checks(const ExperimentConfig& config);

/// kExitOk when every check passed, kExitIdentity otherwise.
int identity_exit_code(const std::vector<IdentityCheck>& checks);

/// Runs one configured experiment and writes its files. Returns the exit
/// status; throws IoError when output cannot be written.
int run(const ExperimentConfig& config, std::ostream& log);

/// Full command line handling, including the mapping of errors to exit codes.
int main_entry(int argc, char** argv);

}  // namespace errw::cli
