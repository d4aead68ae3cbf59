#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "tpsctl/controllability.hpp"
#include "tpsctl/network_file.hpp"
#include "tpsctl/random_network.hpp"
#include "tpsctl/verify.hpp"

namespace tpsctl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitBudget = 3;

/// Text written to standard output plus the process exit status. Reports
/// are byte-identical for identical inputs.
struct Report {
  std::string text;
  int exit_code = kExitOk;
};

/// `command` is echoed verbatim as the first line of every report.
Report cmd_drivers(const NetworkFile& file, const std::string& command);
Report cmd_eval(const NetworkFile& file, const std::string& command);

struct SolveOptions {
  Objective objective = Objective::MaxMax;
  std::uint64_t budget = kDefaultSearchBudget;
  /// Also print the inner optimum of every intervenable subset.
  bool subsets = false;
};
Report cmd_solve(const NetworkFile& file, const SolveOptions& options, const std::string& command);

struct VerifyRequest {
  Suite suite = Suite::All;
  VerifyOptions options;
  /// Seed for a random parametrization; required when the file has no CPDs.
  std::optional<std::uint64_t> seed;
};
Report cmd_verify(const NetworkFile& file, const VerifyRequest& request, const std::string& command);

/// Writes the adversarial parametrization for C*'s drivers to `out`.
Report cmd_usm(const NetworkFile& file, const std::filesystem::path& out, const std::string& command);

/// Writes a seeded random network to `out`.
Report cmd_random(std::uint64_t seed, const RandomNetworkOptions& options,
                  const std::filesystem::path& out, const std::string& command);

/// Exit status for an exception escaping a command.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace tpsctl
