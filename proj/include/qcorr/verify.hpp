#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/optimizer.hpp"

namespace qcorr {

enum class VerifySuite { Identities, Additivity, Oracles };

VerifySuite parse_suite(std::string_view name);

struct VerifyFailure {
  std::string check;
  std::string detail;
  std::filesystem::path state_file;  // the offending state, serialized
};

struct VerifySummary {
  int checks = 0;
  std::vector<VerifyFailure> failures;
  bool ok() const { return failures.empty(); }
};

inline constexpr double kIdentityTol = 1e-9;

/// Runs one invariant suite over `trials` random two-qubit states (the
/// oracle suite uses a fixed table of states and ignores `trials`).
/// Failing states are written as JSON under `failure_dir`.
VerifySummary run_verify(VerifySuite suite, std::uint64_t seed, int trials, const std::filesystem::path& failure_dir,
                         const OptimizerSettings& settings = {});

}  // namespace qcorr
