#pragma once

// Invariant suites for one (scheme, length-two ring) configuration.

#include <cstdint>
#include <string>
#include <vector>

#include "wittrep/clifford.hpp"

namespace wittrep {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool asserted = true;  // false for exploratory configurations
  std::string detail;
};

struct VerificationBundle {
  std::string scheme;
  std::string ring;
  int twist_exponent = 0;
  bool untwisted_law_fails = false;  // some sampled pair violates the law with i = 0
  bool exploratory = false;
  std::vector<CheckResult> checks;
  RingAnalysis analysis;

  bool passed() const;
  /// Name of the first failing asserted check, empty when passed.
  std::string first_failure() const;
};

struct VerifyOptions {
  AnalysisOptions analysis;
  std::size_t twist_samples = 1000;
  std::uint64_t sample_seed = 1;
};

/// g exp(X) g^-1 == exp(Ad(sigma^i(g_bar)) X) on `samples` random pairs; returns the failure count.
std::size_t twist_law_failures(const MatrixGroup& group, int exponent, std::size_t samples, std::uint64_t seed);

VerificationBundle run_verification(const GroupScheme& scheme, const RingPtr& ring, const VerifyOptions& options);

}  // namespace wittrep
