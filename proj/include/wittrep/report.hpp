#pragma once

// Report emission: JSON (stable field names), CSV multisets and plain text.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wittrep/clifford.hpp"
#include "wittrep/verify.hpp"

namespace wittrep {

struct RunConfig {
  std::string command;
  std::string scheme;
  std::vector<std::string> rings;
  std::uint64_t q = 0;
  std::uint32_t r = 0;
  std::uint64_t max_order = 100000;
  std::uint64_t max_functionals = 1000000;
  std::uint64_t max_classes = 300;
  std::uint64_t seed = 1;
  std::string cache_dir;
  std::string out = "json";
  unsigned workers = 1;

  nlohmann::json to_json() const;
  /// Compact canonical JSON; identical configs give identical strings.
  std::string canonical() const { return to_json().dump(); }
};

/// [[d, count], ...] in increasing d.
nlohmann::json multiset_json(const DegreeMultiset& m);
/// `dimension,count` with a header line.
std::string multiset_csv(const DegreeMultiset& m);

nlohmann::json ring_json(const RingAnalysis& analysis);
nlohmann::json comparison_json(const ComparisonReport& report, const RunConfig& config);
nlohmann::json verification_json(const VerificationBundle& bundle);
nlohmann::json classes_json(const MatrixGroup& group, const RunConfig& config);

std::string comparison_text(const ComparisonReport& report);
std::string verification_text(const VerificationBundle& bundle);
std::string classes_text(const MatrixGroup& group);

/// Structural validation of a comparison report; returns the problems found.
std::vector<std::string> validate_comparison_json(const nlohmann::json& report);

}  // namespace wittrep
