#pragma once

#include <string>
#include <vector>

#include "fringelab/fringe_analysis.hpp"

namespace fringelab {

/// Reference fringe numbers for one configuration, rounded to the quoted digits.
struct ReferenceFringeCase {
  int photons = 0;
  int input_diff = 0;   // 2 m_psi
  int output_diff = 0;  // 2 m
  std::vector<double> zeros;
  std::vector<double> j3_exp;
};

/// classical J3 == j3 at `phase` (the fringe index selects the center).
struct ReferenceMatch {
  int photons = 0;
  int input_diff = 0;
  int output_diff = 0;
  std::size_t fringe = 0;
  double j3 = 0.0;
  double phase = 0.0;
};

struct ReferenceCheckpoint {
  int photons = 0;
  int input_diff = 0;
  int output_diff = 0;
  double phi = 0.0;
  double j3 = 0.0;
};

inline constexpr double kReferenceZeroTolerance = 1e-3;
inline constexpr double kReferenceJ3Tolerance = 1e-2;
inline constexpr double kReferenceCheckpointTolerance = 5e-3;
inline constexpr double kReferenceMatchTolerance = 2e-3;

const std::vector<ReferenceFringeCase>& reference_fringe_cases();
const std::vector<ReferenceMatch>& reference_matches();
const std::vector<ReferenceCheckpoint>& reference_checkpoints();

struct ReferenceCheck {
  std::string group;  // zeros, j3_exp, classical_j3, matching_phase, equal_case
  std::string name;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReferenceSummary {
  std::vector<ReferenceCheck> checks;
  std::vector<FringeReport> reports;  // one per reference fringe case
  bool all_pass = false;
};

/// Recomputes every reference number from the exact traces and the classical
/// model. A missing zero is recorded as a failing check with NaN measured.
ReferenceSummary evaluate_reference_values();

}  // namespace fringelab
