#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fringelab/types.hpp"

namespace fringelab {

/// Default bisection tolerance on phase.
inline constexpr double kRootTolerance = 1e-10;

/// Cells [x[i], x[i+1]] across which y changes sign, plus degenerate brackets
/// for samples that are exactly zero. Brackets whose endpoint magnitudes are
/// both below `noise_floor` are treated as round-off and skipped.
std::vector<PhaseInterval> sign_change_brackets(std::span<const double> x,
                                                std::span<const double> y,
                                                double noise_floor = 0.0);

/// Bisection of a sign change of f inside [lower, upper] to `tolerance`.
double refine_root(const std::function<double(double)>& f, double lower, double upper,
                   double tolerance = kRootTolerance);

/// All roots of f in [lower, upper]: sample `samples` points, bracket sign
/// changes, refine each by bisection.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lower,
                               double upper, std::size_t samples,
                               double tolerance = kRootTolerance);

}  // namespace fringelab
