#include "fringelab/root_finding.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

namespace fringelab {

std::vector<PhaseInterval> sign_change_brackets(std::span<const double> x,
                                                std::span<const double> y,
                                                double noise_floor) {
  if (x.size() != y.size()) throw InvalidArgument("bracket scan: size mismatch");
  std::vector<PhaseInterval> brackets;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] == 0.0) {
      brackets.push_back({x[i], x[i]});
      continue;
    }
    if (i + 1 == x.size() || y[i + 1] == 0.0) continue;
    if ((y[i] < 0.0) == (y[i + 1] < 0.0)) continue;
    if (std::max(std::abs(y[i]), std::abs(y[i + 1])) < noise_floor) continue;
    brackets.push_back({x[i], x[i + 1]});
  }
  return brackets;
}

double refine_root(const std::function<double(double)>& f, double lower, double upper,
                   double tolerance) {
  if (lower == upper) return lower;
  const double f_lower = f(lower);
  const double f_upper = f(upper);
  if (f_lower == 0.0) return lower;
  if (f_upper == 0.0) return upper;
  if ((f_lower < 0.0) == (f_upper < 0.0)) {
    throw InvalidArgument("refine_root: interval does not bracket a sign change");
  }
  auto close_enough = [tolerance](double a, double b) { return std::abs(b - a) <= tolerance; };
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::bisect(f, lower, upper, close_enough, max_iter);
  return 0.5 * (a + b);
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double lower,
                               double upper, std::size_t samples, double tolerance) {
  if (samples < 2 || !(upper > lower)) {
    throw InvalidArgument("scan_roots requires samples >= 2 and upper > lower");
  }
  std::vector<double> x(samples), y(samples);
  const double step = (upper - lower) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    x[i] = i + 1 == samples ? upper : lower + step * static_cast<double>(i);
    y[i] = f(x[i]);
  }
  std::vector<double> roots;
  for (const auto& bracket : sign_change_brackets(x, y)) {
    roots.push_back(refine_root(f, bracket.lower, bracket.upper, tolerance));
  }
  return roots;
}

}  // namespace fringelab
