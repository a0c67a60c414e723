#include "fringelab/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fringelab {

HalfInteger HalfInteger::from_double(double value) {
  const double twice = 2.0 * value;
  if (!std::isfinite(twice) || std::nearbyint(twice) != twice ||
      std::abs(twice) > std::numeric_limits<int>::max()) {
    std::ostringstream os;
    os << "value " << value << " is not a multiple of 1/2";
    throw InvalidArgument(os.str());
  }
  return from_twice(static_cast<int>(twice));
}

std::string HalfInteger::to_string() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void validate_half_difference(int photons, HalfInteger value, const char* what) {
  if (std::abs(value.twice()) > photons) {
    throw InvalidArgument(std::string("|") + what + "| <= N/2 violated: " + what + " = " +
                          value.to_string() + ", N = " + std::to_string(photons));
  }
  if ((value.twice() - photons) % 2 != 0) {
    throw InvalidArgument(std::string("parity of 2*") + what + " must match N: 2*" + what +
                          " = " + std::to_string(value.twice()) + ", N = " +
                          std::to_string(photons));
  }
}

TwoModeConfig TwoModeConfig::from_differences(int photons, int input_diff, int output_diff) {
  TwoModeConfig config{photons, HalfInteger::from_twice(input_diff),
                       HalfInteger::from_twice(output_diff)};
  config.validate();
  return config;
}

void TwoModeConfig::validate() const {
  if (photons < 1) {
    throw InvalidArgument("photon number N >= 1 violated: N = " + std::to_string(photons));
  }
  validate_half_difference(photons, m_psi, "m_psi");
  validate_half_difference(photons, m, "m");
}

std::string TwoModeConfig::describe() const {
  return "N=" + std::to_string(photons) + " m_psi=" + m_psi.to_string() + " m=" + m.to_string();
}

}  // namespace fringelab
