#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace fringelab {

/// Raised when an input violates a documented precondition. The message names
/// the violated invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails to meet its contract (diagonalization
/// residuals, quadrature error estimates, ODE step control, realizability).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A signed multiple of 1/2, stored as twice its value so that half-integer
/// photon-number differences compare exactly.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }
  /// Throws InvalidArgument unless `value` is an exact multiple of 1/2.
  static HalfInteger from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_zero() const { return twice_ == 0; }

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  constexpr auto operator<=>(const HalfInteger&) const = default;

  /// "3/2", "-1/2", "2".
  std::string to_string() const;

 private:
  int twice_ = 0;
};

/// Total photon number N with input and output half photon-number differences.
/// All J values are in units of hbar (hbar = 1).
struct TwoModeConfig {
  int photons = 0;
  HalfInteger m_psi;
  HalfInteger m;

  /// Builds from integer differences 2*m_psi and 2*m and validates.
  static TwoModeConfig from_differences(int photons, int input_diff, int output_diff);

  void validate() const;
  TwoModeConfig exchanged() const { return {photons, m, m_psi}; }
  std::string describe() const;
};

/// Checks that `value` is a legal eigenvalue label for N photons:
/// |value| <= N/2 and 2*value has the parity of N. `what` names the quantity
/// in the error message.
void validate_half_difference(int photons, HalfInteger value, const char* what);

/// Position of eigenvalue `value` in a descending list {N/2, ..., -N/2}.
inline int descending_index(int photons, HalfInteger value) {
  return (photons - value.twice()) / 2;
}

/// Closed phase interval [lower, upper] in radians.
struct PhaseInterval {
  double lower = 0.0;
  double upper = 0.0;

  constexpr bool contains(double phi) const { return phi >= lower && phi <= upper; }
  constexpr double width() const { return upper - lower; }
  constexpr double center() const { return 0.5 * (lower + upper); }
};

}  // namespace fringelab
