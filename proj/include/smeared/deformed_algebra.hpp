#pragma once

// One-dimensional deformed Heisenberg algebra [x, p] = i hbar (1 + beta p^2).
// The minimal position uncertainty is dx0 = hbar sqrt(beta). beta is stored
// in eV^-2 (natural units); meters appear only through hbar_c.

#include "smeared/errors.hpp"
#include "smeared/units_constants.hpp"

#include <cmath>
#include <string>

namespace smeared {

class Deformation {
public:
  /// The undeformed algebra.
  constexpr Deformation() = default;

  static Deformation from_beta(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
      throw ValidationError("beta must be finite and non-negative, got " + std::to_string(beta));
    }
    return Deformation(beta);
  }

  /// eV^-2
  constexpr double beta() const noexcept { return beta_; }
  /// Minimal length in natural units (eV^-1).
  double dx0_natural() const noexcept { return std::sqrt(beta_); }

  /// Same algebra with beta multiplied by @p k >= 0.
  Deformation scaled(double k) const { return from_beta(k * beta_); }

  friend bool operator==(const Deformation&, const Deformation&) = default;

private:
  constexpr explicit Deformation(double beta) : beta_(beta) {}
  double beta_ = 0.0;
};

/// The factor 1 + beta p^2 multiplying i hbar in the deformed commutator; @p p in eV.
inline double deformation_factor(double p, const Deformation& d) { return 1.0 + d.beta() * p * p; }

inline Deformation deformation_from_dx0(double dx0_m, const Constants& c) {
  if (!(dx0_m >= 0.0) || !std::isfinite(dx0_m)) {
    throw ValidationError("minimal length must be finite and non-negative, got " + std::to_string(dx0_m));
  }
  const double natural = dx0_m / c.hbar_c;
  return Deformation::from_beta(natural * natural);
}

inline double dx0_in_meters(const Deformation& d, const Constants& c) { return d.dx0_natural() * c.hbar_c; }

/// Minimal length set to the reduced Compton wavelength, i.e. beta = 1/m^2.
inline Deformation sastry_deformation(const Constants& c) {
  return deformation_from_dx0(compton_wavelength(c), c);
}

} // namespace smeared
