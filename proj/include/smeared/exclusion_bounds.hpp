#pragma once

// Inversion of the first-order minimal-length shift against a
// theory-experiment agreement tolerance.
//
// A deformation is excluded when the shift it induces exceeds the tolerance
// (threshold factor 1). In transition mode the tolerance bounds the
// difference of the shifts of two states instead of a single level.

#include "smeared/deformed_algebra.hpp"
#include "smeared/errors.hpp"
#include "smeared/hydrogen_analytic.hpp"
#include "smeared/units_constants.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace smeared {

enum class Verdict { excluded, allowed };

inline std::string_view to_string(Verdict v) { return v == Verdict::excluded ? "excluded" : "allowed"; }

struct BoundReport {
  HydrogenState state;
  std::optional<HydrogenState> transition;  ///< second state in transition mode
  Energy tolerance;
  double coefficient;
  double beta_max;          ///< eV^-2
  double dx0_max_m;
  double compton_ratio;     ///< dx0_max / reduced Compton wavelength
  Energy shift_at_compton;  ///< eV
  double exclusion_factor;  ///< shift_at_compton / tolerance
  Verdict verdict;
};

namespace detail {

inline double tolerance_ev(const Energy& tolerance, const Constants& c) {
  const double ev = to_ev(tolerance, c);
  if (!(ev > 0.0) || !std::isfinite(ev)) throw ValidationError("tolerance must be strictly positive");
  return ev;
}

inline double shift_per_beta(const HydrogenState& s, const std::optional<HydrogenState>& transition,
                             const Constants& c, double coefficient) {
  double slope = smearing_shift_per_beta(s, c, coefficient);
  if (transition) slope = std::abs(slope - smearing_shift_per_beta(*transition, c, coefficient));
  if (!(slope > 0.0)) {
    throw ValidationError("the minimal-length shift of " + s.label() +
                          (transition ? " relative to " + transition->label() : std::string()) +
                          " vanishes; no bound follows");
  }
  return slope;
}

} // namespace detail

/// Largest beta whose shift of @p s (or of the @p transition difference) stays within @p tolerance.
inline Deformation max_deformation(const HydrogenState& s, const Energy& tolerance, const Constants& c,
                                   double coefficient = kDefaultShiftCoefficient,
                                   const std::optional<HydrogenState>& transition = std::nullopt) {
  const double tol = detail::tolerance_ev(tolerance, c);
  return Deformation::from_beta(tol / detail::shift_per_beta(s, transition, c, coefficient));
}

inline BoundReport bound_report(const HydrogenState& s, const Energy& tolerance, const Constants& c,
                                double coefficient = kDefaultShiftCoefficient,
                                const std::optional<HydrogenState>& transition = std::nullopt) {
  const double tol = detail::tolerance_ev(tolerance, c);
  const Deformation bound = max_deformation(s, tolerance, c, coefficient, transition);
  const double shift = sastry_deformation(c).beta() * detail::shift_per_beta(s, transition, c, coefficient);
  const double dx0 = dx0_in_meters(bound, c);
  const double factor = shift / tol;
  return BoundReport{
      .state = s,
      .transition = transition,
      .tolerance = tolerance,
      .coefficient = coefficient,
      .beta_max = bound.beta(),
      .dx0_max_m = dx0,
      .compton_ratio = dx0 / compton_wavelength(c),
      .shift_at_compton = Energy::ev(shift),
      .exclusion_factor = factor,
      .verdict = factor > 1.0 ? Verdict::excluded : Verdict::allowed,
  };
}

struct ComparisonEntry {
  std::string label;
  double value_ev;
  double value_mhz;
};

/**
 * @brief The minimal-length shift next to the reference corrections of the
 *        level, largest magnitude first.
 *
 * Rows: smearing, relativistic_kinetic and, for 1S, lamb_reference and
 * hyperfine_reference. Ties keep that order.
 */
inline std::vector<ComparisonEntry> comparison_table(const HydrogenState& s, const Deformation& d, const Constants& c,
                                                     double coefficient = kDefaultShiftCoefficient) {
  const ShiftBreakdown b = level_breakdown(s, d, c, coefficient);
  std::vector<std::pair<std::string, Energy>> rows{
      {"smearing", b.smearing},
      {"relativistic_kinetic", b.relativistic_kinetic},
  };
  if (b.lamb_reference) rows.emplace_back("lamb_reference", *b.lamb_reference);
  if (b.hyperfine_reference) rows.emplace_back("hyperfine_reference", *b.hyperfine_reference);

  std::vector<ComparisonEntry> out;
  out.reserve(rows.size());
  for (const auto& [label, energy] : rows) {
    out.push_back({label, to_ev(energy, c), convert(energy, Unit::MHz, c).magnitude});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return std::abs(x.value_ev) > std::abs(y.value_ev); });
  return out;
}

} // namespace smeared
