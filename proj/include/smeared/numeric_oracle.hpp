#pragma once

/**
 * @file numeric_oracle.hpp
 * @brief Brute-force numerics used to validate the closed forms.
 *
 *  - solve_radial: three-point finite differences for the reduced radial
 *    Coulomb problem, lowest levels from a tridiagonal LAPACK solve.
 *  - expectation_p4_numeric: <p^4> = 4 m^2 <(E_n - V)^2> by Simpson quadrature
 *    over the Laguerre radial functions (p^2 psi = 2m (E - V) psi on eigenstates).
 *  - diag_deformed_oscillator: H = p^2/2m + m w^2 x^2/2 + (beta/3m) p^4 in a
 *    truncated oscillator basis with exact ladder-operator matrix elements.
 *  - refine_until: resolution doubling until successive results agree.
 */

#include "smeared/errors.hpp"
#include "smeared/hydrogen_analytic.hpp"
#include "smeared/units_constants.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace smeared {

inline constexpr double kEigenvalueTolerance = 1e-8;
inline constexpr double kExpectationTolerance = 1e-6;
inline constexpr double kSlopeTolerance = 1e-4;

/// Largest n accepted by the quadrature oracle.
inline constexpr int kMaxOracleN = 5;
inline constexpr int kMaxRadialLevels = 10;

/// Uniform grid on [r_min, r_max], r in eV^-1.
class RadialGrid {
public:
  RadialGrid(double r_min, double r_max, std::size_t points) : r_min_(r_min), r_max_(r_max), points_(points) {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw ValidationError("radial grid needs 0 < r_min < r_max");
    if (points < 100) throw ValidationError("radial grid needs at least 100 points");
  }

  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return (r_max_ - r_min_) / static_cast<double>(points_ - 1); }
  double at(std::size_t i) const noexcept { return r_min_ + spacing() * static_cast<double>(i); }

  /// Same interval with the spacing halved.
  RadialGrid refined() const { return RadialGrid(r_min_, r_max_, 2 * (points_ - 1) + 1); }

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

private:
  double r_min_;
  double r_max_;
  std::size_t points_;
};

/**
 * @brief A grid covering the lowest @p k_levels states of angular momentum @p l.
 *
 * The inner wall sits at 1e-12 Bohr lengths: a Dirichlet wall at r_w biases
 * an s level by about 4 r_w / a relative, so it has to be far below the
 * eigenvalue tolerance. The outer wall grows with the highest n resolved.
 */
inline RadialGrid default_radial_grid(const Constants& c, int l, int k_levels, std::size_t points = 4001) {
  const double a = bohr_length_natural(c);
  const int n_top = l + std::max(k_levels, 1);
  return RadialGrid(1e-12 * a, (30.0 * n_top + 20.0) * a, points);
}

struct OracleResult {
  double value = 0.0;
  double estimated_error = 0.0;
  std::variant<std::monostate, RadialGrid, std::size_t> resolution;  ///< grid or basis size used
  int refinements = 0;
  bool converged = false;
};

struct RefinementCap {
  int max_refinements = 8;
};

/**
 * @brief Double the resolution until two successive values agree to @p tolerance (relative).
 *
 * @p compute is called with refinement level 0, 1, 2, ...; each level is
 * expected to double the resolution of the previous one. Hitting the cap is
 * not an error: the last value comes back with converged = false.
 */
template <class Compute>
OracleResult refine_until(double tolerance, Compute&& compute, RefinementCap cap = {}) {
  if (!(tolerance >= 1e-12 && tolerance <= 1e-2)) {
    throw ValidationError("refinement tolerance must lie in [1e-12, 1e-2]");
  }
  OracleResult out;
  double previous = compute(0);
  for (int level = 1; level <= cap.max_refinements; ++level) {
    const double current = compute(level);
    const double diff = std::abs(current - previous);
    const double scale = std::abs(current);
    out.value = current;
    out.estimated_error = scale > 0.0 ? diff / scale : diff;
    out.refinements = level;
    if (diff <= tolerance * scale || (scale == 0.0 && diff == 0.0)) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature

/// Composite Simpson rule on uniformly spaced samples (odd count).
inline double simpson(std::span<const double> f, double h) {
  if (f.size() < 3 || f.size() % 2 == 0) throw ValidationError("simpson needs an odd number (>= 3) of samples");
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) (i % 2 ? odd : even) += f[i];
  return h / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

/// Simpson integral of @p f sampled on @p grid (points must be odd).
template <class F>
double integrate(const RadialGrid& grid, F&& f) {
  std::vector<double> samples(grid.points());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = f(grid.at(i));
  return simpson(samples, grid.spacing());
}

// ---------------------------------------------------------------------------
// Finite-difference radial solver

struct RadialLevel {
  double energy;           ///< eV
  std::vector<double> u;   ///< u(r) = r R(r) on every grid node, endpoints zero, int u^2 dr = 1
};

/**
 * @brief Lowest @p k_levels bound states of
 *        u'' = [l(l+1)/r^2 - 2 m alpha / r - 2 m E] u,  u(r_min) = u(r_max) = 0.
 *
 * Eigenvectors are normalized with the trapezoidal rule and signed so that
 * the first non-negligible amplitude is positive.
 */
inline std::vector<RadialLevel> solve_radial(int l, const RadialGrid& grid, const Constants& c, int k_levels) {
  if (l < 0) throw ValidationError("l must be non-negative");
  if (k_levels < 1 || k_levels > kMaxRadialLevels) {
    throw ValidationError("k_levels must lie in [1, " + std::to_string(kMaxRadialLevels) + "]");
  }
  const double m = c.electron_mass;
  const double h = grid.spacing();
  const std::size_t interior = grid.points() - 2;
  const double kinetic = 1.0 / (2.0 * m * h * h);

  std::vector<double> diag(interior);
  std::vector<double> off(interior - 1, -kinetic);
  for (std::size_t i = 0; i < interior; ++i) {
    const double r = grid.at(i + 1);
    diag[i] = 2.0 * kinetic + l * (l + 1) / (2.0 * m * r * r) - c.alpha / r;
  }

  lapack_int found = 0;
  std::vector<double> w(interior);
  std::vector<double> z(interior * static_cast<std::size_t>(k_levels));
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(k_levels));
  const lapack_int n = static_cast<lapack_int>(interior);
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
                                         k_levels, 0.0, &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0 || found != k_levels) {
    throw OracleError("tridiagonal eigensolve failed (info " + std::to_string(info) + ")");
  }

  std::vector<RadialLevel> levels;
  levels.reserve(static_cast<std::size_t>(k_levels));
  for (int k = 0; k < k_levels; ++k) {
    if (!(w[static_cast<std::size_t>(k)] < 0.0)) {
      throw OracleError("only " + std::to_string(k) + " bound states of l=" + std::to_string(l) +
                        " resolved on the grid; increase r_max");
    }
    RadialLevel level{w[static_cast<std::size_t>(k)], std::vector<double>(grid.points(), 0.0)};
    const double* col = z.data() + static_cast<std::size_t>(k) * interior;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < interior; ++i) norm2 += col[i] * col[i];
    double scale = 1.0 / std::sqrt(norm2 * h);
    const double peak = std::abs(*std::max_element(col, col + interior, [](double x, double y) {
      return std::abs(x) < std::abs(y);
    }));
    const auto first = std::find_if(col, col + interior, [&](double v) { return std::abs(v) > 1e-3 * peak; });
    if (first != col + interior && *first < 0.0) scale = -scale;
    for (std::size_t i = 0; i < interior; ++i) level.u[i + 1] = scale * col[i];
    levels.push_back(std::move(level));
  }
  return levels;
}

/// (2^p f_fine - f_coarse) / (2^p - 1) for a scheme of order @p order under spacing halving.
inline double richardson(double coarse, double fine, int order = 2) {
  const double factor = std::ldexp(1.0, order);
  return (factor * fine - coarse) / (factor - 1.0);
}

/**
 * @brief Richardson-refined finite-difference energies of the lowest
 *        @p k_levels states with angular momentum @p l.
 *
 * Refinement level L extrapolates the grids with spacing h/2^L and h/2^(L+1)
 * from @p base. One OracleResult per level, in increasing energy.
 */
inline std::vector<OracleResult> radial_energies(int l, int k_levels, const Constants& c,
                                                 double tolerance = kEigenvalueTolerance,
                                                 std::optional<RadialGrid> base = std::nullopt,
                                                 RefinementCap cap = {6}) {
  const RadialGrid start = base.value_or(default_radial_grid(c, l, k_levels));
  std::map<int, std::vector<double>> cache;
  auto raw = [&](int level) -> const std::vector<double>& {
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;
    RadialGrid g = start;
    for (int i = 0; i < level; ++i) g = g.refined();
    std::vector<double> energies;
    for (const auto& lv : solve_radial(l, g, c, k_levels)) energies.push_back(lv.energy);
    return cache.emplace(level, std::move(energies)).first->second;
  };

  std::vector<OracleResult> out;
  for (int k = 0; k < k_levels; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    OracleResult r = refine_until(
        tolerance, [&](int level) { return richardson(raw(level)[idx], raw(level + 1)[idx]); }, cap);
    RadialGrid finest = start;
    for (int i = 0; i <= r.refinements; ++i) finest = finest.refined();
    r.resolution = finest;
    out.push_back(r);
  }
  return out;
}

/**
 * @brief Observed order of the finite-difference scheme for the lowest level:
 *        (E(h) - E(h/2)) / (E(h/2) - E(h/4)). A second-order scheme gives ~4.
 */
inline double fd_convergence_ratio(int l, const RadialGrid& grid, const Constants& c) {
  const RadialGrid g1 = grid.refined();
  const RadialGrid g2 = g1.refined();
  const double e0 = solve_radial(l, grid, c, 1)[0].energy;
  const double e1 = solve_radial(l, g1, c, 1)[0].energy;
  const double e2 = solve_radial(l, g2, c, 1)[0].energy;
  return (e0 - e1) / (e1 - e2);
}

/**
 * @brief <p^4> by quadrature of 4 m^2 |R_nl|^2 (E_n + alpha/r)^2 r^2.
 *
 * The integrand is written as R^2 (E r + alpha)^2, which is regular at the
 * origin. Simpson's rule on @p grid, doubled until @p tolerance is met.
 */
inline OracleResult expectation_p4_numeric(const HydrogenState& s, const RadialGrid& grid, const Constants& c,
                                           double tolerance = kExpectationTolerance, RefinementCap cap = {8}) {
  if (s.n() > kMaxOracleN) {
    throw CapabilityError("the quadrature oracle supports n <= " + std::to_string(kMaxOracleN));
  }
  const double m = c.electron_mass;
  const double energy = bohr_energy(s, c).magnitude;
  const RadialGrid start = grid.points() % 2 ? grid : RadialGrid(grid.r_min(), grid.r_max(), grid.points() + 1);

  auto at_level = [&](int level) {
    RadialGrid g = start;
    for (int i = 0; i < level; ++i) g = g.refined();
    return g;
  };
  OracleResult r = refine_until(
      tolerance,
      [&](int level) {
        return 4.0 * m * m * integrate(at_level(level), [&](double rr) {
                 const double R = radial_wavefunction(s, rr, c);
                 const double t = energy * rr + c.alpha;
                 return R * R * t * t;
               });
      },
      cap);
  r.resolution = at_level(r.refinements);
  if (!r.converged) {
    throw OracleError("<p^4> quadrature for " + s.label() + " did not converge (last relative change " +
                      std::to_string(r.estimated_error) + ")");
  }
  return r;
}

/// Grid for expectation values of state n: out to 40 n Bohr lengths.
inline RadialGrid default_quadrature_grid(const HydrogenState& s, const Constants& c, std::size_t points = 2001) {
  const double a = bohr_length_natural(c);
  return RadialGrid(1e-12 * a, 40.0 * s.n() * a, points);
}

// ---------------------------------------------------------------------------
// Deformed harmonic oscillator

struct OscillatorMatrices {
  Eigen::MatrixXd hamiltonian0;  ///< p^2/2m + m w^2 x^2/2
  Eigen::MatrixXd p4;            ///< exact (p^4)_{ij} for i, j < basis size
};

/**
 * @brief Truncated-basis matrices with x = (a + a†)/sqrt(2 m w), p = i sqrt(m w / 2)(a† - a).
 *
 * @p parity = -1 uses the mirrored convention x -> -x, p -> -p.
 * p^4 is built as (p^2)^2 in a basis two states larger and then truncated,
 * so every retained element is exact.
 */
inline OscillatorMatrices oscillator_matrices(std::size_t basis_size, double mass, double omega, int parity = 1) {
  const std::size_t big = basis_size + 2;
  const double sign = parity >= 0 ? 1.0 : -1.0;
  // a matrix: <k-1| a |k> = sqrt(k)
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(big), static_cast<Eigen::Index>(big));
  for (std::size_t k = 1; k < big; ++k) {
    lower(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = std::sqrt(static_cast<double>(k));
  }
  const Eigen::MatrixXd raise = lower.transpose();
  // p = sign * i sqrt(mw/2)(a† - a);  p^2 = -(mw/2)(a† - a)^2 is real
  const Eigen::MatrixXd diff = sign * (raise - lower);
  const Eigen::MatrixXd p2 = -(mass * omega / 2.0) * diff * diff;
  const Eigen::MatrixXd sum = sign * (raise + lower);
  const Eigen::MatrixXd x2 = (1.0 / (2.0 * mass * omega)) * sum * sum;

  const auto n = static_cast<Eigen::Index>(basis_size);
  // x^2 and p^2 only couple k to k, k +- 2, so their n x n blocks are exact as well
  OscillatorMatrices out;
  out.hamiltonian0 = (p2 / (2.0 * mass) + 0.5 * mass * omega * omega * x2).topLeftCorner(n, n);
  out.p4 = (p2 * p2).topLeftCorner(n, n);
  return out;
}

inline double ground_energy(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw OracleError("oscillator eigensolve failed");
  return solver.eigenvalues().minCoeff();
}

struct OscillatorPoint {
  double beta;
  double ground_energy;
};

/**
 * @brief Ground energies of p^2/2m + m w^2 x^2/2 + (beta/3m) p^4 for each beta.
 *
 * @p oscillator_scale is the momentum sqrt(m w) (eV). Each point is repeated
 * with a basis 50% larger; a change beyond @p truncation_tolerance (relative)
 * raises OracleError.
 */
inline std::vector<OscillatorPoint> diag_deformed_oscillator(std::span<const double> beta_grid, std::size_t basis_size,
                                                             double oscillator_scale, double mass,
                                                             double truncation_tolerance = 1e-10, int parity = 1) {
  if (basis_size < 20) throw ValidationError("oscillator basis must hold at least 20 states");
  if (!(mass > 0.0) || !(oscillator_scale > 0.0)) throw ValidationError("mass and oscillator scale must be positive");
  const double omega = oscillator_scale * oscillator_scale / mass;
  const double p0sq = oscillator_scale * oscillator_scale;
  for (double beta : beta_grid) {
    if (!std::isfinite(beta) || std::abs(beta) * p0sq > 0.1) {
      throw ValidationError("beta * oscillator_scale^2 must not exceed 0.1");
    }
  }

  const std::size_t bigger = basis_size + basis_size / 2;
  const OscillatorMatrices small = oscillator_matrices(basis_size, mass, omega, parity);
  const OscillatorMatrices large = oscillator_matrices(bigger, mass, omega, parity);

  std::vector<OscillatorPoint> out;
  out.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    const double coupling = beta / (3.0 * mass);
    const double e_small = ground_energy(small.hamiltonian0 + coupling * small.p4);
    const double e_large = ground_energy(large.hamiltonian0 + coupling * large.p4);
    if (std::abs(e_small - e_large) > truncation_tolerance * std::abs(e_large)) {
      throw OracleError("oscillator basis of " + std::to_string(basis_size) + " states not converged at beta = " +
                        std::to_string(beta));
    }
    out.push_back({beta, e_small});
  }
  return out;
}

struct SlopeCheck {
  double numeric_slope;   ///< dE/dbeta at beta -> 0 from the polynomial fit
  double expected_slope;  ///< (p^4)_{00} / 3m from the constructed matrix
  double relative_difference;
  std::size_t basis_size;
  std::vector<OscillatorPoint> points;
  bool converged;         ///< relative_difference within kSlopeTolerance
};

/**
 * @brief Fit a cubic to E(beta) over beta_k = k * 1e-3 / p0^2, k = 0..6, and
 *        compare its linear coefficient with first-order perturbation theory.
 */
inline SlopeCheck oscillator_slope_check(double oscillator_scale, double mass, std::size_t basis_size = 40) {
  const double p0sq = oscillator_scale * oscillator_scale;
  const double step = 1e-3 / p0sq;
  std::vector<double> betas;
  for (int k = 0; k <= 6; ++k) betas.push_back(k * step);
  auto points = diag_deformed_oscillator(betas, basis_size, oscillator_scale, mass);

  // least squares in t = beta / step for conditioning
  constexpr int degree = 3;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), degree + 1);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = points[i].beta / step;
    double power = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(static_cast<Eigen::Index>(i), d) = power;
      power *= t;
    }
    rhs(static_cast<Eigen::Index>(i)) = points[i].ground_energy;
  }
  const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);

  const double omega = p0sq / mass;
  const OscillatorMatrices mats = oscillator_matrices(basis_size, mass, omega);
  SlopeCheck out;
  out.numeric_slope = coeffs(1) / step;
  out.expected_slope = mats.p4(0, 0) / (3.0 * mass);
  out.relative_difference = std::abs(out.numeric_slope - out.expected_slope) / std::abs(out.expected_slope);
  out.basis_size = basis_size;
  out.points = std::move(points);
  out.converged = out.relative_difference <= kSlopeTolerance;
  return out;
}

} // namespace smeared
