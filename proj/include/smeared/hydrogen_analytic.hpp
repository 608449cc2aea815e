#pragma once

/**
 * @file hydrogen_analytic.hpp
 * @brief Closed-form nonrelativistic hydrogen: Bohr levels, momentum moments,
 *        the first-order minimal-length shift and the standard alpha^4 corrections.
 *
 * With the representation p_phys = p (1 + beta p^2 / 3) on ordinary
 * wavefunctions the kinetic term picks up H' = (beta / 3m) p^4 at first order
 * in beta. The coefficient 1/3 is a convention of that representation; every
 * entry point that produces a minimal-length shift takes it as a parameter.
 */

#include "smeared/deformed_algebra.hpp"
#include "smeared/errors.hpp"
#include "smeared/units_constants.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace smeared {

/// Coefficient c in H' = c (beta/m) p^4.
inline constexpr double kDefaultShiftCoefficient = 1.0 / 3.0;

/// Largest n accepted by radial_wavefunction.
inline constexpr int kMaxWavefunctionN = 12;

class HydrogenState {
public:
  /**
   * @param two_j  twice the total angular momentum; std::nullopt leaves j unset.
   */
  static HydrogenState make(int n, int l, std::optional<int> two_j = std::nullopt) {
    if (n < 1) throw ValidationError("principal quantum number must be >= 1");
    if (l < 0 || l > n - 1) {
      throw ValidationError("orbital quantum number must satisfy 0 <= l <= n-1 (n=" + std::to_string(n) +
                            ", l=" + std::to_string(l) + ")");
    }
    if (two_j) {
      const int tj = *two_j;
      if (tj < 1 || (tj != 2 * l - 1 && tj != 2 * l + 1)) {
        throw ValidationError("j must be l-1/2 or l+1/2 and at least 1/2");
      }
    }
    return HydrogenState(n, l, two_j, false);
  }

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  std::optional<int> two_j() const noexcept { return two_j_; }
  std::optional<double> j() const noexcept {
    if (!two_j_) return std::nullopt;
    return *two_j_ / 2.0;
  }
  /// True when j was filled in by with_default_j rather than given explicitly.
  bool j_defaulted() const noexcept { return j_defaulted_; }

  /// Same state with j = l + 1/2 if j was absent.
  HydrogenState with_default_j() const {
    if (two_j_) return *this;
    return HydrogenState(n_, l_, 2 * l_ + 1, true);
  }

  /// Spectroscopic label, e.g. "1s", "2p3/2".
  std::string label() const {
    static constexpr std::string_view shells = "spdfghiklmnoqrtuv";
    std::string out = std::to_string(n_);
    out += l_ < static_cast<int>(shells.size()) ? shells[static_cast<std::size_t>(l_)] : '?';
    if (two_j_) out += std::to_string(*two_j_) + "/2";
    return out;
  }

  bool is_1s() const noexcept { return n_ == 1 && l_ == 0; }

  friend bool operator==(const HydrogenState&, const HydrogenState&) = default;

private:
  HydrogenState(int n, int l, std::optional<int> two_j, bool defaulted)
      : n_(n), l_(l), two_j_(two_j), j_defaulted_(defaulted) {}

  int n_;
  int l_;
  std::optional<int> two_j_;
  bool j_defaulted_;
};

/**
 * @brief Parse `<n><shell>[<j>]`, shell in {s,p,d,f,g}, j as a fraction like `3/2`.
 *
 * Case-insensitive. Throws ValidationError on malformed input.
 */
inline HydrogenState parse_state(std::string_view text) {
  static constexpr std::string_view shells = "spdfg";
  auto fail = [&]() -> ValidationError {
    return ValidationError("malformed state '" + std::string(text) + "' (expected e.g. 1s, 2p, 2p3/2)");
  };

  std::size_t pos = 0;
  int n = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    n = n * 10 + (text[pos] - '0');
    if (n > 1000) throw fail();
    ++pos;
  }
  if (pos == 0 || pos >= text.size()) throw fail();
  const char shell = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
  const auto l = shells.find(shell);
  if (l == std::string_view::npos) throw fail();
  ++pos;

  std::optional<int> two_j;
  if (pos < text.size()) {
    const auto rest = text.substr(pos);
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos || rest.substr(slash + 1) != "2" || slash == 0) throw fail();
    int num = 0;
    for (char ch : rest.substr(0, slash)) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail();
      num = num * 10 + (ch - '0');
      if (num > 1000) throw fail();
    }
    two_j = num;
  }
  return HydrogenState::make(n, static_cast<int>(l), two_j);
}

// ---------------------------------------------------------------------------

/// -m alpha^2 / (2 n^2)
inline Energy bohr_energy(const HydrogenState& s, const Constants& c) {
  const double n = s.n();
  return Energy::ev(-c.electron_mass * c.alpha * c.alpha / (2.0 * n * n));
}

/// <p^2> = (m alpha / n)^2, eV^2.
inline double exp_p2(const HydrogenState& s, const Constants& c) {
  const double p = c.electron_mass * c.alpha / s.n();
  return p * p;
}

/// Dimensionless <p^4> / (m alpha)^4 = [8n/(2l+1) - 3] / n^4.
inline double exp_p4_reduced(const HydrogenState& s) {
  const double n = s.n();
  const double l = s.l();
  return (8.0 * n / (2.0 * l + 1.0) - 3.0) / (n * n * n * n);
}

/// <p^4>, eV^4.
inline double exp_p4(const HydrogenState& s, const Constants& c) {
  const double p = c.electron_mass * c.alpha;
  return p * p * p * p * exp_p4_reduced(s);
}

/// m alpha^4, the natural scale of every alpha^4 correction (eV).
inline double alpha4_scale(const Constants& c) {
  const double a2 = c.alpha * c.alpha;
  return c.electron_mass * a2 * a2;
}

/// First-order shift per unit beta, coefficient <p^4> / m (eV per eV^-2).
inline double smearing_shift_per_beta(const HydrogenState& s, const Constants& c,
                                      double coefficient = kDefaultShiftCoefficient) {
  // (m alpha)^4 / m = m^3 alpha^4; fold the powers to keep the product in range
  const double m = c.electron_mass;
  return coefficient * m * m * alpha4_scale(c) * exp_p4_reduced(s);
}

/// Delta E = coefficient * (beta/m) <p^4>; the default coefficient is 1/3.
inline Energy smearing_shift(const HydrogenState& s, const Deformation& d, const Constants& c,
                             double coefficient = kDefaultShiftCoefficient) {
  return Energy::ev(d.beta() * smearing_shift_per_beta(s, c, coefficient));
}

/// -<p^4> / (8 m^3)
inline Energy relativistic_kinetic(const HydrogenState& s, const Constants& c) {
  return Energy::ev(-alpha4_scale(c) * exp_p4_reduced(s) / 8.0);
}

/// Combined relativistic + spin-orbit shift -(m alpha^4 / 2n^4)(n/(j+1/2) - 3/4). Requires j.
inline Energy fine_structure(const HydrogenState& s, const Constants& c) {
  if (!s.two_j()) {
    throw ValidationError("fine structure of state " + s.label() + " needs j; supply it, e.g. 2p3/2");
  }
  const double n = s.n();
  const double j_plus_half = (*s.two_j() + 1) / 2.0;
  return Energy::ev(-alpha4_scale(c) / (2.0 * n * n * n * n) * (n / j_plus_half - 0.75));
}

/**
 * @brief Normalized radial function R_nl(r), r in eV^-1.
 *
 * R_nl = N e^{-rho/2} rho^l L^{2l+1}_{n-l-1}(rho), rho = 2r/(n a), a = 1/(m alpha),
 * N = sqrt((2/(n a))^3 (n-l-1)! / (2n (n+l)!)).
 */
inline double radial_wavefunction(const HydrogenState& s, double r, const Constants& c) {
  if (s.n() > kMaxWavefunctionN) {
    throw CapabilityError("radial_wavefunction supports n <= " + std::to_string(kMaxWavefunctionN));
  }
  if (r < 0.0) throw ValidationError("radius must be non-negative");
  const int n = s.n();
  const int l = s.l();
  const double a = bohr_length_natural(c);
  const double k = 2.0 / (n * a);
  const double rho = k * r;
  // (n-l-1)!/(n+l)! via lgamma keeps n = 12 well inside range
  const double log_norm =
      0.5 * (3.0 * std::log(k) + std::lgamma(n - l) - std::lgamma(n + l + 1) - std::log(2.0 * n));
  const double laguerre = std::assoc_laguerre(static_cast<unsigned>(n - l - 1), static_cast<unsigned>(2 * l + 1), rho);
  return std::exp(log_norm - rho / 2.0) * std::pow(rho, l) * laguerre;
}

struct ShiftBreakdown {
  HydrogenState state;
  Deformation deformation;
  double coefficient;
  Energy bohr;
  Energy relativistic_kinetic;
  Energy fine_structure;
  std::optional<Energy> lamb_reference;       ///< 1S only, MHz
  std::optional<Energy> hyperfine_reference;  ///< 1S only, MHz
  Energy smearing;
};

/// Every correction for @p s. j defaults to l + 1/2 and the state records that.
inline ShiftBreakdown level_breakdown(const HydrogenState& s, const Deformation& d, const Constants& c,
                                     double coefficient = kDefaultShiftCoefficient) {
  const HydrogenState state = s.with_default_j();
  ShiftBreakdown out{
      .state = state,
      .deformation = d,
      .coefficient = coefficient,
      .bohr = bohr_energy(state, c),
      .relativistic_kinetic = relativistic_kinetic(state, c),
      .fine_structure = fine_structure(state, c),
      .lamb_reference = std::nullopt,
      .hyperfine_reference = std::nullopt,
      .smearing = smearing_shift(state, d, c, coefficient),
  };
  if (state.is_1s()) {
    out.lamb_reference = Energy::mhz(c.lamb_shift_1s);
    out.hyperfine_reference = Energy::mhz(c.hyperfine_1s);
  }
  return out;
}

} // namespace smeared
