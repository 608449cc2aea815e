#pragma once

/**
 * @file units_constants.hpp
 * @brief Physical constants, experimental reference data and energy units.
 *
 * All computations in the library run in natural units (hbar = c = 1) with
 * energies in eV. Lengths in meters only appear at the boundaries, converted
 * with hbar_c. Frequencies are converted to energies with E = h nu.
 *
 * The default dataset is CODATA 2018 plus the 1S Lamb shift and 1S hyperfine
 * splitting of hydrogen. A copy lives in data/codata2018.json; a constants
 * file may override any subset of its keys.
 */

#include "smeared/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace smeared {

struct Constants {
  double alpha;                    ///< fine-structure constant
  double electron_mass;            ///< rest energy m, eV
  double hbar_c;                   ///< eV m
  double planck_h;                 ///< eV s
  double lamb_shift_1s;            ///< MHz
  double hyperfine_1s;             ///< MHz
  double lamb_agreement;           ///< MHz, theory-experiment agreement for the 1S Lamb shift
  double hyperfine_agreement;      ///< MHz, same for the 1S hyperfine splitting

  friend bool operator==(const Constants&, const Constants&) = default;
};

/// CODATA 2018 values; mirrors data/codata2018.json.
inline constexpr Constants kCodata2018{
    .alpha = 7.2973525693e-3,
    .electron_mass = 510998.95,
    .hbar_c = 1.973269804e-7,
    .planck_h = 4.135667696e-15,
    .lamb_shift_1s = 8172.8,
    .hyperfine_1s = 1420.405751768,
    .lamb_agreement = 1.0,
    .hyperfine_agreement = 0.1,
};

/// Throws ValidationError if @p c breaks an invariant of a physical dataset.
inline void validate(const Constants& c) {
  if (!(c.alpha > 1.0 / 138.0 && c.alpha < 1.0 / 137.0)) {
    throw ValidationError("alpha must lie in (1/138, 1/137), got " + std::to_string(c.alpha));
  }
  const std::array<std::pair<const char*, double>, 7> positive{{
      {"electron_mass_ev", c.electron_mass},
      {"hbar_c_ev_m", c.hbar_c},
      {"planck_h_ev_s", c.planck_h},
      {"lamb_shift_1s_mhz", c.lamb_shift_1s},
      {"hyperfine_1s_mhz", c.hyperfine_1s},
      {"lamb_agreement_mhz", c.lamb_agreement},
      {"hyperfine_agreement_mhz", c.hyperfine_agreement},
  }};
  for (const auto& [key, value] : positive) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ValidationError(std::string(key) + " must be strictly positive and finite");
    }
  }
}

namespace detail {

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

struct ConstantsKey {
  const char* name;
  double Constants::*field;
};

inline constexpr std::array<ConstantsKey, 8> kConstantsKeys{{
    {"alpha", &Constants::alpha},
    {"electron_mass_ev", &Constants::electron_mass},
    {"hbar_c_ev_m", &Constants::hbar_c},
    {"planck_h_ev_s", &Constants::planck_h},
    {"lamb_shift_1s_mhz", &Constants::lamb_shift_1s},
    {"hyperfine_1s_mhz", &Constants::hyperfine_1s},
    {"lamb_agreement_mhz", &Constants::lamb_agreement},
    {"hyperfine_agreement_mhz", &Constants::hyperfine_agreement},
}};

} // namespace detail

/**
 * @brief Parse a constants document (JSON object) on top of the defaults.
 *
 * Every key is an optional override. Unknown keys are reported through
 * @p warnings and otherwise ignored.
 */
inline Constants parse_constants(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("constants file is not valid JSON: ") + e.what(),
                      detail::line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) {
    throw FormatError("constants file must hold a JSON object", 1);
  }

  Constants c = kCodata2018;
  for (const auto& [key, value] : doc.items()) {
    const auto it = std::find_if(detail::kConstantsKeys.begin(), detail::kConstantsKeys.end(),
                                 [&](const auto& k) { return key == k.name; });
    if (it == detail::kConstantsKeys.end()) {
      if (warnings) warnings->push_back("unknown constants key '" + key + "' ignored");
      continue;
    }
    if (!value.is_number()) {
      throw ConfigError("constants key '" + key + "' must be a number");
    }
    c.*(it->field) = value.get<double>();
  }
  validate(c);
  return c;
}

/// Bundled defaults when @p path is empty, otherwise the file's overrides on top of them.
inline Constants load_constants(const std::optional<std::filesystem::path>& path,
                                std::vector<std::string>* warnings = nullptr) {
  if (!path) return kCodata2018;
  std::ifstream in(*path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open constants file '" + path->string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_constants(buf.str(), warnings);
}

// ---------------------------------------------------------------------------
// Energy

enum class Unit { eV, MHz, GHz };

inline std::string_view to_string(Unit u) {
  switch (u) {
  case Unit::eV: return "eV";
  case Unit::MHz: return "MHz";
  case Unit::GHz: return "GHz";
  }
  return "eV";
}

inline std::optional<Unit> parse_unit(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "ev") return Unit::eV;
  if (lower == "mhz") return Unit::MHz;
  if (lower == "ghz") return Unit::GHz;
  return std::nullopt;
}

struct Energy {
  double magnitude = 0.0;
  Unit unit = Unit::eV;

  static constexpr Energy ev(double v) { return {v, Unit::eV}; }
  static constexpr Energy mhz(double v) { return {v, Unit::MHz}; }
  static constexpr Energy ghz(double v) { return {v, Unit::GHz}; }

  friend bool operator==(const Energy&, const Energy&) = default;
};

namespace detail {

// Frequency in Hz represented by one unit, or 0 for eV.
inline constexpr double hertz_per(Unit u) {
  switch (u) {
  case Unit::MHz: return 1e6;
  case Unit::GHz: return 1e9;
  case Unit::eV: return 0.0;
  }
  return 0.0;
}

} // namespace detail

/// Same physical energy in @p target, using E = h nu.
inline Energy convert(const Energy& e, Unit target, const Constants& c) {
  if (e.unit == target) return e;
  if (e.unit == Unit::eV) {
    return {e.magnitude / (c.planck_h * detail::hertz_per(target)), target};
  }
  if (target == Unit::eV) {
    return {e.magnitude * c.planck_h * detail::hertz_per(e.unit), target};
  }
  // between two frequency units: a pure decimal rescale
  return {e.magnitude * (detail::hertz_per(e.unit) / detail::hertz_per(target)), target};
}

inline double to_ev(const Energy& e, const Constants& c) { return convert(e, Unit::eV, c).magnitude; }

/**
 * @brief Parse "<number><unit>" with an optional space, e.g. "1MHz", "0.1 MHz", "4e-9eV".
 */
inline std::optional<Energy> parse_energy(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  // Split at the first alphabetic character that is not part of an exponent.
  std::size_t split = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const bool exponent = (ch == 'e' || ch == 'E') && i > 0 && i + 1 < s.size() &&
                            (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '-' ||
                             s[i + 1] == '+');
      if (!exponent) {
        split = i;
        break;
      }
    }
  }
  if (split == 0 || split == s.size()) return std::nullopt;
  const auto unit = parse_unit(std::string_view(s).substr(split));
  if (!unit) return std::nullopt;
  std::istringstream num(s.substr(0, split));
  num.imbue(std::locale::classic());
  double value = 0.0;
  if (!(num >> value) || !num.eof() || !std::isfinite(value)) return std::nullopt;
  return Energy{value, *unit};
}

// ---------------------------------------------------------------------------
// Length scales

/// Reduced Compton wavelength hbar/(m c), meters.
inline double compton_wavelength(const Constants& c) { return c.hbar_c / c.electron_mass; }

/// hbar/(m c alpha), meters.
inline double bohr_radius(const Constants& c) { return c.hbar_c / (c.electron_mass * c.alpha); }

/// Bohr radius in natural units (eV^-1): 1/(m alpha).
inline double bohr_length_natural(const Constants& c) { return 1.0 / (c.electron_mass * c.alpha); }

} // namespace smeared
