#pragma once

// Physical parameters and numerical configuration shared by every stage of
// the pipeline. Units: hbar = m = omega = 1, so energies are in units of
// hbar*omega and lengths in oscillator lengths sqrt(hbar/(m*omega)).

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twobody {

/// Base class for errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad user input (parameters, config files, CLI flags).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A numerical procedure failed to converge or detected inconsistency.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Interaction strength: either a finite value or the hardcore limit.
class Strength {
public:
  static Strength finite(double kappa);
  static Strength hardcore() { return Strength{}; }

  bool is_hardcore() const { return hardcore_; }
  /// Finite value; throws InvalidArgument for the hardcore state.
  double value() const;

  /// "inf" for hardcore, otherwise the shortest round-trip decimal.
  std::string to_string() const;
  /// Accepts a real number or "inf" (case-insensitive, optional leading '+').
  static Strength parse(const std::string& text);

  friend bool operator==(const Strength&, const Strength&) = default;

private:
  Strength() = default;
  bool hardcore_ = true;
  double kappa_ = 0.0;
};

struct SystemParams {
  Strength kappa = Strength::finite(0.0);
  double sigma = 1.0;

  /// True when the relative problem reduces to the free oscillator.
  bool non_interacting() const;
};

struct NumericsConfig {
  int n_radial = 400;
  double r_max = 8.0;
  int n_angular = 512;
  int l_max = 64;
  int m_sine = 40;
  double box_L = 8.0;
  double energy_tol = 1e-10;
  double bracket_step = 0.05;
  int workers = 1;

  /// Defaults with the radial domain tracking the interaction range.
  static NumericsConfig defaults(double sigma);

  friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

struct Violation {
  std::string field;
  std::string rule;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(const std::string& rule) const;
  std::string summary() const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

bool operator==(const Violation& a, const Violation& b);

ValidationReport validate(const SystemParams& params, const NumericsConfig& cfg);

// ---------------------------------------------------------------------------
// Flat key=value configuration files.

/// Parsed contents of a config file. Physical keys are optional; numerics
/// keys are kept as overrides so defaults that depend on sigma can be
/// resolved once sigma is known.
struct ConfigFile {
  std::optional<Strength> kappa;
  std::optional<double> sigma;
  std::map<std::string, std::string> numerics;
  /// Keys the numerics schema does not know (sweep grids etc.), verbatim.
  std::map<std::string, std::string> extra;
};

ConfigFile parse_config(std::istream& in);
ConfigFile load_config(const std::string& path);

/// Defaults for `sigma`, then the overrides applied in key order. If r_max is
/// overridden but box_L is not, box_L follows r_max.
NumericsConfig resolve_numerics(const std::map<std::string, std::string>& overrides, double sigma);

/// Serialize as a config file that resolve_numerics reads back identically.
std::string to_config_text(const SystemParams& params, const NumericsConfig& cfg);

/// Locale-independent formatting with 12 significant digits.
std::string format_real(double x);

}  // namespace twobody
