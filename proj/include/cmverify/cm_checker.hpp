#pragma once

// Sign tables for complete monotonicity (CM), logarithmic complete
// monotonicity and the Bernstein property, built on Cauchy-circle
// differentiation of functions analytic around the positive real axis.
//
// A finite table can only be consistent with a property, never prove it.

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmverify::cm_checker {

using Complex = std::complex<double>;

struct AnalyticFn {
  std::string name;
  std::function<Complex(Complex)> evaluator;
  /// Distance from x to the nearest singularity of the continuation.
  std::function<double(double)> singularity_radius;
  /// Radius around x inside which the principal log of the function is
  /// analytic (no zeros, no crossing of the log cut). Unset means
  /// singularity_radius applies to log as well.
  std::function<double(double)> log_radius;
};

/// Non-finite sample on the differentiation circle.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The refutation found no witness, contradicting the expected sign change.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxOrder = 24;
inline constexpr std::size_t kCircleSamples = 256;

struct Derivative {
  double value = 0.0;
  double err_bound = 0.0;
  /// err_bound exceeds |value|.
  bool low_confidence = false;
};

/// n-th derivative of fn at x from kCircleSamples equispaced samples on the
/// circle |z - x| = radius_fraction * singularity_radius(x). The n-th
/// discrete Fourier coefficient c_n gives f^(n)(x) = n! c_n / rho^n.
/// err_bound collects rounding (a multiple of eps max|f| on the circle), the
/// coefficients near the Nyquist index (aliasing) and the spurious imaginary
/// part of c_n.
Derivative derivative(const AnalyticFn& fn, double x, int n, double radius_fraction = 0.5,
                      std::size_t samples = kCircleSamples);

/// All orders 0..max_order from a single set of samples.
std::vector<Derivative> derivatives(const AnalyticFn& fn, double x, int max_order, double radius_fraction = 0.5,
                                    std::size_t samples = kCircleSamples);

enum class Property { cm, log_cm, bernstein };

std::string to_string(Property p);

struct SignEntry {
  double x = 0.0;
  int n = 0;
  double value = 0.0;
  double err_bound = 0.0;
  /// +1 or -1.
  int required_sign = 1;
  /// (required_sign * value - err_bound) / (|value| + err_bound).
  double margin = 0.0;

  /// Sign requirement holds beyond numerical error.
  bool holds() const { return margin > 0.0; }
  /// Wrong sign with |value| > 10 err_bound.
  bool violates() const;
};

struct ClassReport {
  Property property = Property::cm;
  std::vector<double> grid;
  int min_order = 0;
  int max_order = 0;
  std::vector<SignEntry> entries;
  std::vector<SignEntry> witnesses;
  /// Entries that neither hold nor violate (value within 10 err_bound of zero).
  std::size_t inconclusive = 0;

  bool violated() const { return !witnesses.empty(); }
  /// "violated" or "consistent".
  std::string verdict() const { return violated() ? "violated" : "consistent"; }
};

/// (-1)^n fn^(n)(x) >= 0 for n = 0..max_order.
ClassReport cm_sign_table(const AnalyticFn& fn, const std::vector<double>& grid, int max_order);

/// (-1)^n (log fn)^(n)(x) >= 0 for n = 1..max_order. The circle radius is
/// capped by fn.log_radius when set.
ClassReport log_cm_check(const AnalyticFn& fn, const std::vector<double>& grid, int max_order);

/// fn >= 0 and (-1)^(n-1) fn^(n)(x) >= 0 for n = 1..max_order.
ClassReport bernstein_check(const AnalyticFn& fn, const std::vector<double>& grid, int max_order);

/// Third derivative of arctan: 2 (3x^2 - 1) / (1 + x^2)^3.
double h3_closed(double x);

/// Root of h3_closed in [lo, hi] by bisection. The bracket must contain a
/// sign change.
double sign_change_root(double lo = 0.25, double hi = 4.0);

struct StieltjesReport {
  ClassReport bernstein;
  std::string verdict;
  std::string narrative;
};

inline const std::vector<double> kRefutationGrid{0.25, 0.5, 1.0, 2.0, 4.0};

/// Runs bernstein_check on arctan = 1/f. A violation shows arctan is not a
/// Bernstein function, hence f = 1/arctan is not a Stieltjes transform.
/// Throws InconsistencyError when the table has no witness.
StieltjesReport stieltjes_refutation(const std::vector<double>& grid = kRefutationGrid, int max_order = 3);

AnalyticFn arctan_fn();
AnalyticFn reciprocal_arctan_fn();
/// 1 / ((x^2 + 1) arctan x).
AnalyticFn g_fn();
AnalyticFn exp_neg_fn();
AnalyticFn one_minus_exp_neg_fn();

}  // namespace cmverify::cm_checker
