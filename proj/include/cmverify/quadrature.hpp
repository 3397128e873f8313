#pragma once

// Adaptive one-dimensional integration for real and complex integrands.
//
// The base rule is the 10/21-point Gauss-Kronrod pair. Neither rule touches
// the interval endpoints, so integrands with integrable endpoint
// singularities (1/sqrt(t), log-type) may be passed as-is. Subdivision is
// global: the panel with the largest error estimate is bisected until the
// summed error meets the tolerance or the evaluation budget is exhausted.
//
// All entry points are pure functions of their arguments. Evaluation order
// is fixed, so value, err_est and n_evals are reproducible run to run.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace cmverify::quadrature {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(Complex)>;

/// Integration range. `hi` may be kInfinity; `lo` must be finite.
struct Interval {
  double lo;
  double hi;

  Interval(double lo, double hi);

  bool finite() const { return hi != kInfinity; }
  double length() const { return hi - lo; }
};

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::size_t max_evals = 400000;

  /// Throws std::invalid_argument unless abs_tol > 0, rel_tol >= 0 and
  /// max_evals >= 15.
  void validate() const;

  double target(double magnitude) const;
};

template <class T>
struct QuadResult {
  T value{};
  double err_est = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

/// Thrown when the integrand returns NaN or an infinity.
class IntegrandError : public std::runtime_error {
 public:
  explicit IntegrandError(double abscissa);
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

/// A continuously differentiable curve z(tau), tau in [t0, t1].
///
/// `reversed()` flips orientation without changing the parametrisation, so
/// a reversed path is integrated on exactly the same samples.
struct ParametricPath {
  std::function<Complex(double)> point;
  std::function<Complex(double)> tangent;
  double t0 = 0.0;
  double t1 = 1.0;
  int orientation = 1;

  ParametricPath reversed() const;

  /// Counter-clockwise arc center + radius * exp(i theta), theta in [theta0, theta1].
  /// Pass theta0 > theta1 for a clockwise arc.
  static ParametricPath arc(Complex center, double radius, double theta0, double theta1);
  static ParametricPath circle(Complex center, double radius);
  static ParametricPath segment(Complex from, Complex to);
};

QuadResult<double> integrate_adaptive(const RealFn& f, const Interval& iv,
                                      const Tolerance& tol = {});

QuadResult<Complex> integrate_adaptive_complex(const std::function<Complex(double)>& f,
                                               const Interval& iv, const Tolerance& tol = {});

/// Integral over (lo, inf). The range is mapped onto (0, 1) by
/// s = lo + u / (1 - u), ds = du / (1 - u)^2, and handed to integrate_adaptive.
/// A tail probe at s - lo = 1e4, 1e8, 1e12 flags integrands with |f(s)| s not
/// shrinking; those come back with converged = false.
QuadResult<double> integrate_semi_infinite(const RealFn& f, double lo, const Tolerance& tol = {});

QuadResult<Complex> integrate_semi_infinite_complex(const std::function<Complex(double)>& f,
                                                    double lo, const Tolerance& tol = {});

/// Contour integral of f along `path`.
QuadResult<Complex> integrate_complex_path(const ComplexFn& f, const ParametricPath& path,
                                           const Tolerance& tol = {});

/// Integral of amplitude(u) * (1 - cos(frequency * u)) over `iv`.
///
/// Computed as the plain integral of the amplitude minus the cosine moment.
/// The cosine moment is split at the zeros of cos(frequency * u), so the
/// half-period panel integrals alternate in sign; on an infinite range
/// their partial sums are accelerated by repeated averaging (depth <= 12)
/// until two consecutive accelerated values agree. The amplitude is
/// expected to be positive and decaying.
QuadResult<double> integrate_oscillatory_decaying(const RealFn& amplitude, double frequency,
                                                  const Interval& iv, const Tolerance& tol = {});

}  // namespace cmverify::quadrature
