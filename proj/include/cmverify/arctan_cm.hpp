#pragma once

// Closed forms and integral identities behind the complete monotonicity of
//
//   g(x) = -(log f)'(x) = 1 / ((x^2 + 1) arctan x),   f(x) = 1 / arctan x,
//
// together with the Laplace density w(s) for which g(x) = int_0^inf w(s) e^{-xs} ds.
//
// Every integrand carrying the weight 1 / (t (ln^2 t + pi^2)) is integrated in
// v = ln t, where the weight becomes 1 / (v^2 + pi^2) and the t = 0 endpoint
// moves to v = -inf.

#include <stdexcept>
#include <utility>

#include "cmverify/quadrature.hpp"

namespace cmverify::arctan_cm {

using quadrature::Tolerance;

/// Thrown when an integral needed by an identity fails to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument of f and g: positive and finite.
class EvalPoint {
 public:
  explicit EvalPoint(double x);
  double value() const { return x_; }
  operator double() const { return x_; }

 private:
  double x_;
};

struct DensityPoint {
  double s = 0.0;
  double w = 0.0;
  double err = 0.0;
};

/// (a, b) of the kernel identity 1/(x(a^2 x^2 + b^2)) = b^-2 int e^{-xs}(1 - cos(bs/a)) ds.
struct OscKernelParams {
  double a;
  double b;
  OscKernelParams(double a, double b);
};

double f_closed(EvalPoint x);
double g_closed(EvalPoint x);

/// Inner integrals (density, g2 form, identities).
inline constexpr Tolerance kInnerTolerance{1e-10, 1e-9, 400000};

/// Tolerances for the Laplace reconstruction of g.
struct RepresentationTolerance {
  Tolerance inner = kInnerTolerance;
  Tolerance outer{1e-11, 1e-9, 200000};
};

/// Split point of the density integral in v = ln t. Below it the integrand
/// is integrated directly; above it (t -> 1) the variable q = (1+t)/(1-t)
/// turns the integrand into amplitude(q) (1 - cos(s q)).
inline constexpr double kDensitySplit = -1.0;

/// w(s) = int_0^1 2 (1 - cos((1+t)/(1-t) s)) / (t (ln^2 t + pi^2)) dt.
DensityPoint density_w(double s, const Tolerance& tol = kInnerTolerance);

/// Amplitude of the oscillatory part of w in the variable q = (1+t)/(1-t):
/// 4 / ((q^2 - 1)(ln^2((q-1)/(q+1)) + pi^2)), q > 1.
double density_amplitude(double q);

/// Sup of w over s >= 0: 1 - cos <= 2 and int_{-inf}^0 2/(v^2+pi^2) dv = 1.
inline constexpr double kDensityCap = 2.0;

/// Truncation point of the outer Laplace integral.
double laplace_cutoff(double x);

/// int_0^inf w(s) e^{-xs} ds with err_est covering outer quadrature, inner
/// density errors and the truncated tail (kDensityCap e^{-x S} / x).
quadrature::QuadResult<double> representation_detail(EvalPoint x, const RepresentationTolerance& tol = {});
double g_via_representation(EvalPoint x, const RepresentationTolerance& tol = {});

/// 2 int_0^1 (1+t)^2 / (x t (x^2 (1-t)^2 + (1+t)^2)(ln^2 t + pi^2)) dt.
double g_via_g2(EvalPoint x, const Tolerance& tol = kInnerTolerance);

/// Integrand of g2 without the factor 2, as written in t. Callers pass
/// log_t = ln t so that tiny t keep full precision.
double g2_integrand(double x, double t, double log_t);

/// (1 - t^2) / (t (x^2 (1-t)^2 + (1+t)^2)(ln^2 t + pi^2)).
double imag_kernel_integrand(double x, double t, double log_t);

/// int_0^inf of imag_kernel_integrand; zero for every x > 0.
double imag_vanishing_integral(EvalPoint x, const Tolerance& tol = kInnerTolerance);

/// (0,1) and (1,inf) halves of the g2 integrand. Equal by t -> 1/t.
std::pair<double, double> symmetry_check(EvalPoint x, const Tolerance& tol = kInnerTolerance);

/// (0,1) and (1,inf) halves of int_0^inf dt / (t (ln^2 t + pi^2)).
std::pair<double, double> normalization_halves(const Tolerance& tol = kInnerTolerance);
double normalization_identity(const Tolerance& tol = kInnerTolerance);

/// (closed-form left side, quadrature right side including the 1/b^2 factor).
std::pair<double, double> laplace_kernel_identity(const OscKernelParams& p, double x,
                                                  const Tolerance& tol = {1e-12, 1e-12, 400000});

}  // namespace cmverify::arctan_cm
