#include "cmverify/arctan_cm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cmverify::arctan_cm {

namespace q = cmverify::quadrature;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Beyond this |v| the raw t-form would overflow; use the 1/t-scaled form.
constexpr double kRawLimit = 300.0;

void require_converged(const q::QuadResult<double>& r, const char* what) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge (err_est = " +
                           std::to_string(r.err_est) + ")");
  }
}

Tolerance halved(const Tolerance& tol) { return {tol.abs_tol / 2.0, tol.rel_tol / 2.0, tol.max_evals}; }

// (1+t)^2 / (x^2 (1-t)^2 + (1+t)^2) and (1-t^2) / (x^2 (1-t)^2 + (1+t)^2) in
// v = ln t. Both are invariant (resp. odd) under t -> 1/t; for v > kRawLimit
// the ratio is evaluated with 1/t to stay finite.
double g2_ratio(double x, double v) {
  const double t = v <= kRawLimit ? std::exp(v) : std::exp(-v);
  const double p = 1.0 + t;
  const double m = 1.0 - t;
  return p * p / (x * x * m * m + p * p);
}

double imag_ratio(double x, double v) {
  const double t = v <= kRawLimit ? std::exp(v) : std::exp(-v);
  const double p = 1.0 + t;
  const double m = 1.0 - t;
  const double r = (m * p) / (x * x * m * m + p * p);
  return v <= kRawLimit ? r : -r;
}

double g2_v(double x, double v) { return g2_ratio(x, v) / (x * (v * v + kPi2)); }
double imag_v(double x, double v) { return imag_ratio(x, v) / (v * v + kPi2); }

// Lower half over v in (-inf, 0) and upper half over (0, 1) + (1, inf).
// The two halves use different sample sets.
std::pair<double, double> halves(const q::RealFn& kernel, const Tolerance& tol, const char* what) {
  const auto lower = q::integrate_semi_infinite([&](double u) { return kernel(-u); }, 0.0, tol);
  require_converged(lower, what);
  const auto near = q::integrate_adaptive(kernel, q::Interval(0.0, 1.0), halved(tol));
  require_converged(near, what);
  const auto far = q::integrate_semi_infinite(kernel, 1.0, halved(tol));
  require_converged(far, what);
  return {lower.value, near.value + far.value};
}

}  // namespace

EvalPoint::EvalPoint(double x) : x_(x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("evaluation point must be positive and finite, got " + std::to_string(x));
  }
}

OscKernelParams::OscKernelParams(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("kernel parameters a, b must be positive and finite");
  }
}

double f_closed(EvalPoint x) { return 1.0 / std::atan(x.value()); }

double g_closed(EvalPoint x) {
  const double v = x.value();
  return 1.0 / ((v * v + 1.0) * std::atan(v));
}

double density_amplitude(double qv) {
  if (!(qv > 1.0)) throw std::domain_error("density_amplitude: q must exceed 1");
  const double log_ratio = -std::log1p(2.0 / (qv - 1.0));  // ln((q-1)/(q+1)) = ln t
  return 4.0 / ((qv - 1.0) * (qv + 1.0) * (log_ratio * log_ratio + kPi2));
}

DensityPoint density_w(double s, const Tolerance& tol) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::domain_error("density_w: s must be finite and >= 0");
  if (s == 0.0) return {0.0, 0.0, 0.0};

  const Tolerance part = halved(tol);

  // v in (-inf, split): u = -v, k(v) = coth(u/2), 1 - cos y = 2 sin^2(y/2).
  auto direct = [s](double u) {
    const double k = 1.0 / std::tanh(0.5 * u);
    const double h = std::sin(0.5 * k * s);
    return 4.0 * h * h / (u * u + kPi2);
  };
  const auto slow = q::integrate_semi_infinite(direct, -kDensitySplit, part);
  require_converged(slow, "density_w (v < split)");

  // v in (split, 0): q = coth(-v/2) runs over (coth(1/2), inf) with frequency s.
  const double q_split = 1.0 / std::tanh(-0.5 * kDensitySplit);
  const auto fast = q::integrate_oscillatory_decaying(density_amplitude, s,
                                                      q::Interval(q_split, q::kInfinity), part);
  require_converged(fast, "density_w (oscillatory)");

  DensityPoint out{s, slow.value + fast.value, slow.err_est + fast.err_est};
  if (out.w < 0.0) {
    if (-out.w > out.err) throw ConvergenceError("density_w: negative beyond error estimate");
    out.w = 0.0;
  }
  return out;
}

double laplace_cutoff(double x) { return std::max(50.0, 40.0 / x); }

q::QuadResult<double> representation_detail(EvalPoint x, const RepresentationTolerance& tol) {
  const double xv = x.value();
  const double cutoff = laplace_cutoff(xv);
  double worst_inner = 0.0;
  auto integrand = [&](double s) {
    const DensityPoint d = density_w(s, tol.inner);
    worst_inner = std::max(worst_inner, d.err);
    return d.w * std::exp(-xv * s);
  };
  q::QuadResult<double> r = q::integrate_adaptive(integrand, q::Interval(0.0, cutoff), tol.outer);
  const double decay = std::exp(-xv * cutoff);
  r.err_est += worst_inner * (1.0 - decay) / xv + kDensityCap * decay / xv;
  return r;
}

double g_via_representation(EvalPoint x, const RepresentationTolerance& tol) {
  const auto r = representation_detail(x, tol);
  require_converged(r, "g_via_representation");
  return r.value;
}

double g2_integrand(double x, double t, double log_t) {
  const double p = 1.0 + t;
  const double m = 1.0 - t;
  return p * p / (x * t * (x * x * m * m + p * p) * (log_t * log_t + kPi2));
}

double imag_kernel_integrand(double x, double t, double log_t) {
  const double p = 1.0 + t;
  const double m = 1.0 - t;
  return (1.0 - t * t) / (t * (x * x * m * m + p * p) * (log_t * log_t + kPi2));
}

double g_via_g2(EvalPoint x, const Tolerance& tol) {
  const double xv = x.value();
  const auto r = q::integrate_semi_infinite([xv](double u) { return g2_v(xv, -u); }, 0.0, tol);
  require_converged(r, "g_via_g2");
  return 2.0 * r.value;
}

double imag_vanishing_integral(EvalPoint x, const Tolerance& tol) {
  const double xv = x.value();
  const auto [lower, upper] = halves([xv](double v) { return imag_v(xv, v); }, tol, "imag_vanishing_integral");
  return lower + upper;
}

std::pair<double, double> symmetry_check(EvalPoint x, const Tolerance& tol) {
  const double xv = x.value();
  return halves([xv](double v) { return g2_v(xv, v); }, tol, "symmetry_check");
}

std::pair<double, double> normalization_halves(const Tolerance& tol) {
  return halves([](double v) { return 1.0 / (v * v + kPi2); }, tol, "normalization");
}

double normalization_identity(const Tolerance& tol) {
  const auto [lower, upper] = normalization_halves(tol);
  return lower + upper;
}

std::pair<double, double> laplace_kernel_identity(const OscKernelParams& p, double x, const Tolerance& tol) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("laplace_kernel_identity: x must be positive");
  const double lhs = 1.0 / (x * (p.a * p.a * x * x + p.b * p.b));
  const auto r = q::integrate_oscillatory_decaying([x](double s) { return std::exp(-x * s); }, p.b / p.a,
                                                   q::Interval(0.0, q::kInfinity), tol);
  require_converged(r, "laplace_kernel_identity");
  return {lhs, r.value / (p.b * p.b)};
}

}  // namespace cmverify::arctan_cm
