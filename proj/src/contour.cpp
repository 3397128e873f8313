#include "cmverify/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cmverify::contour {

namespace q = cmverify::quadrature;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr ComplexValue kI{0.0, 1.0};
constexpr double kRawLimit = 300.0;
constexpr double kClearance = 1e-3;

void require_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("x must be positive and finite");
}

ComplexValue boundary_value(double t, double x, double side) {
  require_x(x);
  if (!(t < 0.0) || !std::isfinite(t)) throw std::domain_error("boundary values of G exist only for t < 0");
  const ComplexValue z{t, 0.0};
  const ComplexValue log_z{std::log(-t), side * kPi};
  return (z + 1.0) / (z * (z - z0(x)) * log_z);
}

q::Tolerance split(const q::Tolerance& tol, int parts) {
  return {tol.abs_tol / parts, tol.rel_tol, tol.max_evals};
}

// Integral of f over (lo, hi) where either end may be infinite.
q::QuadResult<ComplexValue> over_line(const std::function<ComplexValue(double)>& f, double lo, double hi,
                                      const q::Tolerance& tol) {
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (!lo_inf && !hi_inf) return q::integrate_adaptive_complex(f, q::Interval(lo, hi), tol);
  if (lo_inf && hi_inf) {
    const q::Tolerance half = split(tol, 2);
    auto left = q::integrate_semi_infinite_complex([&f](double u) { return f(-u); }, 0.0, half);
    const auto right = q::integrate_semi_infinite_complex(f, 0.0, half);
    left.value += right.value;
    left.err_est += right.err_est;
    left.n_evals += right.n_evals;
    left.converged = left.converged && right.converged;
    return left;
  }
  if (hi_inf) return q::integrate_semi_infinite_complex(f, lo, tol);
  return q::integrate_semi_infinite_complex([&f](double u) { return f(-u); }, -hi, tol);
}

void accumulate(q::QuadResult<ComplexValue>& acc, const q::QuadResult<ComplexValue>& part) {
  acc.value += part.value;
  acc.err_est += part.err_est;
  acc.n_evals += part.n_evals;
  acc.converged = acc.converged && part.converged;
}

void check_clearance(double x, double R, double r) {
  if (std::abs(R - 1.0) < kClearance || std::abs(1.0 - r) < kClearance) {
    throw GeometryError("keyhole circle passes within 1e-3 of the poles on the unit circle");
  }
  const ComplexValue p = z0(x);
  if (p.real() < 0.0 && p.imag() < kClearance) {
    throw GeometryError("pole z0 lies within 1e-3 of the cut");
  }
}

}  // namespace

PoleError::PoleError(const std::string& which, ComplexValue z)
    : std::domain_error("G has a pole at " + which + " (z = " + std::to_string(z.real()) + " + " +
                        std::to_string(z.imag()) + "i)"),
      which_(which) {}

void ContourSpec::validate() const {
  if (!(R > 1.0) || !std::isfinite(R)) throw std::invalid_argument("ContourSpec: need finite R > 1");
  if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("ContourSpec: need 0 < r < 1");
  if (!(delta > 0.0) || !(delta < kPi / 8.0)) throw std::invalid_argument("ContourSpec: need 0 < delta < pi/8");
  if (panels < 1) throw std::invalid_argument("ContourSpec: panels must be >= 1");
}

ComplexValue z0(double x) {
  require_x(x);
  const double d = 1.0 + x * x;
  return {(1.0 - x * x) / d, 2.0 * x / d};
}

ComplexValue G_eval(ComplexValue z, double x) {
  require_x(x);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::domain_error("G_eval: z must be finite");
  if (z == ComplexValue{}) throw PoleError("0", z);
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw std::domain_error("G_eval: z is on the branch cut; use G_plus or G_minus");
  }
  if (z == ComplexValue{1.0, 0.0}) throw PoleError("1", z);
  const ComplexValue p = z0(x);
  if (z == p) throw PoleError("z0", z);
  const ComplexValue den = z * (z - p) * std::log(z);
  if (den == ComplexValue{}) throw PoleError(std::abs(z - p) < std::abs(z - 1.0) ? "z0" : "1", z);
  return (z + 1.0) / den;
}

ComplexValue G_plus(double t, double x) { return boundary_value(t, x, 1.0); }
ComplexValue G_minus(double t, double x) { return boundary_value(t, x, -1.0); }

ComplexValue residue_z0(double x) {
  require_x(x);
  return -(x + kI) / ((x * x + 1.0) * std::atan(x));
}

ComplexValue residue_one(double x) {
  require_x(x);
  return (x + kI) / x;
}

q::QuadResult<ComplexValue> numeric_residue(ComplexValue center, double radius, double x, const Tolerance& tol) {
  require_x(x);
  auto r = q::integrate_complex_path([x](ComplexValue z) { return G_eval(z, x); },
                                     q::ParametricPath::circle(center, radius), tol);
  r.value /= 2.0 * kPi * kI;
  r.err_est /= 2.0 * kPi;
  return r;
}

ComplexValue cut_jump_density(double v, double x) {
  const ComplexValue p = z0(x);
  ComplexValue ratio;
  if (v <= kRawLimit) {
    const double t = std::exp(v);
    ratio = (1.0 - t) / (t + p);
  } else {
    const double u = std::exp(-v);
    ratio = (u - 1.0) / (1.0 + p * u);
  }
  return -2.0 * kPi * kI * ratio / (v * v + kPi2);
}

q::QuadResult<ComplexValue> cut_jump_detail(double x, double R, double r, const Tolerance& tol) {
  require_x(x);
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("cut_jump_integral: need 0 <= r < 1");
  if (!(R > 1.0)) throw std::invalid_argument("cut_jump_integral: need R > 1");
  tol.validate();
  const double lo = r == 0.0 ? -q::kInfinity : std::log(r);
  const double hi = std::isinf(R) ? q::kInfinity : std::log(R);
  auto f = [x](double v) { return cut_jump_density(v, x); };
  if (std::isinf(lo) != std::isinf(hi)) {
    // keep the finite stretch around v = 0 on the adaptive rule
    const q::Tolerance half = split(tol, 2);
    const double mid = std::isinf(lo) ? std::min(hi, 0.0) : std::max(lo, 0.0);
    auto acc = std::isinf(lo) ? over_line(f, lo, mid, half) : over_line(f, mid, hi, half);
    if (std::isinf(lo) ? mid < hi : lo < mid) {
      accumulate(acc, std::isinf(lo) ? over_line(f, mid, hi, half) : over_line(f, lo, mid, half));
    }
    return acc;
  }
  return over_line(f, lo, hi, tol);
}

ComplexValue cut_jump_integral(double x, double R, double r, const Tolerance& tol) {
  return cut_jump_detail(x, R, r, tol).value;
}

q::QuadResult<ComplexValue> arc_integral(double x, double radius, bool clockwise, const ContourSpec& spec,
                                         const Tolerance& tol) {
  require_x(x);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("arc_integral: bad radius");
  auto G = [x](ComplexValue z) { return G_eval(z, x); };
  const q::Tolerance piece = split(tol, 2 * spec.panels);

  auto at_gap = [&](double delta) {
    q::QuadResult<ComplexValue> acc{{}, 0.0, 0, true};
    const double start = -kPi + delta;
    const double step = (2.0 * kPi - 2.0 * delta) / spec.panels;
    for (int k = 0; k < spec.panels; ++k) {
      const double a = start + step * k;
      const double b = k + 1 == spec.panels ? kPi - delta : start + step * (k + 1);
      const auto path = clockwise ? q::ParametricPath::arc(0.0, radius, b, a) : q::ParametricPath::arc(0.0, radius, a, b);
      accumulate(acc, q::integrate_complex_path(G, path, piece));
    }
    return acc;
  };

  const auto coarse = at_gap(spec.delta);
  const auto fine = at_gap(0.5 * spec.delta);
  q::QuadResult<ComplexValue> out;
  out.value = 2.0 * fine.value - coarse.value;
  const double edge = std::max(std::abs(G_plus(-radius, x)), std::abs(G_minus(-radius, x)));
  out.err_est = 2.0 * fine.err_est + coarse.err_est + std::abs(fine.value - coarse.value) +
                radius * spec.delta * edge;
  out.n_evals = coarse.n_evals + fine.n_evals;
  out.converged = coarse.converged && fine.converged;
  return out;
}

ResidueReport keyhole_integral(double x, const ContourSpec& spec, const Tolerance& tol, CutTreatment cut) {
  require_x(x);
  spec.validate();
  tol.validate();
  check_clearance(x, spec.R, spec.r);

  const auto outer = arc_integral(x, spec.R, false, spec, tol);
  const auto inner = arc_integral(x, spec.r, true, spec, tol);

  q::QuadResult<ComplexValue> sides;
  if (cut == CutTreatment::jump) {
    sides = cut_jump_detail(x, spec.R, spec.r, tol);
  } else {
    // the upper side is walked out and back on identical values, so the sides cancel
    sides = {ComplexValue{}, 0.0, 0, true};
  }

  ResidueReport rep;
  rep.res_z0 = residue_z0(x);
  rep.res_1 = residue_one(x);
  rep.outer_arc = outer.value;
  rep.inner_arc = inner.value;
  rep.segments = sides.value;
  rep.loop_integral = outer.value + sides.value + inner.value;
  rep.closure_defect = std::abs(rep.loop_integral - 2.0 * kPi * kI * (rep.res_z0 + rep.res_1));
  rep.err_est = outer.err_est + inner.err_est + sides.err_est;
  return rep;
}

ArcBounds arc_bound_check(double x, double R, double r) {
  require_x(x);
  if (!(R > 1.0) || !std::isfinite(R) || !(r > 0.0) || !(r < 1.0)) {
    throw std::invalid_argument("arc_bound_check: need R > 1 and 0 < r < 1");
  }
  ContourSpec spec;
  spec.R = R;
  spec.r = r;
  ArcBounds out;
  out.outer_magnitude = std::abs(arc_integral(x, R, false, spec).value);
  out.inner_magnitude = std::abs(arc_integral(x, r, true, spec).value);
  const double lr = std::log(R);
  if (lr > 2.0 * kPi) out.outer_bound = 2.0 * kPi * (R + 1.0) / ((lr - 2.0 * kPi) * (R - 1.0));
  const double nr = -std::log(r);
  if (nr > 2.0 * kPi) out.inner_bound = 2.0 * kPi * (1.0 + r) / ((nr - 2.0 * kPi) * (1.0 - r));
  return out;
}

ComplexValue g_via_cut(double x, const Tolerance& tol) {
  const ComplexValue big_i = cut_jump_integral(x, q::kInfinity, 0.0, tol);
  return 1.0 / x - big_i / (2.0 * kPi * kI * (x + kI));
}

}  // namespace cmverify::contour
