#include "cmverify/cm_checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cmverify::cm_checker {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Nominal radius for entire functions: large enough for high orders, small
// enough to keep max|f| on the circle moderate.
constexpr double kEntireRadius = 40.0;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_point(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("grid points must be positive and finite");
}

SignEntry make_entry(double x, int n, const Derivative& d, int sign) {
  SignEntry e;
  e.x = x;
  e.n = n;
  e.value = d.value;
  e.err_bound = d.err_bound;
  e.required_sign = sign;
  const double scale = std::abs(d.value) + d.err_bound;
  e.margin = scale > 0.0 ? (sign * d.value - d.err_bound) / scale : 0.0;
  return e;
}

template <class SignFn>
ClassReport table(Property prop, const AnalyticFn& fn, const std::vector<double>& grid, int min_order,
                  int max_order, SignFn required) {
  if (max_order < min_order || max_order > kMaxOrder) {
    throw std::invalid_argument("max_order must lie in [" + std::to_string(min_order) + ", 24]");
  }
  ClassReport rep;
  rep.property = prop;
  rep.grid = grid;
  rep.min_order = min_order;
  rep.max_order = max_order;
  for (double x : grid) {
    check_point(x);
    const auto ds = derivatives(fn, x, max_order);
    for (int n = min_order; n <= max_order; ++n) {
      const SignEntry e = make_entry(x, n, ds[n], required(n));
      if (e.violates()) {
        rep.witnesses.push_back(e);
      } else if (!e.holds()) {
        ++rep.inconclusive;
      }
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace

std::vector<Derivative> derivatives(const AnalyticFn& fn, double x, int max_order, double radius_fraction,
                                    std::size_t samples) {
  check_point(x);
  if (max_order < 0 || max_order > kMaxOrder) throw std::invalid_argument("derivative order must lie in [0, 24]");
  if (!(radius_fraction > 0.0 && radius_fraction < 1.0)) throw std::invalid_argument("radius_fraction must lie in (0, 1)");
  if (samples < 4 * static_cast<std::size_t>(max_order + 1)) throw std::invalid_argument("too few circle samples");
  if (!fn.evaluator || !fn.singularity_radius) throw std::invalid_argument("AnalyticFn is incomplete");

  const double radius = fn.singularity_radius(x);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::domain_error("singularity radius must be positive");
  const double rho = radius_fraction * radius;
  const std::size_t m = samples;

  std::vector<Complex> f(m);
  double fmax = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Complex z = x + std::polar(rho, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m));
    f[k] = fn.evaluator(z);
    if (!finite(f[k])) {
      throw EvaluationError(fn.name + ": non-finite sample at z = " + std::to_string(z.real()) + " + " +
                            std::to_string(z.imag()) + "i");
    }
    fmax = std::max(fmax, std::abs(f[k]));
  }

  auto coefficient = [&](std::size_t n) {
    Complex acc{};
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t phase = (n * k) % m;
      acc += f[k] * std::polar(1.0, -2.0 * kPi * static_cast<double>(phase) / static_cast<double>(m));
    }
    return acc / static_cast<double>(m);
  };

  const double nyquist = std::abs(coefficient(m / 2)) + std::abs(coefficient(m / 2 - 1));
  const double noise = 10.0 * kEps * fmax + nyquist;

  std::vector<Derivative> out(max_order + 1);
  double scale = 1.0;  // n! / rho^n
  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) scale *= n / rho;
    const Complex c = coefficient(n);
    Derivative& d = out[n];
    d.value = scale * c.real();
    d.err_bound = scale * (noise + std::abs(c.imag()));
    d.low_confidence = d.err_bound > std::abs(d.value);
  }
  return out;
}

Derivative derivative(const AnalyticFn& fn, double x, int n, double radius_fraction, std::size_t samples) {
  if (n < 0 || n > kMaxOrder) throw std::invalid_argument("derivative order must lie in [0, 24]");
  return derivatives(fn, x, n, radius_fraction, samples)[n];
}

std::string to_string(Property p) {
  switch (p) {
    case Property::cm:
      return "CM";
    case Property::log_cm:
      return "logCM";
    case Property::bernstein:
      return "Bernstein";
  }
  return "?";
}

bool SignEntry::violates() const { return margin < 0.0 && std::abs(value) > 10.0 * err_bound; }

ClassReport cm_sign_table(const AnalyticFn& fn, const std::vector<double>& grid, int max_order) {
  return table(Property::cm, fn, grid, 0, max_order, [](int n) { return n % 2 == 0 ? 1 : -1; });
}

ClassReport log_cm_check(const AnalyticFn& fn, const std::vector<double>& grid, int max_order) {
  AnalyticFn log_fn;
  log_fn.name = "log " + fn.name;
  log_fn.evaluator = [ev = fn.evaluator](Complex z) { return std::log(ev(z)); };
  log_fn.singularity_radius = [r = fn.singularity_radius, zd = fn.log_radius](double x) {
    return zd ? std::min(r(x), zd(x)) : r(x);
  };
  return table(Property::log_cm, log_fn, grid, 1, max_order, [](int n) { return n % 2 == 0 ? 1 : -1; });
}

ClassReport bernstein_check(const AnalyticFn& fn, const std::vector<double>& grid, int max_order) {
  return table(Property::bernstein, fn, grid, 0, max_order, [](int n) { return n == 0 || n % 2 == 1 ? 1 : -1; });
}

double h3_closed(double x) {
  check_point(x);
  const double u = 1.0 + x * x;
  return 2.0 * (3.0 * x * x - 1.0) / (u * u * u);
}

double sign_change_root(double lo, double hi) {
  check_point(lo);
  check_point(hi);
  if (!(lo < hi)) throw std::invalid_argument("sign_change_root: need lo < hi");
  double flo = h3_closed(lo);
  const double fhi = h3_closed(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw std::invalid_argument("sign_change_root: bracket has no sign change");
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    const double fm = h3_closed(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

StieltjesReport stieltjes_refutation(const std::vector<double>& grid, int max_order) {
  StieltjesReport rep;
  rep.bernstein = bernstein_check(arctan_fn(), grid, max_order);
  if (!rep.bernstein.violated()) {
    throw InconsistencyError(
        "no Bernstein violation of arctan on the given grid and orders; a sign change of the third "
        "derivative is expected below 1/sqrt(3)");
  }
  const SignEntry& w = rep.bernstein.witnesses.front();
  rep.verdict = "not Stieltjes";
  rep.narrative = "arctan fails the Bernstein sign condition at x = " + std::to_string(w.x) +
                  ", order " + std::to_string(w.n) + " (value " + std::to_string(w.value) +
                  "), so arctan is not a Bernstein function and 1/arctan is not a Stieltjes transform";
  return rep;
}

AnalyticFn arctan_fn() {
  return {"arctan", [](Complex z) { return std::atan(z); },
          [](double x) { return std::sqrt(1.0 + x * x); },
          [](double x) { return x; }};
}

AnalyticFn reciprocal_arctan_fn() {
  return {"1/arctan", [](Complex z) { return 1.0 / std::atan(z); },
          [](double x) { return std::min(x, std::sqrt(1.0 + x * x)); }, {}};
}

AnalyticFn g_fn() {
  return {"g", [](Complex z) { return 1.0 / ((z * z + 1.0) * std::atan(z)); },
          [](double x) { return std::min(x, std::sqrt(1.0 + x * x)); }, {}};
}

AnalyticFn exp_neg_fn() {
  // the principal log of e^{-z} wraps once |Im z| reaches pi
  return {"exp(-x)", [](Complex z) { return std::exp(-z); }, [](double) { return kEntireRadius; },
          [](double) { return kPi; }};
}

AnalyticFn one_minus_exp_neg_fn() {
  // zeros of 1 - e^{-z} sit at 2 pi i k, the nearest to x > 0 being 0
  return {"1-exp(-x)", [](Complex z) { return 1.0 - std::exp(-z); }, [](double) { return kEntireRadius; },
          [](double x) { return x; }};
}

}  // namespace cmverify::cm_checker
