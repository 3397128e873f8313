#include "cmverify/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace cmverify::quadrature {

namespace {

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss
// weights (QUADPACK qk21). Odd-indexed Kronrod nodes are the Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067808839, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double err;
};

template <class T, class F>
Panel<T> gauss_kronrod_21(const F& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  auto eval = [&f](double x) {
    T y = f(x);
    if (!finite(y)) throw IntegrandError(x);
    return y;
  };

  std::array<T, 10> fv1{};
  std::array<T, 10> fv2{};

  const T fc = eval(centr);
  T resg{};
  T resk = kWgk[10] * fc;
  double resabs = kWgk[10] * magnitude(fc);

  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const T f1 = eval(centr - absc);
    const T f2 = eval(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (magnitude(f1) + magnitude(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const T f1 = eval(centr - absc);
    const T f2 = eval(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (magnitude(f1) + magnitude(f2));
  }

  const T reskh = resk * 0.5;
  double resasc = kWgk[10] * magnitude(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (magnitude(fv1[j] - reskh) + magnitude(fv2[j] - reskh));
  }

  const T result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = magnitude((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) {
    abserr = std::max(50.0 * kEps * resabs, abserr);
  }
  return {a, b, result, abserr};
}

template <class T>
bool worse(const Panel<T>& lhs, const Panel<T>& rhs) {
  // heap order: largest error on top; ties broken by position for determinism
  if (lhs.err != rhs.err) return lhs.err < rhs.err;
  return lhs.a > rhs.a;
}

template <class T>
void resum(const std::vector<Panel<T>>& active, const std::vector<Panel<T>>& frozen, T& value,
           double& err) {
  std::vector<const Panel<T>*> all;
  all.reserve(active.size() + frozen.size());
  for (const auto& p : active) all.push_back(&p);
  for (const auto& p : frozen) all.push_back(&p);
  std::sort(all.begin(), all.end(), [](const Panel<T>* x, const Panel<T>* y) { return x->a < y->a; });
  value = T{};
  err = 0.0;
  for (const auto* p : all) {
    value += p->value;
    err += p->err;
  }
}

bool unsplittable(double a, double b) {
  const double mid = 0.5 * (a + b);
  if (!(a < mid && mid < b)) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return (b - a) <= 100.0 * kEps * scale || (b - a) <= 1000.0 * kTiny;
}

template <class T, class F>
QuadResult<T> adaptive(const F& f, double a, double b, const Tolerance& tol) {
  std::vector<Panel<T>> heap;
  std::vector<Panel<T>> frozen;
  heap.push_back(gauss_kronrod_21<T>(f, a, b));
  std::size_t evals = 21;

  T total = heap.front().value;
  double total_err = heap.front().err;
  double frozen_err = 0.0;
  std::size_t since_resum = 0;

  while (true) {
    if (total_err <= tol.target(magnitude(total))) break;
    if (heap.empty()) break;
    if (frozen_err > tol.target(magnitude(total))) break;
    if (evals + 42 > tol.max_evals) break;

    std::pop_heap(heap.begin(), heap.end(), worse<T>);
    const Panel<T> worst = heap.back();
    heap.pop_back();

    if (unsplittable(worst.a, worst.b)) {
      frozen.push_back(worst);
      frozen_err += worst.err;
      continue;
    }

    const double mid = 0.5 * (worst.a + worst.b);
    const Panel<T> left = gauss_kronrod_21<T>(f, worst.a, mid);
    const Panel<T> right = gauss_kronrod_21<T>(f, mid, worst.b);
    evals += 42;

    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;

    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse<T>);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse<T>);

    if (++since_resum == 64) {
      resum(heap, frozen, total, total_err);
      since_resum = 0;
    }
  }

  resum(heap, frozen, total, total_err);
  QuadResult<T> out;
  out.value = total;
  out.err_est = total_err;
  out.n_evals = evals;
  out.converged = total_err <= tol.target(magnitude(total));
  return out;
}

struct Divergent {};

template <class T, class F>
QuadResult<T> semi_infinite(const F& f, double lo, const Tolerance& tol) {
  if (!std::isfinite(lo)) throw std::invalid_argument("semi-infinite integral needs a finite lower limit");
  tol.validate();

  auto mapped = [&f, lo](double u) -> T {
    const double w = 1.0 - u;
    const double s = lo + u / w;
    const T fs = f(s);
    if (!finite(fs)) throw IntegrandError(s);
    if (fs == T{}) return T{};
    const T out = fs / (w * w);
    if (!finite(out)) throw Divergent{};
    return out;
  };
  QuadResult<T> res;
  try {
    res = adaptive<T>(mapped, 0.0, 1.0, tol);
  } catch (const Divergent&) {
    // f is finite but the pulled-back integrand overflows near u = 1
    return {T(kInfinity), kInfinity, 0, false};
  }

  // |f(s)| * s must eventually shrink for the tail to be integrable.
  std::array<double, 3> probe{};
  bool probe_ok = true;
  for (int k = 0; k < 3; ++k) {
    const double offset = std::pow(10.0, 4.0 * (k + 1));
    const T fs = f(lo + offset);
    if (!finite(fs)) {
      probe_ok = false;
      break;
    }
    probe[k] = magnitude(fs) * offset;
  }
  res.n_evals += 3;
  const bool non_decaying = !probe_ok || (probe[2] > 0.0 && probe[2] >= probe[1] && probe[1] >= probe[0]);
  if (non_decaying) res.converged = false;
  return res;
}

double repeated_average(std::vector<double> sums) {
  while (sums.size() > 1) {
    for (std::size_t i = 0; i + 1 < sums.size(); ++i) sums[i] = 0.5 * (sums[i] + sums[i + 1]);
    sums.pop_back();
  }
  return sums.front();
}

constexpr std::size_t kAccelDepth = 12;
constexpr std::size_t kAccelMinPanels = 2 * kAccelDepth;

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo)) throw std::invalid_argument("Interval: lower limit must be finite");
  if (std::isnan(hi) || hi == -kInfinity) throw std::invalid_argument("Interval: bad upper limit");
  if (!(lo < hi)) throw std::invalid_argument("Interval: need lo < hi");
}

void Tolerance::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("Tolerance: abs_tol must be > 0");
  if (!(rel_tol >= 0.0)) throw std::invalid_argument("Tolerance: rel_tol must be >= 0");
  if (max_evals < 15) throw std::invalid_argument("Tolerance: max_evals must be >= 15");
}

double Tolerance::target(double magnitude) const { return std::max(abs_tol, rel_tol * magnitude); }

IntegrandError::IntegrandError(double abscissa)
    : std::runtime_error("integrand is not finite at x = " + std::to_string(abscissa)),
      abscissa_(abscissa) {}

ParametricPath ParametricPath::reversed() const {
  ParametricPath out = *this;
  out.orientation = -orientation;
  return out;
}

ParametricPath ParametricPath::arc(Complex center, double radius, double theta0, double theta1) {
  const double sweep = theta1 - theta0;
  ParametricPath p;
  p.point = [=](double tau) { return center + std::polar(radius, theta0 + sweep * tau); };
  p.tangent = [=](double tau) { return Complex(0.0, sweep) * std::polar(radius, theta0 + sweep * tau); };
  p.t0 = 0.0;
  p.t1 = 1.0;
  return p;
}

ParametricPath ParametricPath::circle(Complex center, double radius) {
  return arc(center, radius, -std::numbers::pi, std::numbers::pi);
}

ParametricPath ParametricPath::segment(Complex from, Complex to) {
  ParametricPath p;
  p.point = [=](double tau) { return from + (to - from) * tau; };
  p.tangent = [=](double) { return to - from; };
  p.t0 = 0.0;
  p.t1 = 1.0;
  return p;
}

QuadResult<double> integrate_adaptive(const RealFn& f, const Interval& iv, const Tolerance& tol) {
  tol.validate();
  if (!iv.finite()) throw std::invalid_argument("integrate_adaptive: interval must be finite");
  return adaptive<double>(f, iv.lo, iv.hi, tol);
}

QuadResult<Complex> integrate_adaptive_complex(const std::function<Complex(double)>& f,
                                               const Interval& iv, const Tolerance& tol) {
  tol.validate();
  if (!iv.finite()) throw std::invalid_argument("integrate_adaptive_complex: interval must be finite");
  return adaptive<Complex>(f, iv.lo, iv.hi, tol);
}

QuadResult<double> integrate_semi_infinite(const RealFn& f, double lo, const Tolerance& tol) {
  return semi_infinite<double>(f, lo, tol);
}

QuadResult<Complex> integrate_semi_infinite_complex(const std::function<Complex(double)>& f,
                                                    double lo, const Tolerance& tol) {
  return semi_infinite<Complex>(f, lo, tol);
}

QuadResult<Complex> integrate_complex_path(const ComplexFn& f, const ParametricPath& path,
                                           const Tolerance& tol) {
  tol.validate();
  if (!path.point || !path.tangent) throw std::invalid_argument("integrate_complex_path: empty path");
  auto pulled_back = [&](double tau) -> Complex { return f(path.point(tau)) * path.tangent(tau); };
  QuadResult<Complex> res = adaptive<Complex>(pulled_back, path.t0, path.t1, tol);
  if (path.orientation < 0) res.value = -res.value;
  return res;
}

QuadResult<double> integrate_oscillatory_decaying(const RealFn& amplitude, double frequency,
                                                  const Interval& iv, const Tolerance& tol) {
  tol.validate();
  if (!std::isfinite(frequency)) throw std::invalid_argument("oscillatory: frequency must be finite");
  const double omega = std::abs(frequency);
  if (omega == 0.0) return {0.0, 0.0, 0, true};

  const Tolerance sub{tol.abs_tol / 4.0, tol.rel_tol / 4.0, tol.max_evals};
  const QuadResult<double> base =
      iv.finite() ? integrate_adaptive(amplitude, iv, sub) : integrate_semi_infinite(amplitude, iv.lo, sub);
  std::size_t evals = base.n_evals;

  const double half_period = std::numbers::pi / omega;
  auto zero = [&](double k) { return (k + 0.5) * half_period; };
  double k = std::floor(iv.lo / half_period - 0.5) + 1.0;
  while (zero(k) <= iv.lo) k += 1.0;

  auto moment = [&](double u) { return amplitude(u) * std::cos(omega * u); };
  const double panel_abs = tol.abs_tol / 32.0;

  double left = iv.lo;
  double sum = 0.0;
  double panel_err = 0.0;
  bool panels_ok = true;
  bool osc_converged = false;
  double tail_err = 0.0;

  auto next_panel = [&](double right) {
    const std::size_t budget = tol.max_evals > evals ? tol.max_evals - evals : 0;
    const Tolerance ptol{panel_abs, 0.0, std::max<std::size_t>(budget, 21)};
    const QuadResult<double> r = integrate_adaptive(moment, Interval(left, right), ptol);
    evals += r.n_evals;
    panels_ok = panels_ok && r.converged;
    sum += r.value;
    panel_err += r.err_est;
    left = right;
  };

  if (iv.finite()) {
    while (left < iv.hi) {
      next_panel(std::min(zero(k), iv.hi));
      k += 1.0;
      if (evals >= tol.max_evals && left < iv.hi) {
        panels_ok = false;
        break;
      }
    }
    osc_converged = panels_ok;
  } else {
    std::vector<double> partial;
    double previous = 0.0;
    double previous_diff = kInfinity;
    int stable = 0;
    int growing = 0;
    while (true) {
      next_panel(zero(k));
      k += 1.0;
      partial.push_back(sum);
      if (partial.size() >= kAccelMinPanels) {
        const std::vector<double> window(partial.end() - (kAccelDepth + 1), partial.end());
        const double accelerated = repeated_average(window);
        const double diff = std::abs(accelerated - previous);
        tail_err = diff;
        if (diff <= panel_abs * 8.0) {
          if (++stable >= 3) {
            sum = accelerated;
            osc_converged = panels_ok;
            break;
          }
        } else {
          stable = 0;
        }
        growing = diff > previous_diff ? growing + 1 : 0;
        if (growing >= 10 && partial.size() > 50) break;  // acceleration diverging
        previous_diff = diff;
        previous = accelerated;
      } else if (partial.size() == kAccelMinPanels - 1) {
        previous = repeated_average(std::vector<double>(partial.end() - (kAccelDepth + 1), partial.end()));
      }
      if (evals >= tol.max_evals) break;
    }
  }

  QuadResult<double> out;
  out.value = base.value - sum;
  out.err_est = base.err_est + panel_err + tail_err;
  out.n_evals = evals;
  out.converged = base.converged && osc_converged && out.err_est <= tol.target(std::abs(out.value));
  return out;
}

}  // namespace cmverify::quadrature
