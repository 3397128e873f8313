#pragma once

// Test-only reference computations. Nothing here calls into the library's
// quadrature engine: every value is produced by uniform composite rules,
// closed forms or hand-derived derivative formulas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPi2 = kPi * kPi;

/// Composite Simpson with n (even) panels on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(a + h * static_cast<double>(i));
    if (i % 2 == 1) {
      odd += v;
    } else {
      even += v;
    }
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Simpson at n and 2n panels, one Richardson step (error O(h^6) for smooth f).
inline double simpson_richardson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double coarse = simpson(f, a, b, n);
  const double fine = simpson(f, a, b, 2 * n);
  return fine + (fine - coarse) / 15.0;
}

/// Brute-force density w(s) = int_{-inf}^0 2 (1 - cos(k(v) s)) / (v^2 + pi^2) dv,
/// k(v) = coth(-v/2).
///
///   v < -40        : k = 1 to double precision, closed form via arctan.
///   -40 < v < -1   : uniform Simpson in v, Richardson-refined.
///   q in (q1, Q)   : q = coth(-v/2), uniform Simpson in q, Richardson-refined.
///   q > Q          : mass of the weight in closed form, cosine moment by three
///                    terms of the integration-by-parts expansion.
///
/// About 10^7 integrand samples in total.
inline double density(double s, std::size_t panels = 2'000'000, double big_q = 1e5) {
  if (s == 0.0) return 0.0;
  const double far = 2.0 * (1.0 - std::cos(s)) * (0.5 - std::atan(40.0 / kPi) / kPi);

  auto in_v = [s](double v) {
    const double k = 1.0 / std::tanh(-0.5 * v);
    const double h = std::sin(0.5 * k * s);
    return 4.0 * h * h / (v * v + kPi2);
  };
  const double mid = simpson_richardson(in_v, -40.0, -1.0, panels);

  auto amplitude = [](double q) {
    const double lt = std::log((q - 1.0) / (q + 1.0));
    return 4.0 / ((q * q - 1.0) * (lt * lt + kPi2));
  };
  auto in_q = [&](double q) {
    const double h = std::sin(0.5 * s * q);
    return amplitude(q) * 2.0 * h * h;
  };
  const double q1 = 1.0 / std::tanh(0.5);
  // at least 400 panels per period of cos(s q)
  const auto per_period = static_cast<std::size_t>((big_q - q1) * s / (2.0 * kPi) * 400.0);
  const std::size_t q_panels = 2 * ((std::max(panels, per_period) + 1) / 2);
  const double near = simpson_richardson(in_q, q1, big_q, q_panels);

  // int_Q^inf amplitude dq = int_{vQ}^0 2/(v^2+pi^2) dv, vQ = ln((Q-1)/(Q+1)).
  const double v_big = std::log((big_q - 1.0) / (big_q + 1.0));
  const double mass = 2.0 / kPi * std::atan(-v_big / kPi);
  const double a0 = amplitude(big_q);
  const double a1 = -2.0 * a0 / big_q;
  const double a2 = 6.0 * a0 / (big_q * big_q);
  const double sn = std::sin(s * big_q);
  const double cs = std::cos(s * big_q);
  const double cos_moment = -a0 * sn / s - a1 * cs / (s * s) + a2 * sn / (s * s * s);

  return far + mid + near + mass - cos_moment;
}

/// d^n/dx^n arctan x for n = 1..6, from 1/(1+x^2) differentiated by hand.
inline double arctan_derivative(double x, int n) {
  const double u = 1.0 + x * x;
  const double x2 = x * x;
  switch (n) {
    case 1:
      return 1.0 / u;
    case 2:
      return -2.0 * x / (u * u);
    case 3:
      return (6.0 * x2 - 2.0) / (u * u * u);
    case 4:
      return (24.0 * x - 24.0 * x2 * x) / (u * u * u * u);
    case 5:
      return (24.0 - 240.0 * x2 + 120.0 * x2 * x2) / (u * u * u * u * u);
    case 6:
      return (-720.0 * x + 2400.0 * x2 * x - 720.0 * x2 * x2 * x) / (u * u * u * u * u * u);
    default:
      return std::nan("");
  }
}

/// Central differences of order 1..4 with one Richardson step (error O(h^4)).
inline double finite_difference(const std::function<double(double)>& f, double x, int n, double h) {
  auto stencil = [&](double step) {
    switch (n) {
      case 1:
        return (f(x + step) - f(x - step)) / (2.0 * step);
      case 2:
        return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
      case 3:
        return (f(x + 2.0 * step) - 2.0 * f(x + step) + 2.0 * f(x - step) - f(x - 2.0 * step)) /
               (2.0 * step * step * step);
      case 4:
        return (f(x + 2.0 * step) - 4.0 * f(x + step) + 6.0 * f(x) - 4.0 * f(x - step) + f(x - 2.0 * step)) /
               (step * step * step * step);
      default:
        return std::nan("");
    }
  };
  const double coarse = stencil(2.0 * h);
  const double fine = stencil(h);
  return fine + (fine - coarse) / 3.0;
}

/// Trapezoid rule on a circle: spectrally accurate contour integral of a
/// function analytic in an annulus around the circle.
inline std::complex<double> circle_trapezoid(const std::function<std::complex<double>(std::complex<double>)>& f,
                                             std::complex<double> center, double radius, std::size_t n) {
  std::complex<double> acc{};
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const std::complex<double> e = std::polar(1.0, theta);
    acc += f(center + radius * e) * std::complex<double>(0.0, radius) * e;
  }
  return acc * (2.0 * kPi / static_cast<double>(n));
}

}  // namespace oracle
