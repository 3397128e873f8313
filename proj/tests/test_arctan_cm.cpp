#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cmverify/arctan_cm.hpp"
#include "golden.hpp"

using namespace cmverify::arctan_cm;
using std::numbers::pi;

namespace {

double g(double x) { return g_closed(EvalPoint(x)); }

}  // namespace

TEST_CASE("f_closed") {
  CHECK(f_closed(EvalPoint(1.0)) == doctest::Approx(4.0 / pi).epsilon(1e-15));
  CHECK(f_closed(EvalPoint(std::sqrt(3.0))) == doctest::Approx(3.0 / pi).epsilon(1e-15));
  double prev = f_closed(EvalPoint(1.0));
  for (double x : {10.0, 1e3, 1e6, 1e12}) {
    const double v = f_closed(EvalPoint(x));
    CHECK(v < prev);
    CHECK(v > 2.0 / pi);
    prev = v;
  }
  CHECK(std::abs(prev - 2.0 / pi) < 1e-11);
}

TEST_CASE("g_closed") {
  CHECK(g(1.0) == doctest::Approx(2.0 / pi).epsilon(1e-15));
  CHECK(g(std::sqrt(3.0)) == doctest::Approx(3.0 / (4.0 * pi)).epsilon(1e-14));
  CHECK(std::abs(g(10.0) - 1.0 / (101.0 * 1.4711276743037347)) < 1e-15);
  CHECK(std::abs(g(10.0) - 0.006730) < 5e-7);
  double prev = g(0.01);
  for (double x = 0.02; x < 50.0; x *= 1.3) {
    CHECK(g(x) < prev);
    prev = g(x);
  }
}

TEST_CASE("evaluation points must be positive and finite") {
  CHECK_THROWS_AS(EvalPoint(0.0), std::domain_error);
  CHECK_THROWS_AS(EvalPoint(-1.0), std::domain_error);
  CHECK_THROWS_AS(EvalPoint(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(EvalPoint(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(density_w(-1.0), std::domain_error);
  CHECK_THROWS_AS(OscKernelParams(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(OscKernelParams(1.0, -1.0), std::domain_error);
}

TEST_CASE("density at the origin and its slope") {
  const auto zero = density_w(0.0);
  CHECK(zero.w == 0.0);
  CHECK(zero.err == 0.0);

  const auto small = density_w(1e-3);
  CHECK(small.w / 1e-3 == doctest::Approx(2.0 / pi).epsilon(0.01));

  double prev_dev = INFINITY;
  for (double s : {1e-2, 1e-3, 1e-4}) {
    const double dev = std::abs(density_w(s).w / s - 2.0 / pi);
    CHECK(dev < prev_dev);
    prev_dev = dev;
  }
}

TEST_CASE("density matches the frozen brute-force values") {
  const auto w1 = density_w(1.0);
  CHECK(std::abs(w1.w - golden::kDensityAt1) <= 1e-8);
  CHECK(std::abs(w1.w - golden::kDensityAt1) <= w1.err + 1e-11);
  const auto wm3 = density_w(1e-3);
  CHECK(std::abs(wm3.w - golden::kDensityAtMilli) <= 1e-10);
  const auto w5 = density_w(5.0);
  CHECK(std::abs(w5.w - golden::kDensityAt5) <= 1e-8);
}

TEST_CASE("density is nonnegative, bounded and converges to 1") {
  for (double s = 0.0; s <= 100.0; s += 0.37) {
    const auto d = density_w(s);
    CAPTURE(s);
    CHECK(d.w >= 0.0);
    CHECK(d.w <= kDensityCap);
    CHECK(d.err >= 0.0);
  }
  // w keeps oscillating about 1 with an envelope that only shrinks like 1/ln s
  auto window = [](double base) {
    double dev = 0.0;
    double mean = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double w = density_w(base * (1.0 + 0.005 * i)).w;
      dev = std::max(dev, std::abs(w - 1.0));
      mean += w / 101.0;
    }
    return std::make_pair(dev, mean);
  };
  const auto [dev_lo, mean_lo] = window(200.0);
  const auto [dev_hi, mean_hi] = window(2000.0);
  CHECK(dev_hi < dev_lo);
  CHECK(std::abs(mean_lo - 1.0) < 0.01);
  CHECK(std::abs(mean_hi - 1.0) < 0.01);
}

TEST_CASE("density amplitude") {
  CHECK_THROWS_AS(density_amplitude(1.0), std::domain_error);
  const double q = 3.0;
  const double lt = std::log(0.5);
  CHECK(density_amplitude(q) == doctest::Approx(4.0 / (8.0 * (lt * lt + pi * pi))).epsilon(1e-14));
}

TEST_CASE("Laplace reconstruction of g") {
  CHECK(std::abs(g_via_representation(EvalPoint(1.0)) - 2.0 / pi) <= 1e-8);
  CHECK(std::abs(g_via_representation(EvalPoint(10.0)) - g(10.0)) <= 1e-8);
  CHECK(std::abs(g_via_representation(EvalPoint(0.1)) - g(0.1)) <= 1e-8 * g(0.1));
  const auto detail = representation_detail(EvalPoint(2.0));
  CHECK(detail.converged);
  CHECK(std::abs(detail.value - g(2.0)) <= 10.0 * detail.err_est);
  CHECK(laplace_cutoff(10.0) == 50.0);
  CHECK(laplace_cutoff(0.1) == doctest::Approx(400.0));
}

TEST_CASE("g2 form") {
  CHECK(std::abs(g_via_g2(EvalPoint(1.0)) - 2.0 / pi) <= 1e-9);
  CHECK(std::abs(g_via_g2(EvalPoint(std::sqrt(3.0))) - 3.0 / (4.0 * pi)) <= 1e-9);
  CHECK(std::abs(g_via_g2(EvalPoint(100.0)) - g(100.0)) <= 1e-9 * g(100.0));
  // the t-form integrand agrees with the closed form of the v-substituted one
  CHECK(g2_integrand(1.0, 0.5, std::log(0.5)) ==
        doctest::Approx(2.25 / (0.5 * (0.25 + 2.25) * (std::log(0.5) * std::log(0.5) + pi * pi))));
}

TEST_CASE("three routes agree") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double closed = g(x);
    const double g2 = g_via_g2(EvalPoint(x));
    const double rep = g_via_representation(EvalPoint(x));
    CAPTURE(x);
    CHECK(std::abs(g2 - closed) <= 1e-7 * closed);
    CHECK(std::abs(rep - closed) <= 1e-7 * closed);
    CHECK(std::abs(rep - g2) <= 1e-7 * closed);
  }
}

TEST_CASE("total mass: x g(x) tends to 1 from below as x decreases") {
  double prev = 0.0;
  for (double x : {0.1, 0.03, 0.01}) {
    const double m = x * g_via_representation(EvalPoint(x));
    CAPTURE(x);
    CHECK(m > prev);
    CHECK(m < 1.0);
    CHECK(std::abs(m - x * g(x)) <= 1e-7);
    prev = m;
  }
  CHECK(prev > 0.9999);
}

TEST_CASE("vanishing imaginary-part integral") {
  CHECK(std::abs(imag_vanishing_integral(EvalPoint(1.0))) <= 1e-10);
  CHECK(std::abs(imag_vanishing_integral(EvalPoint(0.5))) <= 1e-10);
  for (int i = 0; i < 20; ++i) {
    const double x = 0.05 * std::pow(1000.0, i / 19.0);
    CAPTURE(x);
    CHECK(std::abs(imag_vanishing_integral(EvalPoint(x))) <= 1e-9);
  }
}

TEST_CASE("imaginary-part integrand is odd under t -> 1/t") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> lx(-3.0, 3.0);
  std::uniform_real_distribution<double> lt(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(lx(rng));
    const double v = lt(rng);
    const double t = std::exp(v);
    const double direct = imag_kernel_integrand(x, t, v);
    const double mirrored = imag_kernel_integrand(x, 1.0 / t, -v) / (t * t);
    CHECK(std::abs(direct + mirrored) <= 1e-13 * (std::abs(direct) + std::abs(mirrored)) + 1e-300);
  }
}

TEST_CASE("t -> 1/t symmetry of the g2 integrand") {
  const auto [h1, h2] = symmetry_check(EvalPoint(1.0));
  CHECK(std::abs(h1 - h2) <= 1e-10);
  CHECK(std::abs(2.0 * h1 - g(1.0)) <= 1e-9);
  for (double x : {2.0, 10.0}) {
    const auto [a, b] = symmetry_check(EvalPoint(x));
    CHECK(std::abs(a - b) <= 1e-10);
  }
}

TEST_CASE("normalization") {
  CHECK(std::abs(normalization_identity() - 1.0) <= 1e-10);
  const auto [lower, upper] = normalization_halves();
  CHECK(std::abs(lower - 0.5) <= 1e-10);
  CHECK(std::abs(upper - 0.5) <= 1e-10);
}

TEST_CASE("Laplace kernel identity") {
  auto [l1, r1] = laplace_kernel_identity(OscKernelParams(1.0, 1.0), 1.0);
  CHECK(l1 == 0.5);
  CHECK(std::abs(r1 - 0.5) <= 1e-10);
  auto [l2, r2] = laplace_kernel_identity(OscKernelParams(2.0, 3.0), 1.0);
  CHECK(l2 == doctest::Approx(1.0 / 13.0).epsilon(1e-15));
  CHECK(std::abs(r2 - 1.0 / 13.0) <= 1e-10);
  auto [l3, r3] = laplace_kernel_identity(OscKernelParams(0.5, 1.5), 1.0);
  CHECK(l3 == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(std::abs(r3 - 0.4) <= 1e-10);

  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (double b : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      for (double x : {0.5, 1.0, 2.0}) {
        const auto [lhs, rhs] = laplace_kernel_identity(OscKernelParams(a, b), x);
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(x);
        CHECK(std::abs(lhs - rhs) <= 1e-9);
      }
    }
  }
}
