#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cmverify/arctan_cm.hpp"
#include "cmverify/contour.hpp"

using namespace cmverify::contour;
using std::numbers::pi;

namespace {

constexpr ComplexValue kI{0.0, 1.0};

double g(double x) { return cmverify::arctan_cm::g_closed(cmverify::arctan_cm::EvalPoint(x)); }

ContourSpec keyhole(double R, double r) {
  ContourSpec s;
  s.R = R;
  s.r = r;
  return s;
}

}  // namespace

TEST_CASE("z0 lies on the unit circle at angle 2 arctan x") {
  CHECK(std::abs(z0(1.0) - kI) < 1e-16);
  for (double x : {0.1, 0.5, 2.0, 30.0}) {
    const ComplexValue expected = (kI - x) / (kI + x);
    CHECK(std::abs(z0(x) - expected) < 1e-15);
    CHECK(std::abs(std::abs(z0(x)) - 1.0) < 1e-15);
    CHECK(std::arg(z0(x)) == doctest::Approx(2.0 * std::atan(x)).epsilon(1e-14));
  }
}

TEST_CASE("G_eval values") {
  CHECK(std::abs(G_eval({-1.0, 1e-6}, 1.0)) <= 1e-5);

  const double e = std::exp(1.0);
  const ComplexValue at_e = G_eval(e, 1.0);
  CHECK(std::abs(at_e - (e + 1.0) / (e * (e - kI))) < 1e-15);
  CHECK(at_e.real() == doctest::Approx(0.44323).epsilon(1e-4));
  CHECK(at_e.imag() == doctest::Approx(0.16306).epsilon(1e-4));

  const ComplexValue at_2 = G_eval(2.0, 1.0);
  CHECK(std::abs(at_2 - 3.0 * (2.0 + kI) / (10.0 * std::log(2.0))) < 1e-15);
  CHECK(at_2.real() == doctest::Approx(0.8656).epsilon(1e-4));
  CHECK(at_2.imag() == doctest::Approx(0.4328).epsilon(1e-4));
}

TEST_CASE("G_eval rejects poles and the cut") {
  auto pole = [](ComplexValue z, double x) {
    try {
      G_eval(z, x);
    } catch (const PoleError& e) {
      return e.which();
    }
    return std::string("none");
  };
  CHECK(pole(0.0, 1.0) == "0");
  CHECK(pole(1.0, 1.0) == "1");
  CHECK(pole(z0(0.7), 0.7) == "z0");
  CHECK_THROWS_AS(G_eval(-2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(G_eval(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(G_plus(1.0, 1.0), std::domain_error);
}

TEST_CASE("closed-form residues") {
  const ComplexValue r1 = residue_z0(1.0);
  CHECK(std::abs(r1 - (-2.0 * (1.0 + kI) / pi)) < 1e-15);
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(residue_z0(s3) - (-(s3 + kI) * 3.0 / (4.0 * pi))) < 1e-15);
  CHECK(residue_z0(s3).real() == doctest::Approx(-0.4134966).epsilon(1e-7));
  CHECK(residue_z0(s3).imag() == doctest::Approx(-0.2387324).epsilon(1e-7));

  CHECK(residue_one(1.0) == ComplexValue(1.0, 1.0));
  CHECK(residue_one(2.0) == ComplexValue(1.0, 0.5));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double x = std::exp(u(rng));
    CHECK(-residue_z0(x).real() / x == doctest::Approx(g(x)).epsilon(1e-14));
    CHECK(-residue_z0(x).imag() == doctest::Approx(g(x)).epsilon(1e-14));
  }
}

TEST_CASE("residues match small-circle integrals") {
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(numeric_residue(z0(x), 0.01, x).value - residue_z0(x)) <= 1e-6);
    CHECK(std::abs(numeric_residue(1.0, 0.01, x).value - residue_one(x)) <= 1e-6);
  }
}

TEST_CASE("residue theorem closes on the keyhole") {
  for (double x : {0.5, 1.0, 2.0}) {
    for (double R : {10.0, 100.0}) {
      for (double r : {0.1, 0.01}) {
        const auto rep = keyhole_integral(x, keyhole(R, r));
        CAPTURE(x);
        CAPTURE(R);
        CAPTURE(r);
        CHECK(rep.closure_defect <= 1e-6 * (1.0 + std::abs(rep.loop_integral)));
        CHECK(rep.err_est < 1e-6);
        CHECK(std::abs(rep.loop_integral - (rep.outer_arc + rep.inner_arc + rep.segments)) < 1e-15 * (1.0 + std::abs(rep.loop_integral)));
      }
    }
  }
  CHECK(keyhole_integral(1.0, keyhole(10.0, 0.1)).closure_defect <= 1e-6);
  CHECK(keyhole_integral(0.5, keyhole(20.0, 0.05)).closure_defect <= 1e-6);
}

TEST_CASE("dropping the cut jump breaks closure by exactly the jump") {
  const auto spec = keyhole(10.0, 0.1);
  const auto broken = keyhole_integral(1.0, spec, kContourTolerance, CutTreatment::upper_both);
  const double jump = std::abs(cut_jump_integral(1.0, spec.R, spec.r));
  CHECK(broken.closure_defect > 0.1);
  CHECK(std::abs(broken.closure_defect - jump) <= 1e-6);
}

TEST_CASE("contour geometry validation") {
  CHECK_THROWS_AS(keyhole(1.0, 0.1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(keyhole(10.0, 1.0).validate(), std::invalid_argument);
  ContourSpec wide = keyhole(10.0, 0.1);
  wide.delta = 0.5;
  CHECK_THROWS_AS(wide.validate(), std::invalid_argument);
  CHECK_THROWS_AS(keyhole_integral(1.0, keyhole(1.0005, 0.1)), GeometryError);
  CHECK_THROWS_AS(keyhole_integral(1.0, keyhole(10.0, 0.9995)), GeometryError);
  CHECK_THROWS_AS(keyhole_integral(5000.0, keyhole(10.0, 0.1)), GeometryError);
}

TEST_CASE("cut jump integral") {
  const auto straight = keyhole_integral(1.0, keyhole(1e3, 1e-3)).segments;
  CHECK(cut_jump_integral(1.0, 1e3, 1e-3) == straight);

  const ComplexValue big_i = cut_jump_integral(1.0, INFINITY, 0.0);
  CHECK(std::abs(1.0 - (big_i / (2.0 * pi * kI * (1.0 + kI))).real() - 2.0 / pi) <= 1e-6);

  // limit of the finite keyhole pieces
  CHECK(std::abs(cut_jump_integral(1.0, 1e8, 1e-8) - big_i) < std::abs(cut_jump_integral(1.0, 1e3, 1e-3) - big_i));
}

TEST_CASE("jump density in v matches the boundary values") {
  for (double x : {0.5, 3.0}) {
    for (double v : {-5.0, -0.3, 0.7, 4.0}) {
      const double t = -std::exp(v);
      // dt = -e^v dv along t = -e^v, and the segment integrand is G+ - G-
      const ComplexValue direct = (G_plus(t, x) - G_minus(t, x)) * std::exp(v);
      CHECK(std::abs(direct - cut_jump_density(v, x)) < 1e-14 * (1.0 + std::abs(direct)));
    }
    // large v uses the rescaled form and stays finite
    CHECK(std::isfinite(std::abs(cut_jump_density(800.0, x))));
    CHECK(std::abs(cut_jump_density(800.0, x) - ComplexValue(0.0, 2.0 * pi / (800.0 * 800.0 + pi * pi))) < 1e-12);
  }
}

TEST_CASE("g reconstructed from the cut integral") {
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const auto gc = g_via_cut(x);
    CAPTURE(x);
    CHECK(std::abs(gc.real() - g(x)) <= 1e-6 * g(x));
    CHECK(std::abs(gc.imag()) <= 1e-9);
  }
}

TEST_CASE("arc magnitudes and their printed bounds") {
  const double bound_R = 2.0 * pi * 1001.0 / ((std::log(1000.0) - 2.0 * pi) * 999.0);
  const auto b3 = arc_bound_check(1.0, 1e3, 1e-3);
  REQUIRE(b3.outer_bound.has_value());
  CHECK(*b3.outer_bound == doctest::Approx(bound_R).epsilon(1e-14));
  CHECK(*b3.outer_bound == doctest::Approx(10.08).epsilon(1e-3));
  CHECK(b3.outer_magnitude <= *b3.outer_bound);

  const auto b4 = arc_bound_check(1.0, 1e4, 1e-4);
  REQUIRE(b4.inner_bound.has_value());
  CHECK(*b4.inner_bound == doctest::Approx(2.14695).epsilon(1e-5));
  CHECK(b4.inner_magnitude <= *b4.inner_bound);

  const auto b5 = arc_bound_check(1.0, 1e5, 1e-5);
  CHECK(b5.outer_magnitude < b4.outer_magnitude);
  CHECK(b4.outer_magnitude < b3.outer_magnitude);
  CHECK(b5.inner_magnitude < b4.inner_magnitude);
  CHECK(b4.inner_magnitude < b3.inner_magnitude);

  const auto small = arc_bound_check(1.0, 100.0, 0.01);
  CHECK_FALSE(small.outer_bound.has_value());
  CHECK_FALSE(small.inner_bound.has_value());
  CHECK(small.outer_magnitude > 0.0);
}

TEST_CASE("boundary values agree with G just off the cut") {
  for (double x : {0.5, 1.0, 2.0}) {
    for (double t : {-0.3, -2.0, -7.0}) {
      double prev_plus = INFINITY;
      for (double delta : {1e-3, 1e-4}) {
        const double m = -t;
        const double d_plus = std::abs(G_plus(t, x) - G_eval(std::polar(m, pi - delta), x));
        const double d_minus = std::abs(G_minus(t, x) - G_eval(std::polar(m, -pi + delta), x));
        CHECK(d_plus <= 10.0 * delta);
        CHECK(d_minus <= 10.0 * delta);
        CHECK(d_plus < prev_plus);
        prev_plus = d_plus;
      }
    }
  }
}
