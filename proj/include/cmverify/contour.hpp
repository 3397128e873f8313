#pragma once

// Keyhole contour integration of
//
//   G(z) = (z + 1) / (z (z - z0) log z),   z0 = (i - x) / (i + x),
//
// on the principal branch of log, cut along the negative real axis.
// The keyhole consists of the outer circle |z| = R (counter-clockwise), the
// inner circle |z| = r (clockwise) and the two sides of the cut between -R
// and -r. The enclosed singularities are the simple poles z0 (on the unit
// circle, upper half plane) and 1.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include "cmverify/quadrature.hpp"

namespace cmverify::contour {

using ComplexValue = std::complex<double>;
using quadrature::Tolerance;

/// z lies on a pole of G. `which()` is "0", "1" or "z0".
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& which, ComplexValue z);
  const std::string& which() const { return which_; }

 private:
  std::string which_;
};

/// The contour runs too close to a pole to be integrated reliably.
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ContourSpec {
  double R = 10.0;
  double r = 0.1;
  /// Angular gap between the arcs and the cut.
  double delta = 1e-6;
  /// Number of equal angular pieces each arc is split into.
  int panels = 4;

  /// Throws std::invalid_argument unless R > 1, 0 < r < 1, 0 < delta < pi/8, panels >= 1.
  void validate() const;
};

struct ResidueReport {
  ComplexValue res_z0;
  ComplexValue res_1;
  ComplexValue loop_integral;
  double closure_defect = 0.0;
  double err_est = 0.0;

  ComplexValue outer_arc;
  ComplexValue inner_arc;
  ComplexValue segments;
};

/// How the two sides of the cut enter the keyhole.
enum class CutTreatment {
  jump,        // upper side with G+, lower side with G-
  upper_both,  // G+ on both sides: the jump across the cut is dropped
};

inline constexpr Tolerance kContourTolerance{1e-12, 1e-11, 400000};

ComplexValue z0(double x);

/// G on the principal branch. Throws PoleError at 0, 1 and z0, and
/// std::domain_error on the closed negative real axis (use G_plus / G_minus).
ComplexValue G_eval(ComplexValue z, double x);

/// Boundary values of G on the cut, t < 0: log z replaced by ln(-t) +/- i pi.
ComplexValue G_plus(double t, double x);
ComplexValue G_minus(double t, double x);

/// -(x + i) / ((x^2 + 1) arctan x).
ComplexValue residue_z0(double x);
/// (x + i) / x.
ComplexValue residue_one(double x);

/// (1 / 2 pi i) times the integral of G around |z - center| = radius.
quadrature::QuadResult<ComplexValue> numeric_residue(ComplexValue center, double radius, double x,
                                                     const Tolerance& tol = kContourTolerance);

/// Integrand of the cut jump in v = ln(-t):
/// -2 pi i (1 - e^v) / ((v^2 + pi^2)(e^v + z0)).
ComplexValue cut_jump_density(double v, double x);

/// Integral of G+ - G- over (-R, -r), i.e. the two straight sides of the
/// keyhole taken together. R = infinity and r = 0 give the limit value I.
quadrature::QuadResult<ComplexValue> cut_jump_detail(double x, double R, double r,
                                                     const Tolerance& tol = kContourTolerance);
ComplexValue cut_jump_integral(double x, double R, double r, const Tolerance& tol = kContourTolerance);

/// Integral of G over the arc |z| = radius from angle -pi + delta to pi - delta
/// (clockwise when `clockwise`), extrapolated to delta -> 0 from delta and
/// delta / 2. err_est includes the quadrature errors, the extrapolation
/// change and the length of the two missing slivers times |G| at their ends.
quadrature::QuadResult<ComplexValue> arc_integral(double x, double radius, bool clockwise,
                                                  const ContourSpec& spec,
                                                  const Tolerance& tol = kContourTolerance);

ResidueReport keyhole_integral(double x, const ContourSpec& spec, const Tolerance& tol = kContourTolerance,
                               CutTreatment cut = CutTreatment::jump);

struct ArcBounds {
  double outer_magnitude = 0.0;
  /// 2 pi (R + 1) / ((ln R - 2 pi)(R - 1)), only when ln R > 2 pi.
  std::optional<double> outer_bound;
  double inner_magnitude = 0.0;
  /// 2 pi (1 + r) / ((-ln r - 2 pi)(1 - r)), only when -ln r > 2 pi.
  std::optional<double> inner_bound;
};

ArcBounds arc_bound_check(double x, double R, double r);

/// g(x) = 1/x - I / (2 pi i (x + i)) with I = cut_jump_integral(x, inf, 0).
/// Returns the complex value; its imaginary part should vanish.
ComplexValue g_via_cut(double x, const Tolerance& tol = kContourTolerance);

}  // namespace cmverify::contour
