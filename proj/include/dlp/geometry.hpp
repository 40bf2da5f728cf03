#pragma once

#include "dlp/types.hpp"

#include <iosfwd>
#include <string>

namespace dlp {

enum class CurveKind { Ellipse, Simple, Moderate, Flower };

/// One of the closed test curves x(theta) = (c r(theta) cos theta, r(theta) sin theta).
/// The ellipse is (aspect * cos theta, sin theta).
struct CurveSpec {
  CurveKind kind = CurveKind::Simple;
  double aspect = 1.0;  // Ellipse only
  int lobes = 4;        // Flower only

  static CurveSpec ellipse(double aspect) { return {CurveKind::Ellipse, aspect, 0}; }
  static CurveSpec simple() { return {CurveKind::Simple, 1.0, 0}; }
  static CurveSpec moderate() { return {CurveKind::Moderate, 1.0, 0}; }
  static CurveSpec flower(int lobes) { return {CurveKind::Flower, 1.0, lobes}; }

  void validate() const;
  std::string name() const;
};

/// Parse "ellipse", "simple", "moderate" or "flower".
CurveKind parse_curve_kind(const std::string& s);

/// N equispaced samples of a closed curve with its differential geometry.
/// Orientation is counterclockwise; normals point outward, n = (y', -x') / |x'|.
struct BoundaryGrid {
  CurveSpec spec;
  Vector theta;
  Vector x, y;
  Vector nx, ny;
  Vector kappa;     // signed curvature (x'y'' - y'x'') / |x'|^3
  Vector jacobian;  // |x'(theta)|

  int size() const { return static_cast<int>(x.size()); }
  Point point(int j) const { return {x[j], y[j]}; }
  /// Trapezoid weight |x'(theta_j)| * 2 pi / N.
  double weight(int j) const { return jacobian[j] * kTwoPi / size(); }
};

/// Sample `spec` at n points with analytic derivatives. n must be a power of 2, n >= 8.
BoundaryGrid build_grid(const CurveSpec& spec, int n);

/// Spectrally restrict the coordinates of `grid` to m points and recompute
/// normals, curvature and speed by spectral differentiation of the restricted samples.
BoundaryGrid coarsen_geometry(const BoundaryGrid& grid, int m);

/// Trapezoid approximation of the turning number integral of kappa ds.
double total_turning(const BoundaryGrid& grid);
/// Trapezoid approximation of (1/2) closed integral of (x dy - y dx).
double signed_area(const BoundaryGrid& grid);

/// CSV dump: header `j,theta,x,y,nx,ny,kappa,jac`.
void write_geometry_csv(std::ostream& os, const BoundaryGrid& grid);

}  // namespace dlp
