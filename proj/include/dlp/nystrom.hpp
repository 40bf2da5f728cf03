#pragma once

#include "dlp/geometry.hpp"
#include "dlp/types.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dlp {

/// Double-layer kernel K(x, y) = (1/2pi) n_y.(y - x) / |y - x|^2 for x != y.
///
/// With counterclockwise orientation and outward normals this is the sign for
/// which the unit density has layer potential 1 inside the domain and 1/2 on
/// the boundary, so the interior Dirichlet problem reads f = eta + D eta with
/// f = 2g and D = 2 * (layer operator).
double kernel(Point x, Point y, Point ny);

/// Limit of K(x0, y) as y -> x0 along the curve: kappa / (4 pi).
double diagonal_limit(double kappa);

/// N x N Nystrom matrix D_N with D_jk = 2 K(x_j, x_k) w_k, w_k = |x'(theta_k)| 2pi/N.
struct DenseOperator {
  Matrix matrix;
  /// Geometry the matrix was assembled on. Projection coarse operators carry
  /// the coarsened grid for point locations only.
  std::shared_ptr<const BoundaryGrid> grid;
  /// True when the matrix is not the Nystrom discretization of `grid`.
  bool projected = false;

  int size() const { return static_cast<int>(matrix.rows()); }
  Vector apply(const Vector& v) const { return matrix * v; }
};

DenseOperator assemble(const BoundaryGrid& grid);
DenseOperator assemble(std::shared_ptr<const BoundaryGrid> grid);

/// ||(1/2) D_N 1 - 1/2||, the error in the boundary value of the unit-density
/// layer, using the l2 norm scaled by sqrt(2pi/N).
double resolution_metric(const DenseOperator& op);

/// Evaluate u(t) = sum_k K(t, x_k) eta_k w_k at interior targets. No
/// near-singular correction: targets close to the boundary are inaccurate.
Vector eval_interior(const BoundaryGrid& grid, const Vector& density, const std::vector<Point>& targets);

struct BoundaryData {
  Vector values;       // f = 2 g
  std::string source;  // description of how the data was generated
};

/// Harmonic reference functions used for boundary data.
enum class HarmonicKind {
  PointSource,  // g = log |x - (3, 3)|
  Quadratic,    // g = x^2 - y^2 + x/2
};

Point reference_source_point();
double harmonic_value(HarmonicKind kind, Point p);

BoundaryData boundary_data_harmonic(const BoundaryGrid& grid, HarmonicKind kind = HarmonicKind::PointSource);
BoundaryData boundary_data_random(const BoundaryGrid& grid, std::uint64_t seed);

}  // namespace dlp
