#include "dlp/nystrom.hpp"

#include <cmath>
#include <random>

namespace dlp {

double kernel(Point x, Point y, Point ny) {
  const double rx = y.x - x.x;
  const double ry = y.y - x.y;
  return (ny.x * rx + ny.y * ry) / (rx * rx + ry * ry) / kTwoPi;
}

double diagonal_limit(double kappa) { return kappa / (2.0 * kTwoPi); }

DenseOperator assemble(const BoundaryGrid& grid) {
  return assemble(std::make_shared<const BoundaryGrid>(grid));
}

DenseOperator assemble(std::shared_ptr<const BoundaryGrid> grid) {
  const BoundaryGrid& g = *grid;
  const int n = g.size();
  DenseOperator op;
  op.matrix.resize(n, n);
  // column-major fill: source k outer
  for (int k = 0; k < n; ++k) {
    const Point src = g.point(k);
    const Point nrm{g.nx[k], g.ny[k]};
    const double w2 = 2.0 * g.weight(k);
    double* col = op.matrix.col(k).data();
    for (int j = 0; j < n; ++j) {
      col[j] = j == k ? w2 * diagonal_limit(g.kappa[k]) : w2 * kernel(g.point(j), src, nrm);
    }
  }
  op.grid = std::move(grid);
  return op;
}

double resolution_metric(const DenseOperator& op) {
  const int n = op.size();
  const Vector rows = op.matrix.rowwise().sum();
  const Vector err = 0.5 * rows - Vector::Constant(n, 0.5);
  return std::sqrt(kTwoPi / n) * err.norm();
}

Vector eval_interior(const BoundaryGrid& grid, const Vector& density, const std::vector<Point>& targets) {
  if (density.size() != grid.size()) throw ConfigError("eval_interior: density length mismatch");
  Vector u = Vector::Zero(static_cast<Eigen::Index>(targets.size()));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    double sum = 0.0;
    for (int k = 0; k < grid.size(); ++k) {
      sum += kernel(targets[t], grid.point(k), {grid.nx[k], grid.ny[k]}) * density[k] * grid.weight(k);
    }
    u[static_cast<Eigen::Index>(t)] = sum;
  }
  return u;
}

Point reference_source_point() { return {3.0, 3.0}; }

double harmonic_value(HarmonicKind kind, Point p) {
  switch (kind) {
    case HarmonicKind::PointSource: {
      const Point s = reference_source_point();
      return std::log(std::hypot(p.x - s.x, p.y - s.y));
    }
    case HarmonicKind::Quadratic:
      return p.x * p.x - p.y * p.y + 0.5 * p.x;
  }
  return 0.0;
}

BoundaryData boundary_data_harmonic(const BoundaryGrid& grid, HarmonicKind kind) {
  BoundaryData data;
  data.values.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) data.values[j] = 2.0 * harmonic_value(kind, grid.point(j));
  data.source = kind == HarmonicKind::PointSource ? "harmonic:log|x-(3,3)|" : "harmonic:x^2-y^2+x/2";
  return data;
}

BoundaryData boundary_data_random(const BoundaryGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  BoundaryData data;
  data.values.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) data.values[j] = normal(rng);
  data.source = "random:seed=" + std::to_string(seed);
  return data;
}

}  // namespace dlp
