#include "dlp/geometry.hpp"

#include "dlp/transfer.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace dlp {

namespace {

// r(theta) and its first two derivatives.
struct Radius {
  double r, dr, ddr;
};

Radius radius(const CurveSpec& spec, double t) {
  switch (spec.kind) {
    case CurveKind::Simple: {
      const double c = std::cos(t), s = std::sin(t);
      const double q = c * c + 9.0 * s * s;
      const double dq = 16.0 * s * c;
      const double ddq = 16.0 * std::cos(2.0 * t);
      const double sq = std::sqrt(q);
      return {0.5 * sq + 0.07 * std::cos(12.0 * t),
              0.25 * dq / sq - 0.84 * std::sin(12.0 * t),
              0.25 * ddq / sq - 0.125 * dq * dq / (q * sq) - 10.08 * std::cos(12.0 * t)};
    }
    case CurveKind::Moderate:
      return {1.0 + 0.5 * std::cos(3.0 * t) + 0.05 * std::cos(30.0 * t),
              -1.5 * std::sin(3.0 * t) - 1.5 * std::sin(30.0 * t),
              -4.5 * std::cos(3.0 * t) - 45.0 * std::cos(30.0 * t)};
    case CurveKind::Flower: {
      const double k = spec.lobes;
      return {1.0 + 0.98 * std::cos(k * t), -0.98 * k * std::sin(k * t),
              -0.98 * k * k * std::cos(k * t)};
    }
    case CurveKind::Ellipse:
      break;
  }
  return {1.0, 0.0, 0.0};
}

double stretch(const CurveSpec& spec) {
  switch (spec.kind) {
    case CurveKind::Simple:
      return 0.85;
    case CurveKind::Ellipse:
      return spec.aspect;
    default:
      return 1.0;
  }
}

void fill_frame(BoundaryGrid& g, const Vector& dx, const Vector& dy, const Vector& ddx,
                const Vector& ddy) {
  const int n = g.size();
  g.nx.resize(n);
  g.ny.resize(n);
  g.kappa.resize(n);
  g.jacobian.resize(n);
  for (int j = 0; j < n; ++j) {
    const double speed = std::hypot(dx[j], dy[j]);
    g.jacobian[j] = speed;
    g.nx[j] = dy[j] / speed;
    g.ny[j] = -dx[j] / speed;
    g.kappa[j] = (dx[j] * ddy[j] - dy[j] * ddx[j]) / (speed * speed * speed);
  }
}

Vector equispaced(int n) {
  Vector t(n);
  for (int j = 0; j < n; ++j) t[j] = kTwoPi * j / n;
  return t;
}

}  // namespace

void CurveSpec::validate() const {
  if (kind == CurveKind::Ellipse && !(aspect >= 1.0))
    throw ConfigError("ellipse aspect ratio must be >= 1");
  if (kind == CurveKind::Flower && lobes < 2) throw ConfigError("flower needs at least 2 lobes");
}

std::string CurveSpec::name() const {
  switch (kind) {
    case CurveKind::Ellipse: {
      std::ostringstream os;
      os << "ellipse-" << aspect;
      return os.str();
    }
    case CurveKind::Simple:
      return "simple";
    case CurveKind::Moderate:
      return "moderate";
    case CurveKind::Flower:
      return "flower-" + std::to_string(lobes);
  }
  return "unknown";
}

CurveKind parse_curve_kind(const std::string& s) {
  if (s == "ellipse") return CurveKind::Ellipse;
  if (s == "simple") return CurveKind::Simple;
  if (s == "moderate") return CurveKind::Moderate;
  if (s == "flower") return CurveKind::Flower;
  throw ConfigError("unknown geometry '" + s + "'");
}

BoundaryGrid build_grid(const CurveSpec& spec, int n) {
  spec.validate();
  if (n < 8 || !is_power_of_two(n)) throw ConfigError("build_grid: n must be a power of 2, >= 8");

  BoundaryGrid g;
  g.spec = spec;
  g.theta = equispaced(n);
  g.x.resize(n);
  g.y.resize(n);
  Vector dx(n), dy(n), ddx(n), ddy(n);
  const double c = stretch(spec);
  for (int j = 0; j < n; ++j) {
    const double t = g.theta[j];
    const double ct = std::cos(t), st = std::sin(t);
    const Radius r = radius(spec, t);
    g.x[j] = c * r.r * ct;
    g.y[j] = r.r * st;
    dx[j] = c * (r.dr * ct - r.r * st);
    dy[j] = r.dr * st + r.r * ct;
    ddx[j] = c * (r.ddr * ct - 2.0 * r.dr * st - r.r * ct);
    ddy[j] = r.ddr * st + 2.0 * r.dr * ct - r.r * st;
  }
  fill_frame(g, dx, dy, ddx, ddy);
  return g;
}

BoundaryGrid coarsen_geometry(const BoundaryGrid& grid, int m) {
  const int n = grid.size();
  if (m < 8 || m > n || n % m != 0 || !is_power_of_two(n / m))
    throw ConfigError("coarsen_geometry: m must divide n with n/m a power of 2, m >= 8");
  if (m == n) return grid;

  BoundaryGrid g;
  g.spec = grid.spec;
  g.theta = equispaced(m);
  g.x = transfer::restrict_to(grid.x, m);
  g.y = transfer::restrict_to(grid.y, m);
  fill_frame(g, transfer::spectral_derivative(g.x, 1), transfer::spectral_derivative(g.y, 1),
             transfer::spectral_derivative(g.x, 2), transfer::spectral_derivative(g.y, 2));
  return g;
}

double total_turning(const BoundaryGrid& grid) {
  double sum = 0.0;
  for (int j = 0; j < grid.size(); ++j) sum += grid.kappa[j] * grid.weight(j);
  return sum;
}

double signed_area(const BoundaryGrid& grid) {
  // tangent recovered from the normal: x' = -ny |x'|, y' = nx |x'|
  double sum = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const double dxdt = -grid.ny[j] * grid.jacobian[j];
    const double dydt = grid.nx[j] * grid.jacobian[j];
    sum += grid.x[j] * dydt - grid.y[j] * dxdt;
  }
  return 0.5 * sum * kTwoPi / grid.size();
}

void write_geometry_csv(std::ostream& os, const BoundaryGrid& g) {
  os << "j,theta,x,y,nx,ny,kappa,jac\n";
  os << std::setprecision(17);
  for (int j = 0; j < g.size(); ++j) {
    os << j << ',' << g.theta[j] << ',' << g.x[j] << ',' << g.y[j] << ',' << g.nx[j] << ','
       << g.ny[j] << ',' << g.kappa[j] << ',' << g.jacobian[j] << '\n';
  }
}

}  // namespace dlp
