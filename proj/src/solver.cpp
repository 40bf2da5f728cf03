#include "dlp/solver.hpp"

#include <cmath>
#include <ostream>

namespace dlp {

SolveReport gmres(const LinearMap& apply_a, const Vector& f, const GmresOptions& options, const Preconditioner* pre) {
  if (options.tol <= 0.0) throw ConfigError("gmres: tolerance must be positive");
  if (options.max_iter < 1) throw ConfigError("gmres: max_iter must be positive");
  const int n = static_cast<int>(f.size());
  SolveReport rep;
  rep.solution = Vector::Zero(n);
  const double beta = f.norm();
  if (beta == 0.0) throw ConfigError("gmres: zero right-hand side");
  rep.residual_history.push_back(1.0);

  const int kmax = std::min(options.max_iter, n);
  Matrix V(n, std::min(kmax + 1, 64));
  Matrix Z(n, std::min(kmax, 64));
  Matrix H = Matrix::Zero(kmax + 1, kmax);
  Vector cs = Vector::Zero(kmax), sn = Vector::Zero(kmax);
  Vector g = Vector::Zero(kmax + 1);
  g[0] = beta;
  V.col(0) = f / beta;

  CostMeter meter;
  int m = 0;
  for (int j = 0; j < kmax; ++j) {
    if (j + 1 >= V.cols()) V.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(kmax + 1, 2 * V.cols()));
    if (j >= Z.cols()) Z.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(kmax, 2 * Z.cols()));

    Z.col(j) = pre ? apply(*pre, V.col(j), &meter) : Vector(V.col(j));
    Vector w = apply_a(Z.col(j));
    const double before = w.norm();
    for (int i = 0; i <= j; ++i) {
      const double h = V.col(i).dot(w);
      H(i, j) = h;
      w.noalias() -= h * V.col(i);
    }
    if (w.norm() < 0.7 * before) {
      for (int i = 0; i <= j; ++i) {
        const double h = V.col(i).dot(w);
        H(i, j) += h;
        w.noalias() -= h * V.col(i);
      }
    }
    const double hnext = w.norm();
    H(j + 1, j) = hnext;

    for (int i = 0; i < j; ++i) {
      const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
      H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
      H(i, j) = t;
    }
    const double r = std::hypot(H(j, j), H(j + 1, j));
    if (r == 0.0) break;
    cs[j] = H(j, j) / r;
    sn[j] = H(j + 1, j) / r;
    H(j, j) = r;
    H(j + 1, j) = 0.0;
    g[j + 1] = -sn[j] * g[j];
    g[j] = cs[j] * g[j];

    m = j + 1;
    const double rel = std::abs(g[j + 1]) / beta;
    rep.residual_history.push_back(rel);
    if (rel <= options.tol) {
      rep.converged = true;
      break;
    }
    if (hnext <= 1e-14 * before) {
      // Invariant subspace reached; the least-squares residual above is the true one.
      rep.converged = rel <= options.tol;
      break;
    }
    V.col(j + 1) = w / hnext;
  }

  rep.iterations = m;
  if (m > 0) {
    const Vector y = H.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(g.head(m));
    rep.solution = Z.leftCols(m) * y;
  }
  rep.scaled_matvecs = m + meter.scaled_matvecs;
  rep.true_relres = (f - apply_a(rep.solution)).norm() / beta;
  return rep;
}

SolveReport gmres(const DenseOperator& op, const Vector& f, const GmresOptions& options, const Preconditioner* pre) {
  if (f.size() != op.size()) throw ConfigError("gmres: right-hand side length mismatch");
  return gmres([&](const Vector& v) -> Vector { return v + op.matrix * v; }, f, options, pre);
}

void write_residuals_csv(std::ostream& os, const SolveReport& report) {
  os << "iter,relres\n";
  os.precision(17);
  for (std::size_t i = 0; i < report.residual_history.size(); ++i) os << i << ',' << report.residual_history[i] << '\n';
}

}  // namespace dlp
