#include "dlp/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace dlp {

namespace {

// Dense SVD is used up to this size; beyond it the Lanczos variant runs on the matrix.
constexpr int kDenseSvdLimit = 1024;

LowRankFactor dense_truncated_svd(const Matrix& a, int p) {
  LowRankFactor f;
  if (p == 0) {
    f.left = Matrix::Zero(a.rows(), 0);
    f.right = Matrix::Zero(0, a.cols());
    return f;
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  f.left = svd.matrixU().leftCols(p) * svd.singularValues().head(p).asDiagonal();
  f.right = svd.matrixV().leftCols(p).transpose();
  return f;
}

void orthogonalize(Vector& w, const Matrix& basis, int count) {
  // Two classical Gram-Schmidt passes are enough for full reorthogonalization.
  for (int pass = 0; pass < 2; ++pass) {
    if (count == 0) return;
    const Vector c = basis.leftCols(count).transpose() * w;
    w.noalias() -= basis.leftCols(count) * c;
  }
}

}  // namespace

LowRankFactor truncated_svd(const Matrix& a, int p) {
  if (p < 0) throw ConfigError("truncated_svd: negative rank");
  p = std::min<int>(p, static_cast<int>(std::min(a.rows(), a.cols())));
  if (std::min(a.rows(), a.cols()) <= kDenseSvdLimit || p == 0) return dense_truncated_svd(a, p);
  return truncated_svd([&](const Vector& v) -> Vector { return a * v; },
                       [&](const Vector& v) -> Vector { return a.transpose() * v; }, static_cast<int>(a.rows()),
                       static_cast<int>(a.cols()), p);
}

LowRankFactor truncated_svd(const LinearMap& apply, const LinearMap& apply_transpose, int rows, int cols, int p,
                            double tol) {
  if (p < 0) throw ConfigError("truncated_svd: negative rank");
  const int kmax = std::min(rows, cols);
  p = std::min(p, kmax);
  LowRankFactor f;
  f.left = Matrix::Zero(rows, 0);
  f.right = Matrix::Zero(0, cols);
  if (p == 0) return f;

  Matrix U(rows, std::min(kmax, 2 * p + 40));
  Matrix V(cols, U.cols());
  std::vector<double> alpha, beta;

  // Deterministic start vector with content in every coordinate.
  Vector v(cols);
  for (int i = 0; i < cols; ++i) v[i] = 1.0 + 0.5 * std::sin(1.7 * i + 0.3);
  v.normalize();

  int k = 0;
  double sigma_scale = 0.0;
  while (true) {
    if (k == V.cols()) {
      const int grow = std::min<int>(kmax, static_cast<int>(V.cols()) + p + 40);
      U.conservativeResize(Eigen::NoChange, grow);
      V.conservativeResize(Eigen::NoChange, grow);
    }
    V.col(k) = v;
    Vector u = apply(v);
    if (k > 0) u -= beta.back() * U.col(k - 1);
    orthogonalize(u, U, k);
    const double a_k = u.norm();
    alpha.push_back(a_k);
    sigma_scale = std::max(sigma_scale, a_k);
    const bool breakdown_u = a_k <= 1e-14 * std::max(sigma_scale, 1e-300);
    U.col(k) = breakdown_u ? Vector::Zero(rows) : Vector(u / a_k);
    ++k;

    Vector w = breakdown_u ? Vector::Zero(cols) : Vector(apply_transpose(U.col(k - 1)) - a_k * V.col(k - 1));
    orthogonalize(w, V, k);
    const double b_k = w.norm();
    const bool exhausted = breakdown_u || b_k <= 1e-14 * std::max(sigma_scale, 1e-300) || k == kmax;

    if (k >= p || exhausted) {
      Matrix B = Matrix::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        B(i, i) = alpha[i];
        if (i + 1 < k) B(i, i + 1) = beta[i];
      }
      Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Vector& s = svd.singularValues();
      bool converged = exhausted;
      if (!converged && k >= p + 2) {
        converged = true;
        for (int i = 0; i < p; ++i)
          if (std::abs(b_k * svd.matrixU()(k - 1, i)) > tol * s[0]) converged = false;
      }
      if (converged) {
        const int r = std::min(p, k);
        f.left = U.leftCols(k) * svd.matrixU().leftCols(r) * s.head(r).asDiagonal();
        f.right = (V.leftCols(k) * svd.matrixV().leftCols(r)).transpose();
        if (r < p) {
          // The operator has exact rank r < p; pad with zero columns.
          f.left.conservativeResize(Eigen::NoChange, p);
          f.right.conservativeResize(p, Eigen::NoChange);
          f.left.rightCols(p - r).setZero();
          f.right.bottomRows(p - r).setZero();
        }
        return f;
      }
    }
    beta.push_back(b_k);
    v = w / b_k;
  }
}

Vector singular_values(const Matrix& a) { return Eigen::BDCSVD<Matrix>(a).singularValues(); }

// ---------------------------------------------------------------------------

struct SparseFactorization::Exact {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  long long nnz = 0;
};

struct SparseFactorization::Incomplete {
  SparseMatrix lower;  // strictly lower part, unit diagonal implied
  SparseMatrix upper;  // includes the diagonal
};

SparseFactorization SparseFactorization::exact(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw ConfigError("sparse LU: matrix not square");
  auto ex = std::make_shared<Exact>();
  Eigen::SparseMatrix<double> col = a;
  col.makeCompressed();
  ex->lu.analyzePattern(col);
  ex->lu.factorize(col);
  if (ex->lu.info() != Eigen::Success) throw NumericalError("sparse LU failed: " + ex->lu.lastErrorMessage());
  ex->nnz = ex->lu.nnzL() + ex->lu.nnzU();
  SparseFactorization f;
  f.kind_ = Kind::ExactLU;
  f.n_ = static_cast<int>(a.rows());
  f.exact_ = std::move(ex);
  return f;
}

SparseFactorization SparseFactorization::ilu(const SparseMatrix& a, double drop_tol) {
  if (a.rows() != a.cols()) throw ConfigError("ILU: matrix not square");
  if (drop_tol < 0.0) throw ConfigError("ILU: negative drop tolerance");
  const int n = static_cast<int>(a.rows());
  auto inc = std::make_shared<Incomplete>();

  // Rows of U are kept as (col, value) lists for the elimination.
  std::vector<std::vector<std::pair<int, double>>> urows(n);
  std::vector<Triplet> ltrip;
  Vector work = Vector::Zero(n);
  std::vector<char> present(n, 0);
  std::vector<int> pattern;

  for (int i = 0; i < n; ++i) {
    pattern.clear();
    std::set<int> lower;
    double rownorm = 0.0;
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      const int j = static_cast<int>(it.col());
      work[j] = it.value();
      present[j] = 1;
      pattern.push_back(j);
      if (j < i) lower.insert(j);
      rownorm += it.value() * it.value();
    }
    const double tau = drop_tol * std::sqrt(rownorm);

    while (!lower.empty()) {
      const int k = *lower.begin();
      lower.erase(lower.begin());
      const auto& uk = urows[k];
      const double pivot = uk.front().second;
      const double lik = work[k] / pivot;
      if (std::abs(lik) < tau) {
        work[k] = 0.0;
        continue;
      }
      work[k] = lik;
      for (std::size_t q = 1; q < uk.size(); ++q) {
        const int j = uk[q].first;
        if (!present[j]) {
          present[j] = 1;
          work[j] = 0.0;
          pattern.push_back(j);
          if (j < i) lower.insert(j);
        }
        work[j] -= lik * uk[q].second;
      }
    }

    std::sort(pattern.begin(), pattern.end());
    auto& ui = urows[i];
    double diag = 0.0;
    bool has_diag = false;
    for (int j : pattern) {
      const double x = work[j];
      if (j < i) {
        if (x != 0.0 && std::abs(x) >= tau) ltrip.emplace_back(i, j, x);
      } else if (j == i) {
        diag = x;
        has_diag = true;
      } else if (x != 0.0 && std::abs(x) >= tau) {
        ui.emplace_back(j, x);
      }
      work[j] = 0.0;
      present[j] = 0;
    }
    if (!has_diag || diag == 0.0) {
      std::ostringstream msg;
      msg << "ILU: zero pivot in row " << i << " (structurally or numerically singular)";
      throw NumericalError(msg.str());
    }
    ui.insert(ui.begin(), {i, diag});
  }

  std::vector<Triplet> utrip;
  for (int i = 0; i < n; ++i)
    for (const auto& [j, x] : urows[i]) utrip.emplace_back(i, j, x);
  inc->lower.resize(n, n);
  inc->lower.setFromTriplets(ltrip.begin(), ltrip.end());
  inc->upper.resize(n, n);
  inc->upper.setFromTriplets(utrip.begin(), utrip.end());

  SparseFactorization f;
  f.kind_ = Kind::ILU;
  f.drop_tol_ = drop_tol;
  f.n_ = n;
  f.ilu_ = std::move(inc);
  return f;
}

Vector SparseFactorization::solve(const Vector& b) const {
  if (b.size() != n_) throw ConfigError("sparse solve: size mismatch");
  if (exact_) return exact_->lu.solve(b);
  Vector y = ilu_->lower.triangularView<Eigen::UnitLower>().solve(b);
  return ilu_->upper.triangularView<Eigen::Upper>().solve(y);
}

long long SparseFactorization::fill() const {
  if (exact_) return exact_->nnz;
  return ilu_->lower.nonZeros() + ilu_->upper.nonZeros();
}

// ---------------------------------------------------------------------------

SmwSolver::SmwSolver(LinearMap b_solve, const Matrix& u, const Matrix& v) : b_solve_(std::move(b_solve)), v_(v) {
  if (u.cols() != v.rows() || u.rows() != v.cols()) throw ConfigError("SMW: factor shapes do not match");
  const int p = static_cast<int>(u.cols());
  binv_u_.resize(u.rows(), p);
  for (int j = 0; j < p; ++j) binv_u_.col(j) = b_solve_(u.col(j));
  if (p == 0) return;
  const Matrix s = Matrix::Identity(p, p) + v_ * binv_u_;
  s_lu_.compute(s);
  rcond_ = s_lu_.rcond();
  if (!(rcond_ >= 1e-14)) {
    std::ostringstream msg;
    msg << "SMW: capacitance matrix is singular (rcond estimate " << rcond_ << ")";
    throw NumericalError(msg.str());
  }
}

Vector SmwSolver::solve(const Vector& b) const {
  Vector y = b_solve_(b);
  if (v_.rows() == 0) return y;
  y.noalias() -= binv_u_ * s_lu_.solve(v_ * y);
  return y;
}

Vector smw_apply(const LinearMap& b_solve, const Matrix& u, const Matrix& v, const Vector& b) {
  return SmwSolver(b_solve, u, v).solve(b);
}

}  // namespace dlp
