#pragma once

#include "dlp/types.hpp"

#include <functional>
#include <memory>

namespace dlp {

using LinearMap = std::function<Vector(const Vector&)>;

/// A ~ left * right with left n x p and right p x m.
struct LowRankFactor {
  Matrix left;
  Matrix right;

  int rank() const { return static_cast<int>(left.cols()); }
  Vector apply(const Vector& v) const { return left * (right * v); }
  Matrix dense() const { return left * right; }
};

/// Best rank-p approximation: left = U_p Sigma_p, right = V_p^T. p is clamped to min(n, m).
LowRankFactor truncated_svd(const Matrix& a, int p);

/// Rank-p truncated SVD of an operator given only through products with A and A^T.
/// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization, run until
/// the leading p triplets have residual below tol * sigma_1.
LowRankFactor truncated_svd(const LinearMap& apply, const LinearMap& apply_transpose, int rows, int cols, int p,
                            double tol = 1e-10);

/// Singular values of the leading block, reported by the last truncation (for diagnostics).
Vector singular_values(const Matrix& a);

/// Sparse LU factorization, exact or thresholded.
class SparseFactorization {
 public:
  enum class Kind { ExactLU, ILU };

  /// Exact sparse LU with fill-reducing ordering.
  static SparseFactorization exact(const SparseMatrix& a);
  /// Threshold ILU: during elimination of row i, entries below drop_tol * ||a_i||_2 are
  /// discarded. No fill cap. drop_tol = 0 gives an unpivoted exact LU.
  static SparseFactorization ilu(const SparseMatrix& a, double drop_tol);

  Vector solve(const Vector& b) const;
  Kind kind() const { return kind_; }
  double drop_tolerance() const { return drop_tol_; }
  int size() const { return n_; }
  /// Stored nonzeros of the factors.
  long long fill() const;

 private:
  struct Exact;
  struct Incomplete;
  Kind kind_ = Kind::ExactLU;
  double drop_tol_ = 0.0;
  int n_ = 0;
  std::shared_ptr<const Exact> exact_;
  std::shared_ptr<const Incomplete> ilu_;
};

/// Applies (B + U V)^{-1} given a solver for B. B^{-1} U and the LU of the
/// capacitance matrix S = I + V B^{-1} U are formed once at construction;
/// each solve then costs one B-solve plus O(n p) work.
class SmwSolver {
 public:
  SmwSolver() = default;
  SmwSolver(LinearMap b_solve, const Matrix& u, const Matrix& v);

  Vector solve(const Vector& b) const;
  int rank() const { return static_cast<int>(v_.rows()); }
  double capacitance_rcond() const { return rcond_; }

 private:
  LinearMap b_solve_;
  Matrix binv_u_;
  Matrix v_;
  Eigen::PartialPivLU<Matrix> s_lu_;
  double rcond_ = 1.0;
};

/// One-shot (B + U V)^{-1} b.
Vector smw_apply(const LinearMap& b_solve, const Matrix& u, const Matrix& v, const Vector& b);

}  // namespace dlp
