#pragma once

#include "dlp/linalg.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/precond.hpp"
#include "dlp/types.hpp"

#include <iosfwd>
#include <vector>

namespace dlp {

struct GmresOptions {
  double tol = 1e-12;
  int max_iter = 2000;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // relative residual after 0, 1, ..., m steps
  double scaled_matvecs = 0.0;           // m (1 + preconditioner cost)
  bool converged = false;
  Vector solution;
  double true_relres = 0.0;  // ||f - A x|| / ||f|| recomputed at the end, not charged
};

/// Unrestarted right-preconditioned GMRES for A x = f from x = 0. Preconditioned
/// directions z_j = P v_j are kept, so P is applied once per iteration. Arnoldi
/// uses modified Gram-Schmidt with a second pass when the norm drops by more than 0.7.
SolveReport gmres(const LinearMap& apply_a, const Vector& f, const GmresOptions& options = {},
                  const Preconditioner* pre = nullptr);

/// GMRES on (I + D) eta = f.
SolveReport gmres(const DenseOperator& op, const Vector& f, const GmresOptions& options = {},
                  const Preconditioner* pre = nullptr);

/// CSV `iter,relres`.
void write_residuals_csv(std::ostream& os, const SolveReport& report);

}  // namespace dlp
