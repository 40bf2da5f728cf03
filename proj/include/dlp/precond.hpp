#pragma once

#include "dlp/fmmtree.hpp"
#include "dlp/linalg.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dlp {

enum class PrecondKind { Identity, Banded, BlockDiag, Ulist, Vlist, FmmSchur, Multigrid };

/// Scaled-matvec accumulator owned by one solve.
struct CostMeter {
  double scaled_matvecs = 0.0;
  long long applications = 0;
};

/// Approximate inverse of A = I + D with a fixed cost per application in units of
/// one product with D. Near-field kinds also expose the part D_near of D that they
/// invert, which the split smoother uses.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;

  virtual PrecondKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual double cost() const = 0;
  virtual int size() const = 0;
  /// y ~ A^{-1} v, without cost accounting.
  virtual Vector solve(const Vector& v) const = 0;
  /// D_near v. Zero for Picard.
  virtual Vector near_apply(const Vector& v) const { return Vector::Zero(v.size()); }
  /// Warnings raised while building (e.g. clamped ranks).
  const std::vector<std::string>& notes() const { return notes_; }

 protected:
  std::vector<std::string> notes_;
};

using PreconditionerPtr = std::shared_ptr<const Preconditioner>;

/// Uniform entry point: applies `pre` and charges its cost to `meter` when given.
Vector apply(const Preconditioner& pre, const Vector& v, CostMeter* meter = nullptr);

/// One smoothing sweep. Picard: f - D eta. Near-field kinds: P (f - (D eta - D_near eta)).
Vector split_smoother_step(const Preconditioner& pre, const DenseOperator& op, const Vector& f, const Vector& eta);

/// Picard: the identity, cost 0.
PreconditionerPtr build_identity(int n);

/// (I + D_band)^{-1} with D_band the cyclic band |j - k| <= s (mod N).
PreconditionerPtr build_banded(const DenseOperator& op, int s);

/// Inverse of I + D restricted to same-leaf interactions, by per-leaf dense LU.
PreconditionerPtr build_blockdiag(const DenseOperator& op, const QuadTree& tree);

struct FactorChoice {
  SparseFactorization::Kind kind = SparseFactorization::Kind::ExactLU;
  double drop_tol = 1e-3;

  static FactorChoice exact() { return {}; }
  static FactorChoice ilu(double tol = 1e-3) { return {SparseFactorization::Kind::ILU, tol}; }
};

/// P_0 ~ (I + D_0)^{-1} from a sparse factorization of the U-list matrix.
PreconditionerPtr build_ulist(const DenseOperator& op, const QuadTree& tree, FactorChoice fact = {});

/// P_level ~ (I + D_0 + D_1 [+ D_2])^{-1}. Far-field classes up to `level` are
/// compressed with `moments` multipole terms per box; moments = 0 takes them
/// exactly from the matrix (the exact variant). The matrix is assembled densely
/// and factorized by dense LU.
PreconditionerPtr build_vlist(const DenseOperator& op, const QuadTree& tree, int level, int moments = 4);

/// Which far field the outer low-rank layer approximates.
enum class ZMode {
  Remainder,   // D - D_0 - D_1
  FarField,    // D - D_0
  Complement,  // D - D_0 - L_1 M_1^T, everything the inner layer leaves out
};

struct FmmSchurOptions {
  int rank_d1 = 5;
  int rank_schur = 5;
  int rank_z = -1;  // -1: ceil(5 log2(N / s))
  /// Take D_1 from its multipole factor instead of the exact class-1 blocks.
  bool compressed_d1 = false;
  int moments = 4;
  ZMode z_mode = ZMode::Remainder;
};

/// ceil(5 log2(n / s)), at least 1.
int default_rank_z(int n, int s);

/// P_{S,1}: near-field inverse P_0 corrected by SMW for a rank-5 D_1 and a
/// low-rank remainder Z = D - D_0 - D_1.
PreconditionerPtr build_fmmschur(const DenseOperator& op, const QuadTree& tree, PreconditionerPtr p0,
                                 const FmmSchurOptions& options = {});

std::string to_string(PrecondKind kind);

}  // namespace dlp
