#include "dlp/precond.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dlp {

namespace {

SparseMatrix identity_plus(const SparseMatrix& d) {
  SparseMatrix a(d.rows(), d.cols());
  a.setIdentity();
  a += d;
  a.makeCompressed();
  return a;
}

class IdentityPre final : public Preconditioner {
 public:
  explicit IdentityPre(int n) : n_(n) {}
  PrecondKind kind() const override { return PrecondKind::Identity; }
  std::string name() const override { return "Picard"; }
  double cost() const override { return 0.0; }
  int size() const override { return n_; }
  Vector solve(const Vector& v) const override { return v; }

 private:
  int n_;
};

// Near field held as a sparse matrix and inverted through a sparse factorization of I + D_near.
class SparseNearPre final : public Preconditioner {
 public:
  SparseNearPre(PrecondKind kind, std::string name, SparseMatrix near, SparseFactorization fact)
      : kind_(kind), name_(std::move(name)), near_(std::move(near)), fact_(std::move(fact)) {}
  PrecondKind kind() const override { return kind_; }
  std::string name() const override { return name_; }
  double cost() const override { return 1.0; }
  int size() const override { return static_cast<int>(near_.rows()); }
  Vector solve(const Vector& v) const override { return fact_.solve(v); }
  Vector near_apply(const Vector& v) const override { return near_ * v; }
  const SparseMatrix& near() const { return near_; }

 private:
  PrecondKind kind_;
  std::string name_;
  SparseMatrix near_;
  SparseFactorization fact_;
};

class BlockDiagPre final : public Preconditioner {
 public:
  BlockDiagPre(SparseMatrix near, std::vector<std::vector<int>> blocks, std::vector<Eigen::PartialPivLU<Matrix>> lus)
      : near_(std::move(near)), blocks_(std::move(blocks)), lus_(std::move(lus)) {}
  PrecondKind kind() const override { return PrecondKind::BlockDiag; }
  std::string name() const override { return "P_D"; }
  double cost() const override { return 1.0; }
  int size() const override { return static_cast<int>(near_.rows()); }
  Vector solve(const Vector& v) const override {
    Vector out(v.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& idx = blocks_[b];
      Vector rhs(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) rhs[i] = v[idx[i]];
      const Vector x = lus_[b].solve(rhs);
      for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = x[i];
    }
    return out;
  }
  Vector near_apply(const Vector& v) const override { return near_ * v; }

 private:
  SparseMatrix near_;
  std::vector<std::vector<int>> blocks_;
  std::vector<Eigen::PartialPivLU<Matrix>> lus_;
};

class DenseNearPre final : public Preconditioner {
 public:
  DenseNearPre(std::string name, Matrix a) : name_(std::move(name)), a_(std::move(a)), lu_(a_) {}
  PrecondKind kind() const override { return PrecondKind::Vlist; }
  std::string name() const override { return name_; }
  double cost() const override { return 1.0; }
  int size() const override { return static_cast<int>(a_.rows()); }
  Vector solve(const Vector& v) const override { return lu_.solve(v); }
  Vector near_apply(const Vector& v) const override { return a_ * v - v; }
  void note(std::string s) { notes_.push_back(std::move(s)); }

 private:
  std::string name_;
  Matrix a_;
  Eigen::PartialPivLU<Matrix> lu_;
};

class FmmSchurPre final : public Preconditioner {
 public:
  PrecondKind kind() const override { return PrecondKind::FmmSchur; }
  std::string name() const override { return "P_S1"; }
  double cost() const override { return 2.0; }
  int size() const override { return static_cast<int>(d0.rows()); }
  Vector solve(const Vector& v) const override { return outer.solve(v); }
  Vector near_apply(const Vector& v) const override { return d0 * v + d1 * v; }

  // P_{S,1} b = P_0 b - (P_0 L_1) S~^{-1} M_1^T P_0 b.
  Vector inner(const Vector& b) const {
    const Vector y = p0->solve(b);
    Vector t = m1t * y;
    if (vq.rows() > 0) t.noalias() -= uq * cap_lu.solve(vq * t);
    return y - p0l1 * t;
  }

  void note(std::string s) { notes_.push_back(std::move(s)); }

  PreconditionerPtr p0;
  SparseMatrix d0, d1;
  Matrix p0l1;  // N x r
  Matrix m1t;   // r x N
  Matrix uq, vq;
  Eigen::PartialPivLU<Matrix> cap_lu;
  SmwSolver outer;
};

// Rank-p factor of an n x n operator known through products. Small operators are
// expanded column by column and truncated from a full SVD.
LowRankFactor low_rank(const LinearMap& a, const LinearMap& at, int n, int p) {
  if (n <= 1024) {
    Matrix dense(n, n);
    for (int j = 0; j < n; ++j) dense.col(j) = a(Vector::Unit(n, j));
    return truncated_svd(dense, p);
  }
  return truncated_svd(a, at, n, n, p);
}

}  // namespace

std::string to_string(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::Identity: return "identity";
    case PrecondKind::Banded: return "banded";
    case PrecondKind::BlockDiag: return "blockdiag";
    case PrecondKind::Ulist: return "ulist";
    case PrecondKind::Vlist: return "vlist";
    case PrecondKind::FmmSchur: return "fmmschur";
    case PrecondKind::Multigrid: return "multigrid";
  }
  return "unknown";
}

Vector apply(const Preconditioner& pre, const Vector& v, CostMeter* meter) {
  if (v.size() != pre.size()) throw ConfigError("preconditioner: size mismatch");
  if (meter) {
    meter->scaled_matvecs += pre.cost();
    ++meter->applications;
  }
  return pre.solve(v);
}

Vector split_smoother_step(const Preconditioner& pre, const DenseOperator& op, const Vector& f, const Vector& eta) {
  if (pre.kind() == PrecondKind::Identity) return f - op.apply(eta);
  const Vector far = op.apply(eta) - pre.near_apply(eta);
  return pre.solve(f - far);
}

PreconditionerPtr build_identity(int n) { return std::make_shared<IdentityPre>(n); }

PreconditionerPtr build_banded(const DenseOperator& op, int s) {
  if (s < 0) throw ConfigError("banded: negative half-width");
  const int n = op.size();
  std::vector<Triplet> trip;
  if (2 * s + 1 >= n) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) trip.emplace_back(j, k, op.matrix(j, k));
  } else {
    for (int j = 0; j < n; ++j)
      for (int d = -s; d <= s; ++d) {
        const int k = ((j + d) % n + n) % n;
        trip.emplace_back(j, k, op.matrix(j, k));
      }
  }
  SparseMatrix band(n, n);
  band.setFromTriplets(trip.begin(), trip.end());
  auto fact = SparseFactorization::exact(identity_plus(band));
  return std::make_shared<SparseNearPre>(PrecondKind::Banded, "P_B(" + std::to_string(s) + ")", std::move(band),
                                         std::move(fact));
}

PreconditionerPtr build_blockdiag(const DenseOperator& op, const QuadTree& tree) {
  if (tree.num_points() != op.size()) throw ConfigError("blockdiag: tree and operator sizes differ");
  std::vector<std::vector<int>> blocks;
  std::vector<Eigen::PartialPivLU<Matrix>> lus;
  for (int b : tree.leaves()) {
    const auto& idx = tree.boxes[b].points;
    const int m = static_cast<int>(idx.size());
    Matrix a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = (i == j ? 1.0 : 0.0) + op.matrix(idx[i], idx[j]);
    blocks.push_back(idx);
    lus.emplace_back(a);
  }
  return std::make_shared<BlockDiagPre>(leaf_block_matrix(tree, op), std::move(blocks), std::move(lus));
}

PreconditionerPtr build_ulist(const DenseOperator& op, const QuadTree& tree, FactorChoice fact) {
  SparseMatrix d0 = near_matrix(tree, op);
  const SparseMatrix a0 = identity_plus(d0);
  if (fact.kind == SparseFactorization::Kind::ExactLU)
    return std::make_shared<SparseNearPre>(PrecondKind::Ulist, "P_0", std::move(d0), SparseFactorization::exact(a0));
  return std::make_shared<SparseNearPre>(PrecondKind::Ulist, "P_0-ILU", std::move(d0),
                                         SparseFactorization::ilu(a0, fact.drop_tol));
}

PreconditionerPtr build_vlist(const DenseOperator& op, const QuadTree& tree, int level, int moments) {
  if (level < 1 || level > 2) throw ConfigError("vlist: level must be 1 or 2");
  if (moments < 0) throw ConfigError("vlist: negative moment count");
  const int n = op.size();
  Matrix a = Matrix::Identity(n, n);
  a += Matrix(near_matrix(tree, op));
  std::vector<std::string> notes;
  const bool exact = moments == 0 || op.projected || !op.grid;
  if (moments > 0 && exact)
    notes.push_back("operator has no matching geometry; far-field blocks taken exactly from the matrix");
  for (int c = 1; c <= level; ++c) {
    if (exact) {
      a += Matrix(class_matrix(tree, op, c));
    } else {
      compress_level(tree, *op.grid, c, moments).add_to(tree, a);
    }
  }
  std::string name = "P_" + std::to_string(level) + (moments == 0 ? "-Exact" : "");
  auto pre = std::make_shared<DenseNearPre>(std::move(name), std::move(a));
  for (auto& s : notes) pre->note(std::move(s));
  return pre;
}

int default_rank_z(int n, int s) {
  const double r = 5.0 * std::log2(static_cast<double>(n) / std::max(1, s));
  return std::max(1, static_cast<int>(std::ceil(r - 1e-12)));
}

PreconditionerPtr build_fmmschur(const DenseOperator& op, const QuadTree& tree, PreconditionerPtr p0,
                                 const FmmSchurOptions& options) {
  if (!p0 || p0->kind() != PrecondKind::Ulist) throw ConfigError("fmmschur: needs a U-list preconditioner");
  const int n = op.size();
  if (p0->size() != n || tree.num_points() != n) throw ConfigError("fmmschur: size mismatch");

  auto pre = std::make_shared<FmmSchurPre>();
  pre->p0 = p0;
  pre->d0 = near_matrix(tree, op);
  pre->d1 = class_matrix(tree, op, 1);

  auto clamp = [&](int r, const char* what, int limit) {
    if (r > limit) {
      std::ostringstream msg;
      msg << what << " rank " << r << " clamped to " << limit;
      pre->note(msg.str());
      return limit;
    }
    return r;
  };
  const int r1 = clamp(options.rank_d1, "D_1", n);
  const int rz = clamp(options.rank_z < 0 ? default_rank_z(n, tree.leaf_capacity) : options.rank_z, "Z", n);

  // (1) D_1 ~ L_1 M_1^T.
  LowRankFactor f1;
  if (options.compressed_d1) {
    if (!op.grid || op.projected) throw ConfigError("fmmschur: compressed D_1 needs the operator's geometry");
    const LevelFactor lf = compress_level(tree, *op.grid, 1, options.moments);
    f1 = low_rank([&](const Vector& v) -> Vector { return lf.apply(v); },
                  [&](const Vector& v) -> Vector {
                    Vector out = lf.exact.transpose() * v;
                    if (lf.left.cols() > 0) out.noalias() += lf.right * (lf.left.transpose() * v);
                    return out;
                  },
                  n, r1);
  } else {
    const SparseMatrix& d1 = pre->d1;
    f1 = low_rank([&](const Vector& v) -> Vector { return d1 * v; },
                  [&](const Vector& v) -> Vector { return d1.transpose() * v; }, n, r1);
  }
  const int r = f1.rank();
  pre->m1t = f1.right;
  pre->p0l1.resize(n, r);
  for (int j = 0; j < r; ++j) pre->p0l1.col(j) = p0->solve(f1.left.col(j));

  // (2) Capacitance M_1^T P_0 L_1 ~ U V, and S~^{-1} = I - U (I + V U)^{-1} V.
  const Matrix k = pre->m1t * pre->p0l1;
  const int q = clamp(options.rank_schur, "Schur", r);
  const LowRankFactor fs = truncated_svd(k, q);
  pre->uq = fs.left;
  pre->vq = fs.right;
  if (fs.rank() > 0) {
    pre->cap_lu.compute(Matrix::Identity(fs.rank(), fs.rank()) + pre->vq * pre->uq);
    const double rc = pre->cap_lu.rcond();
    if (!(rc >= 1e-14)) {
      std::ostringstream msg;
      msg << "fmmschur: I + VU is singular (rcond estimate " << rc << ")";
      throw NumericalError(msg.str());
    }
  }

  // (3)-(4) Remaining far field, folded in with one more SMW layer.
  const SparseMatrix near = options.z_mode == ZMode::FarField ? pre->d0 : SparseMatrix(pre->d0 + pre->d1);
  const bool add_back = options.z_mode == ZMode::Complement;
  const Matrix& l1 = f1.left;
  const LowRankFactor fz = low_rank(
      [&](const Vector& v) -> Vector {
        Vector out = op.matrix * v - near * v;
        if (add_back) out.noalias() += pre->d1 * v - l1 * (pre->m1t * v);
        return out;
      },
      [&](const Vector& v) -> Vector {
        Vector out = op.matrix.transpose() * v - near.transpose() * v;
        if (add_back) out.noalias() += pre->d1.transpose() * v - pre->m1t.transpose() * (l1.transpose() * v);
        return out;
      },
      n, rz);
  const FmmSchurPre* self = pre.get();
  pre->outer = SmwSolver([self](const Vector& b) -> Vector { return self->inner(b); }, fz.left, fz.right);
  return pre;
}

}  // namespace dlp
