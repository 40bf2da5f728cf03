#include "dlp/multigrid.hpp"

#include "dlp/solver.hpp"
#include "dlp/transfer.hpp"

namespace dlp {

namespace {

class MultigridPre final : public Preconditioner {
 public:
  explicit MultigridPre(std::shared_ptr<const Hierarchy> h) : h_(std::move(h)), cost_(cycle_cost(*h_)) {}
  PrecondKind kind() const override { return PrecondKind::Multigrid; }
  std::string name() const override {
    const auto& o = h_->options;
    return std::string(o.shape == HierarchyShape::TwoGrid ? "two-grid " : "V-cycle ") +
           to_string(o.smoother.kind) + " " + to_string(o.mode);
  }
  double cost() const override { return cost_; }
  int size() const override { return h_->fine_size(); }
  Vector solve(const Vector& v) const override { return vcycle_apply(*h_, v); }

 private:
  std::shared_ptr<const Hierarchy> h_;
  double cost_;
};

Vector residual(const DenseOperator& op, const Vector& f, const Vector& eta) { return f - eta - op.apply(eta); }

Vector cycle(const Hierarchy& h, int level, const Vector& f) {
  if (level == h.num_levels() - 1) return h.coarse_solve(f);
  const MultigridLevel& lv = h.levels[level];
  Vector eta = Vector::Zero(f.size());
  for (int i = 0; i < h.options.pre_smooth; ++i) eta = split_smoother_step(*lv.smoother, lv.op, f, eta);
  const int m = h.levels[level + 1].op.size();
  const Vector rc = transfer::restrict_to(residual(lv.op, f, eta), m);
  eta += transfer::prolong_to(cycle(h, level + 1, rc), static_cast<int>(f.size()));
  for (int i = 0; i < h.options.post_smooth; ++i) eta = split_smoother_step(*lv.smoother, lv.op, f, eta);
  return eta;
}

}  // namespace

std::string to_string(SmootherKind kind) {
  switch (kind) {
    case SmootherKind::Picard: return "Picard";
    case SmootherKind::Banded: return "P_B";
    case SmootherKind::BlockDiag: return "P_D";
    case SmootherKind::Ulist: return "P_0";
    case SmootherKind::Vlist: return "P_l";
  }
  return "unknown";
}

std::string to_string(CoarseningMode mode) { return mode == CoarseningMode::Geometric ? "geometric" : "projection"; }

PreconditionerPtr build_smoother(const DenseOperator& op, const SmootherSpec& spec) {
  switch (spec.kind) {
    case SmootherKind::Picard: return build_identity(op.size());
    case SmootherKind::Banded: return build_banded(op, spec.band);
    default: break;
  }
  if (!op.grid) throw ConfigError("smoother: operator has no point locations for the tree");
  const QuadTree tree = build_fmm_tree(*op.grid, spec.leaf);
  switch (spec.kind) {
    case SmootherKind::BlockDiag: return build_blockdiag(op, tree);
    case SmootherKind::Ulist: return build_ulist(op, tree, spec.factor);
    case SmootherKind::Vlist: return build_vlist(op, tree, spec.vlist_level, spec.moments);
    default: break;
  }
  throw ConfigError("smoother: unknown kind");
}

Vector Hierarchy::coarse_solve(const Vector& f) const {
  const MultigridLevel& lv = levels.back();
  switch (options.coarse.kind) {
    case CoarseSolverKind::ExactLU: return coarse_lu->solve(f);
    case CoarseSolverKind::Gmres: {
      GmresOptions go;
      go.tol = options.coarse.tol;
      go.max_iter = options.coarse.m_coarse;
      return gmres(lv.op, f, go).solution;
    }
    case CoarseSolverKind::PreconditionedGmres: {
      GmresOptions go;
      go.tol = options.coarse.tol;
      return gmres(lv.op, f, go, coarse_pre.get()).solution;
    }
  }
  throw ConfigError("unknown coarse solver");
}

std::shared_ptr<const Hierarchy> build_hierarchy(const DenseOperator& fine, const MultigridOptions& options) {
  const int n = fine.size();
  if (options.n_min > n) throw ConfigError("multigrid: n_min exceeds the fine size");
  if (options.n_min < 16) throw ConfigError("multigrid: n_min must be at least 16");
  if (!is_power_of_two(options.n_min) || !is_power_of_two(n)) throw ConfigError("multigrid: sizes must be powers of 2");
  if (options.pre_smooth < 0 || options.post_smooth < 0) throw ConfigError("multigrid: negative sweep count");
  if (options.coarse.m_coarse < 1) throw ConfigError("multigrid: m_coarse must be positive");
  if (!fine.grid) throw ConfigError("multigrid: fine operator has no geometry");

  auto h = std::make_shared<Hierarchy>();
  h->options = options;

  std::vector<int> sizes{n};
  if (options.n_min < n) {
    if (options.shape == HierarchyShape::TwoGrid) {
      sizes.push_back(options.n_min);
    } else {
      for (int m = n / 2; m >= options.n_min; m /= 2) sizes.push_back(m);
    }
  }

  for (int m : sizes) {
    MultigridLevel lv;
    if (m == n) {
      lv.grid = fine.grid;
      lv.op = fine;
    } else {
      lv.grid = std::make_shared<const BoundaryGrid>(coarsen_geometry(*fine.grid, m));
      if (options.mode == CoarseningMode::Geometric) {
        lv.op = assemble(lv.grid);
      } else {
        lv.op.matrix = transfer::project_operator(fine.matrix, m);
        lv.op.grid = lv.grid;
        lv.op.projected = true;
      }
    }
    h->levels.push_back(std::move(lv));
  }
  for (int l = 0; l + 1 < h->num_levels(); ++l)
    h->levels[l].smoother = build_smoother(h->levels[l].op, options.smoother);

  const DenseOperator& coarse = h->levels.back().op;
  switch (options.coarse.kind) {
    case CoarseSolverKind::ExactLU:
      h->coarse_lu.emplace(Matrix::Identity(coarse.size(), coarse.size()) + coarse.matrix);
      break;
    case CoarseSolverKind::Gmres: break;
    case CoarseSolverKind::PreconditionedGmres: {
      const QuadTree tree = build_fmm_tree(*coarse.grid, options.coarse.leaf);
      h->coarse_pre = build_fmmschur(coarse, tree, build_ulist(coarse, tree, FactorChoice::ilu()), options.coarse.schur);
      break;
    }
  }
  return h;
}

Vector vcycle_apply(const Hierarchy& h, const Vector& f) {
  if (f.size() != h.fine_size()) throw ConfigError("vcycle: right-hand side length mismatch");
  return cycle(h, 0, f);
}

double cycle_cost(const Hierarchy& h) {
  const auto& o = h.options;
  const int sweeps = o.pre_smooth + o.post_smooth;
  if (o.mode == CoarseningMode::Geometric) return 1.5 * sweeps;
  return 1.5 * sweeps + o.coarse.m_coarse;
}

PreconditionerPtr make_multigrid_preconditioner(std::shared_ptr<const Hierarchy> h) {
  return std::make_shared<MultigridPre>(std::move(h));
}

}  // namespace dlp
