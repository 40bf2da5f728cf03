#include "dlp/experiments.hpp"

#include "dlp/fmmtree.hpp"
#include "dlp/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace dlp::experiments {

namespace {

std::string fmt_int(int v) { return v < 0 ? "" : std::to_string(v); }

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void say(const RunOptions& o, const std::string& msg) {
  if (o.progress) o.progress(msg);
}

int iterations(const DenseOperator& op, const Vector& f, const Preconditioner* pre, const RunOptions& o,
               double* matvecs = nullptr) {
  GmresOptions go;
  go.tol = o.tol;
  const SolveReport r = gmres(op, f, go, pre);
  if (matvecs) *matvecs = r.scaled_matvecs;
  return r.converged ? r.iterations : -1;
}

std::shared_ptr<const BoundaryGrid> grid_of(const CurveSpec& spec, int n) {
  return std::make_shared<const BoundaryGrid>(build_grid(spec, n));
}

}  // namespace

RhsKind parse_rhs(const std::string& s) {
  if (s == "point" || s == "point-source") return RhsKind::PointSource;
  if (s == "quadratic") return RhsKind::Quadratic;
  if (s == "random") return RhsKind::Random;
  throw ConfigError("unknown right-hand side '" + s + "' (expected point, quadratic or random)");
}

std::string to_string(RhsKind kind) {
  switch (kind) {
    case RhsKind::PointSource: return "point";
    case RhsKind::Quadratic: return "quadratic";
    case RhsKind::Random: return "random";
  }
  return "unknown";
}

BoundaryData make_rhs(const BoundaryGrid& grid, RhsKind kind, std::uint64_t seed) {
  switch (kind) {
    case RhsKind::PointSource: return boundary_data_harmonic(grid, HarmonicKind::PointSource);
    case RhsKind::Quadratic: return boundary_data_harmonic(grid, HarmonicKind::Quadratic);
    case RhsKind::Random: return boundary_data_random(grid, seed);
  }
  throw ConfigError("unknown right-hand side");
}

void Table::write_csv(std::ostream& os) const {
  for (const auto& m : meta) os << "# " << m << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

// ---------------------------------------------------------------------------

void SolveConfig::validate() const {
  curve.validate();
  if (n < 8 || !is_power_of_two(n)) throw ConfigError("--n must be a power of 2 and at least 8");
  if (leaf < 1) throw ConfigError("--leaf must be positive");
  if (moments < 0) throw ConfigError("--moments must be non-negative");
  if (band < 0) throw ConfigError("band half-width must be non-negative");
  if (tol <= 0.0 || tol >= 1.0) throw ConfigError("--tol must lie in (0, 1)");
  if (max_iter < 1) throw ConfigError("max iterations must be positive");
  static const std::vector<std::string> known{"none",   "banded",       "blockdiag", "ulist",        "ulist-ilu",
                                              "vlist1", "vlist1-exact", "vlist2",    "fmmschur",     "fmmschur-ilu",
                                              "multigrid"};
  if (std::find(known.begin(), known.end(), precond) == known.end())
    throw ConfigError("unknown preconditioner '" + precond + "'");
  if (precond == "multigrid") {
    if (n_min < 16 || n_min > n || !is_power_of_two(n_min))
      throw ConfigError("--nmin must be a power of 2 between 16 and N");
    if (pre_smooth < 0 || post_smooth < 0) throw ConfigError("--cycle sweep counts must be non-negative");
    if (m_coarse < 1) throw ConfigError("--mcoarse must be positive");
  }
}

PreconditionerPtr make_preconditioner(const SolveConfig& c, const DenseOperator& op) {
  if (c.precond == "none") return nullptr;
  if (c.precond == "banded") return build_banded(op, c.band);
  if (c.precond == "multigrid") {
    MultigridOptions mo;
    mo.n_min = c.n_min;
    mo.mode = c.coarsening;
    mo.shape = c.shape;
    mo.pre_smooth = c.pre_smooth;
    mo.post_smooth = c.post_smooth;
    mo.smoother.kind = c.smoother;
    mo.smoother.band = c.band;
    mo.smoother.leaf = c.leaf;
    mo.smoother.moments = c.moments;
    mo.coarse.kind = c.coarse_solver;
    mo.coarse.m_coarse = c.m_coarse;
    if (c.coarsening == CoarseningMode::Projection && c.coarse_solver == CoarseSolverKind::ExactLU)
      mo.coarse.kind = CoarseSolverKind::Gmres;
    return make_multigrid_preconditioner(build_hierarchy(op, mo));
  }
  const QuadTree tree = build_fmm_tree(*op.grid, c.leaf);
  if (c.precond == "blockdiag") return build_blockdiag(op, tree);
  if (c.precond == "ulist") return build_ulist(op, tree);
  if (c.precond == "ulist-ilu") return build_ulist(op, tree, FactorChoice::ilu(c.ilu_drop));
  if (c.precond == "vlist1") return build_vlist(op, tree, 1, c.moments);
  if (c.precond == "vlist1-exact") return build_vlist(op, tree, 1, 0);
  if (c.precond == "vlist2") return build_vlist(op, tree, 2, c.moments);
  FmmSchurOptions so;
  so.moments = std::max(1, c.moments);
  if (c.precond == "fmmschur") return build_fmmschur(op, tree, build_ulist(op, tree), so);
  if (c.precond == "fmmschur-ilu")
    return build_fmmschur(op, tree, build_ulist(op, tree, FactorChoice::ilu(c.ilu_drop)), so);
  throw ConfigError("unknown preconditioner '" + c.precond + "'");
}

SolveOutcome run_solve(const SolveConfig& c) {
  c.validate();
  const auto grid = grid_of(c.curve, c.n);
  const DenseOperator op = assemble(grid);
  const BoundaryData f = make_rhs(*grid, c.rhs, c.seed);
  const PreconditionerPtr pre = make_preconditioner(c, op);
  SolveOutcome out;
  GmresOptions go;
  go.tol = c.tol;
  go.max_iter = c.max_iter;
  out.report = gmres(op, f.values, go, pre.get());
  out.precond_name = pre ? pre->name() : "none";
  out.precond_cost = pre ? pre->cost() : 0.0;
  out.resolution = resolution_metric(op);
  return out;
}

void write_report_csv(std::ostream& os, const SolveConfig& c, const SolveOutcome& out) {
  os << "geometry,n,leaf,precond,precond_cost,rhs,seed,tol,iterations,scaled_matvecs,converged,final_relres,"
        "true_relres,resolution_metric\n";
  const auto& r = out.report;
  os << c.curve.name() << ',' << c.n << ',' << c.leaf << ',' << out.precond_name << ',' << fmt_num(out.precond_cost)
     << ',' << to_string(c.rhs) << ',' << c.seed << ',' << fmt_num(c.tol) << ',' << r.iterations << ','
     << fmt_num(r.scaled_matvecs) << ',' << (r.converged ? 1 : 0) << ',' << fmt_num(r.residual_history.back()) << ','
     << fmt_num(r.true_relres) << ',' << fmt_num(out.resolution) << '\n';
}

// ---------------------------------------------------------------------------

int aspect_ratio_n(double aspect) {
  const double target = std::max(256.0, 32.0 * aspect);
  int n = 8;
  while (n < target) n *= 2;
  return n;
}

std::vector<AspectRow> aspect_ratio(const RunOptions& o, const std::vector<double>& aspects) {
  std::vector<AspectRow> rows;
  for (double a : aspects) {
    const int n = aspect_ratio_n(a);
    const auto grid = grid_of(CurveSpec::ellipse(a), n);
    const DenseOperator op = assemble(grid);
    const int it = iterations(op, make_rhs(*grid, RhsKind::PointSource, o.seed).values, nullptr, o);
    rows.push_back({a, n, it});
    say(o, "aspect " + fmt_num(a) + ": " + std::to_string(it));
  }
  return rows;
}

std::vector<LobesRow> lobes(const RunOptions& o, const std::vector<int>& ks) {
  std::vector<LobesRow> rows;
  for (int k : ks) {
    const auto grid = grid_of(CurveSpec::flower(k), kLobesN);
    const DenseOperator op = assemble(grid);
    const int it = iterations(op, make_rhs(*grid, RhsKind::PointSource, o.seed).values, nullptr, o);
    rows.push_back({k, kLobesN, it});
    say(o, "lobes " + std::to_string(k) + ": " + std::to_string(it));
  }
  return rows;
}

std::vector<TwoLevelCase> two_level_cases() {
  return {{CurveSpec::simple(), 2048}, {CurveSpec::moderate(), 2048}, {CurveSpec::flower(4), 2048},
          {CurveSpec::flower(8), 4096}};
}

std::vector<TwoLevelRow> two_level(const RunOptions& o, const std::vector<TwoLevelCase>& cases, bool mg) {
  constexpr int kLeaf = 10;
  struct Variant {
    const char* name;
    SmootherSpec smoother;
  };
  auto spec = [](SmootherKind k, int moments = 4, int level = 1) {
    SmootherSpec s;
    s.kind = k;
    s.leaf = kLeaf;
    s.moments = moments;
    s.vlist_level = level;
    return s;
  };
  const Variant variants[] = {{"Picard", spec(SmootherKind::Picard)},       {"P_D", spec(SmootherKind::BlockDiag)},
                              {"P_0", spec(SmootherKind::Ulist)},           {"P_1-Exact", spec(SmootherKind::Vlist, 0)},
                              {"P_1", spec(SmootherKind::Vlist, 4)},        {"P_2", spec(SmootherKind::Vlist, 4, 2)}};

  std::vector<TwoLevelRow> rows;
  for (const auto& c : cases) {
    const auto grid = grid_of(c.curve, c.n);
    const DenseOperator op = assemble(grid);
    const Vector f = make_rhs(*grid, RhsKind::PointSource, o.seed).values;
    for (const auto& v : variants) {
      TwoLevelRow row{c.curve.name(), c.n, v.name, -1, -1, -1};
      {
        const PreconditionerPtr p = build_smoother(op, v.smoother);
        row.single = iterations(op, f, v.smoother.kind == SmootherKind::Picard ? nullptr : p.get(), o);
      }
      if (mg) {
        for (int nmin : {128, 16}) {
          MultigridOptions mo;
          mo.n_min = nmin;
          mo.smoother = v.smoother;
          const auto pre = make_multigrid_preconditioner(build_hierarchy(op, mo));
          (nmin == 128 ? row.nmin128 : row.nmin16) = iterations(op, f, pre.get(), o);
        }
      }
      say(o, row.geometry + " " + row.precond + ": " + fmt_int(row.single) + " " + fmt_int(row.nmin128) + " " +
                 fmt_int(row.nmin16));
      rows.push_back(row);
    }
    const QuadTree tree = build_fmm_tree(*grid, kLeaf);
    const auto ps1 = build_fmmschur(op, tree, build_ulist(op, tree));
    rows.push_back({c.curve.name(), c.n, "P_S1", iterations(op, f, ps1.get(), o), -1, -1});
    say(o, c.curve.name() + " P_S1: " + fmt_int(rows.back().single));
  }
  return rows;
}

std::vector<CoarseningCase> coarsening_cases() {
  return {{CurveSpec::simple(), 128, 32, 19, 4},
          {CurveSpec::moderate(), 256, 64, 17, 4},
          {CurveSpec::flower(4), 2048, 512, 20, 10},
          {CurveSpec::flower(8), 4096, 1024, 22, 10}};
}

std::vector<CoarseningRow> coarsening(const RunOptions& o, const std::vector<CoarseningCase>& cases) {
  struct Variant {
    const char* name;
    SmootherKind kind;
    int band;
  };
  const Variant variants[] = {{"Picard", SmootherKind::Picard, 0},   {"P_B(2)", SmootherKind::Banded, 2},
                              {"P_B(10)", SmootherKind::Banded, 10}, {"P_D", SmootherKind::BlockDiag, 0},
                              {"P_0", SmootherKind::Ulist, 0},       {"P_1", SmootherKind::Vlist, 0}};
  std::vector<CoarseningRow> rows;
  for (const auto& c : cases) {
    const auto grid = grid_of(c.curve, c.n);
    const DenseOperator op = assemble(grid);
    const Vector f = make_rhs(*grid, RhsKind::PointSource, o.seed).values;
    double mv = 0.0;
    const int none = iterations(op, f, nullptr, o, &mv);
    rows.push_back({c.curve.name(), c.n, "None", none, mv, -1, 0.0, 0.0, 0.0});

    // Projection hierarchies share their coarse matrices; build them once per smoother.
    for (const auto& v : variants) {
      CoarseningRow row{c.curve.name(), c.n, v.name, -1, 0.0, -1, 0.0, 0.0, 0.0};
      for (auto mode : {CoarseningMode::Geometric, CoarseningMode::Projection}) {
        MultigridOptions mo;
        mo.n_min = c.n_min;
        mo.mode = mode;
        mo.shape = HierarchyShape::VCycle;
        mo.pre_smooth = 1;
        mo.post_smooth = 1;
        mo.smoother.kind = v.kind;
        mo.smoother.band = v.band;
        mo.smoother.leaf = c.leaf;
        mo.coarse.m_coarse = c.m_coarse;
        mo.coarse.kind = mode == CoarseningMode::Geometric ? CoarseSolverKind::ExactLU : CoarseSolverKind::Gmres;
        const auto h = build_hierarchy(op, mo);
        const auto pre = make_multigrid_preconditioner(h);
        double m = 0.0;
        const int it = iterations(op, f, pre.get(), o, &m);
        if (mode == CoarseningMode::Geometric) {
          row.geo_iterations = it;
          row.geo_matvecs = m;
          row.geo_cycle_cost = cycle_cost(*h);
        } else {
          row.proj_iterations = it;
          row.proj_matvecs = m;
          row.proj_cycle_cost = cycle_cost(*h);
        }
      }
      say(o, row.geometry + " " + row.precond + ": " + fmt_int(row.geo_iterations) + " / " +
                 fmt_int(row.proj_iterations));
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<Coarse512Row> coarse512(const RunOptions& o, const std::vector<int>& ns) {
  constexpr int kLeaf = 50;
  std::vector<Coarse512Row> rows;
  for (int n : ns) {
    const auto grid = grid_of(CurveSpec::flower(4), n);
    const DenseOperator op = assemble(grid);
    const Vector f = make_rhs(*grid, RhsKind::PointSource, o.seed).values;
    Coarse512Row row{};
    row.n = n;
    row.metric = resolution_metric(op);
    row.unpre = iterations(op, f, nullptr, o);
    row.single_p0 = -1;
    if (n > 512) {
      const QuadTree tree = build_fmm_tree(*grid, kLeaf);
      row.single_p0 = iterations(op, f, build_ulist(op, tree).get(), o);
    }
    const int coarse[2] = {512, 1024};
    for (int i = 0; i < 2; ++i) {
      row.two_picard[i] = row.two_p0[i] = row.mg_picard[i] = row.mg_p0[i] = -1;
      if (n <= coarse[i]) continue;
      for (auto shape : {HierarchyShape::TwoGrid, HierarchyShape::VCycle}) {
        for (auto kind : {SmootherKind::Picard, SmootherKind::Ulist}) {
          MultigridOptions mo;
          mo.n_min = coarse[i];
          mo.shape = shape;
          mo.smoother.kind = kind;
          mo.smoother.leaf = kLeaf;
          const auto pre = make_multigrid_preconditioner(build_hierarchy(op, mo));
          const int it = iterations(op, f, pre.get(), o);
          if (shape == HierarchyShape::TwoGrid)
            (kind == SmootherKind::Picard ? row.two_picard[i] : row.two_p0[i]) = it;
          else
            (kind == SmootherKind::Picard ? row.mg_picard[i] : row.mg_p0[i]) = it;
        }
      }
    }
    say(o, "coarse512 N=" + std::to_string(n) + " done");
    rows.push_back(row);
  }
  return rows;
}

std::vector<SingleGridRow> single_grid(const RunOptions& o, int k, const std::vector<int>& ns) {
  constexpr int kLeaf = 50;
  std::vector<SingleGridRow> rows;
  for (int n : ns) {
    const auto grid = grid_of(CurveSpec::flower(k), n);
    const DenseOperator op = assemble(grid);
    const Vector f = make_rhs(*grid, RhsKind::Random, o.seed).values;
    const QuadTree tree = build_fmm_tree(*grid, kLeaf);
    SingleGridRow row{};
    row.lobes = k;
    row.n = n;
    row.metric = resolution_metric(op);
    row.unpre = iterations(op, f, nullptr, o);
    row.pd = iterations(op, f, build_blockdiag(op, tree).get(), o);
    const auto p0 = build_ulist(op, tree);
    const auto p0i = build_ulist(op, tree, FactorChoice::ilu());
    row.p0 = iterations(op, f, p0.get(), o);
    row.p0_ilu = iterations(op, f, p0i.get(), o);
    row.p1 = n <= kMaxDenseP1 ? iterations(op, f, build_vlist(op, tree, 1, 4).get(), o) : -1;
    row.ps1 = iterations(op, f, build_fmmschur(op, tree, p0).get(), o);
    row.ps1_ilu = iterations(op, f, build_fmmschur(op, tree, p0i).get(), o);
    say(o, "single-grid k=" + std::to_string(k) + " N=" + std::to_string(n) + ": " + fmt_int(row.unpre) + " " +
               fmt_int(row.pd) + " " + fmt_int(row.p0) + " " + fmt_int(row.p1) + " " + fmt_int(row.ps1));
    rows.push_back(row);
  }
  return rows;
}

std::vector<SpectrumRow> smoother_spectrum(const RunOptions& o, const std::vector<int>& ns) {
  std::vector<SpectrumRow> rows;
  for (int n : ns) {
    const auto grid = grid_of(CurveSpec::flower(4), n);
    const DenseOperator op = assemble(grid);
    // Every Fourier coefficient equal to one is N times the unit impulse at theta = 0.
    Vector e0 = Vector::Zero(n);
    e0[0] = n;
    const Vector zero = Vector::Zero(n);
    const QuadTree tree = build_fmm_tree(*grid, kSpectrumLeaf);
    const std::pair<const char*, PreconditionerPtr> smoothers[] = {{"Picard", build_identity(n)},
                                                                   {"P_D", build_blockdiag(op, tree)},
                                                                   {"P_0", build_ulist(op, tree)},
                                                                   {"P_1", build_vlist(op, tree, 1, 4)}};
    for (const auto& [name, pre] : smoothers) {
      const Vector e1 = split_smoother_step(*pre, op, zero, e0);
      const Eigen::VectorXcd c = transfer::fourier_coefficients(e1);
      for (int i = 0; i < n; ++i) rows.push_back({n, name, i - n / 2, std::abs(c[i])});
    }
    say(o, "spectrum N=" + std::to_string(n) + " done");
  }
  return rows;
}

// ---------------------------------------------------------------------------

Table aspect_ratio_table(const RunOptions& o) {
  Table t;
  t.name = "aspect-ratio";
  t.meta = {"unpreconditioned GMRES on ellipses (a cos t, sin t), tol " + fmt_num(o.tol),
            "N = max(256, 32 a) rounded up to a power of 2; boundary data 2 log|x - (3,3)|"};
  t.header = {"aspect", "iterations"};
  for (const auto& r : aspect_ratio(o)) {
    t.rows.push_back({fmt_num(r.aspect), fmt_int(r.iterations)});
    t.meta.push_back("aspect " + fmt_num(r.aspect) + ": N = " + std::to_string(r.n));
  }
  return t;
}

Table lobes_table(const RunOptions& o) {
  Table t;
  t.name = "lobes";
  t.meta = {"unpreconditioned GMRES on k-lobed flowers r = 1 + 0.98 cos(k t), N = " + std::to_string(kLobesN) +
                ", tol " + fmt_num(o.tol),
            "boundary data 2 log|x - (3,3)|"};
  t.header = {"lobes", "iterations"};
  for (const auto& r : lobes(o)) t.rows.push_back({std::to_string(r.lobes), fmt_int(r.iterations)});
  return t;
}

Table two_level_table(const RunOptions& o) {
  Table t;
  t.name = "two-level";
  t.meta = {"s = 10; two-grid V(1,0) with geometric coarsening and LU coarse solve; P_1, P_2 use 4 moments",
            "boundary data 2 log|x - (3,3)|"};
  t.header = {"geometry", "n", "precond", "single", "nmin128", "nmin16"};
  for (const auto& r : two_level(o, two_level_cases()))
    t.rows.push_back({r.geometry, std::to_string(r.n), r.precond, fmt_int(r.single), fmt_int(r.nmin128),
                      fmt_int(r.nmin16)});
  return t;
}

Table coarsening_table(const RunOptions& o) {
  Table t;
  t.name = "coarsening";
  t.meta = {"three-level V(1,1); geometric: LU coarse solve, 1.5 matvecs per sweep",
            "projection: m_coarse GMRES steps on the projected coarse operator, charged on top of the sweeps",
            "matvecs = iterations * (cycle cost + 1); the extra product is the GMRES residual"};
  t.header = {"geometry", "n", "nmin", "mcoarse", "precond", "geometric_iterations", "geometric_matvecs",
              "projection_iterations", "projection_matvecs"};
  const auto cases = coarsening_cases();
  for (const auto& r : coarsening(o, cases)) {
    const auto c = std::find_if(cases.begin(), cases.end(), [&](const CoarseningCase& x) {
      return x.curve.name() == r.geometry && x.n == r.n;
    });
    t.rows.push_back({r.geometry, std::to_string(r.n), std::to_string(c->n_min), std::to_string(c->m_coarse), r.precond,
                      fmt_int(r.geo_iterations), fmt_num(r.geo_matvecs), fmt_int(r.proj_iterations),
                      r.proj_iterations < 0 ? "" : fmt_num(r.proj_matvecs)});
  }
  return t;
}

Table coarse512_table(const RunOptions& o) {
  Table t;
  t.name = "coarse512";
  t.meta = {"four-lobed flower, s = 50, V(1,0) cycles with geometric coarsening",
            "columns suffixed _512 / _1024 give the coarsest grid size"};
  t.header = {"n",             "metric",       "unpre",      "single_p0",   "two_picard_512", "two_p0_512",
              "mg_picard_512", "mg_p0_512",    "two_picard_1024", "two_p0_1024", "mg_picard_1024", "mg_p0_1024"};
  for (const auto& r : coarse512(o)) {
    t.rows.push_back({std::to_string(r.n), fmt_sci(r.metric), fmt_int(r.unpre), fmt_int(r.single_p0),
                      fmt_int(r.two_picard[0]), fmt_int(r.two_p0[0]), fmt_int(r.mg_picard[0]), fmt_int(r.mg_p0[0]),
                      fmt_int(r.two_picard[1]), fmt_int(r.two_p0[1]), fmt_int(r.mg_picard[1]), fmt_int(r.mg_p0[1])});
  }
  return t;
}

Table single_grid_table(const RunOptions& o) {
  Table t;
  t.name = "single-grid";
  t.meta = {"s = 50, random boundary data (seed " + std::to_string(o.seed) + "), ILU drop tolerance 1e-3",
            "P_1 is skipped above N = " + std::to_string(kMaxDenseP1) + " (dense factorization)"};
  if (!o.large) t.meta.push_back("24-lobed N = 16384 omitted; pass --large to include it");
  t.header = {"lobes", "n", "metric", "unpre", "p_d", "p_0", "p_0_ilu", "p_1", "p_s1", "p_s1_ilu"};
  std::vector<int> n24{512, 1024, 2048, 4096, 8192};
  if (o.large) n24.push_back(16384);
  for (const auto& [k, ns] : {std::pair<int, std::vector<int>>{8, {512, 1024, 2048, 4096, 8192}}, {24, n24}})
    for (const auto& r : single_grid(o, k, ns))
      t.rows.push_back({std::to_string(r.lobes), std::to_string(r.n), fmt_sci(r.metric), fmt_int(r.unpre),
                        fmt_int(r.pd), fmt_int(r.p0), fmt_int(r.p0_ilu), fmt_int(r.p1), fmt_int(r.ps1),
                        fmt_int(r.ps1_ilu)});
  return t;
}

Table smoother_spectrum_table(const RunOptions& o) {
  Table t;
  t.name = "smoother-spectrum";
  t.meta = {"four-lobed flower, f = 0, initial error with all Fourier coefficients equal to 1",
            "amplitude |c_k| of the error after one sweep; s = " + std::to_string(kSpectrumLeaf)};
  t.header = {"n", "smoother", "mode", "amplitude"};
  for (const auto& r : smoother_spectrum(o))
    t.rows.push_back({std::to_string(r.n), r.smoother, std::to_string(r.mode), fmt_num(r.amplitude)});
  return t;
}

std::vector<std::string> table_names() {
  return {"aspect-ratio", "lobes", "two-level", "coarsening", "coarse512", "single-grid", "smoother-spectrum"};
}

Table run_table(const std::string& name, const RunOptions& o) {
  if (name == "aspect-ratio") return aspect_ratio_table(o);
  if (name == "lobes") return lobes_table(o);
  if (name == "two-level") return two_level_table(o);
  if (name == "coarsening") return coarsening_table(o);
  if (name == "coarse512") return coarse512_table(o);
  if (name == "single-grid") return single_grid_table(o);
  if (name == "smoother-spectrum") return smoother_spectrum_table(o);
  throw ConfigError("unknown table '" + name + "'");
}

}  // namespace dlp::experiments
