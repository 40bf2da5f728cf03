#include "doctest.h"

#include "dlp/geometry.hpp"
#include "dlp/multigrid.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/solver.hpp"

#include <random>

using namespace dlp;

namespace {

int two_grid_iterations(const CurveSpec& c, int n, int n_min) {
  const DenseOperator op = assemble(build_grid(c, n));
  MultigridOptions o;
  o.n_min = n_min;
  const auto pre = make_multigrid_preconditioner(build_hierarchy(op, o));
  const SolveReport r = gmres(op, boundary_data_harmonic(*op.grid).values, {}, pre.get());
  REQUIRE(r.converged);
  return r.iterations;
}

}  // namespace

TEST_CASE("two-grid Picard iteration counts are mesh independent on a resolved curve") {
  const int a = two_grid_iterations(CurveSpec::simple(), 512, 128);
  const int b = two_grid_iterations(CurveSpec::simple(), 1024, 128);
  const int c = two_grid_iterations(CurveSpec::simple(), 2048, 128);
  CHECK(std::abs(a - b) <= 1);
  CHECK(std::abs(b - c) <= 1);
  CHECK(c <= 5);
}

TEST_CASE("geometric and projection coarse operators agree on the circle") {
  const DenseOperator op = assemble(build_grid(CurveSpec::ellipse(1.0), 64));
  MultigridOptions o;
  o.n_min = 32;
  const auto geo = build_hierarchy(op, o);
  o.mode = CoarseningMode::Projection;
  const auto proj = build_hierarchy(op, o);
  REQUIRE(geo->num_levels() == 2);
  REQUIRE(proj->num_levels() == 2);
  CHECK((geo->levels[1].op.matrix - proj->levels[1].op.matrix).norm() < 1e-10);
  CHECK(proj->levels[1].op.projected);
  CHECK_FALSE(geo->levels[1].op.projected);
}

TEST_CASE("hierarchy shapes") {
  const DenseOperator op = assemble(build_grid(CurveSpec::flower(4), 2048));
  MultigridOptions o;
  o.n_min = 512;
  o.shape = HierarchyShape::VCycle;
  const auto v = build_hierarchy(op, o);
  REQUIRE(v->num_levels() == 3);
  CHECK(v->levels[1].op.size() == 1024);
  CHECK(v->levels[2].op.size() == 512);
  CHECK(v->levels[2].smoother == nullptr);
  o.shape = HierarchyShape::TwoGrid;
  const auto t = build_hierarchy(op, o);
  REQUIRE(t->num_levels() == 2);
  CHECK(t->levels[1].op.size() == 512);
}

TEST_CASE("cycle costs") {
  const DenseOperator op = assemble(build_grid(CurveSpec::simple(), 128));
  MultigridOptions o;
  o.n_min = 32;
  o.shape = HierarchyShape::VCycle;
  o.pre_smooth = 1;
  o.post_smooth = 1;
  CHECK(cycle_cost(*build_hierarchy(op, o)) == 3.0);
  o.mode = CoarseningMode::Projection;
  o.coarse.kind = CoarseSolverKind::Gmres;
  o.coarse.m_coarse = 19;
  const auto h = build_hierarchy(op, o);
  CHECK(cycle_cost(*h) == 22.0);
  // With the GMRES residual product a V(1,1) projection iteration costs 4 + m_coarse.
  const auto pre = make_multigrid_preconditioner(h);
  const SolveReport r = gmres(op, boundary_data_harmonic(*op.grid).values, {}, pre.get());
  CHECK(r.scaled_matvecs == doctest::Approx(23.0 * r.iterations));
  o.mode = CoarseningMode::Geometric;
  o.post_smooth = 0;
  CHECK(cycle_cost(*build_hierarchy(op, o)) == 1.5);
}

TEST_CASE("n_min equal to N solves directly") {
  const DenseOperator op = assemble(build_grid(CurveSpec::moderate(), 128));
  MultigridOptions o;
  o.n_min = 128;
  const auto h = build_hierarchy(op, o);
  CHECK(h->num_levels() == 1);
  const Vector f = boundary_data_harmonic(*op.grid).values;
  const Vector eta = vcycle_apply(*h, f);
  CHECK((eta + op.apply(eta) - f).norm() / f.norm() < 1e-12);
  const SolveReport r = gmres(op, f, {}, make_multigrid_preconditioner(h).get());
  CHECK(r.iterations == 1);
}

TEST_CASE("hierarchy rejects bad coarse sizes") {
  const DenseOperator op = assemble(build_grid(CurveSpec::simple(), 128));
  MultigridOptions o;
  o.n_min = 256;
  CHECK_THROWS_AS(build_hierarchy(op, o), ConfigError);
  o.n_min = 8;
  CHECK_THROWS_AS(build_hierarchy(op, o), ConfigError);
  o.n_min = 48;
  CHECK_THROWS_AS(build_hierarchy(op, o), ConfigError);
}

TEST_CASE("multigrid preconditioner is linear for every smoother") {
  const DenseOperator op = assemble(build_grid(CurveSpec::flower(4), 512));
  std::mt19937 gen(5);
  std::normal_distribution<double> d;
  Vector u(512), v(512);
  for (int i = 0; i < 512; ++i) {
    u[i] = d(gen);
    v[i] = d(gen);
  }
  for (auto kind : {SmootherKind::Picard, SmootherKind::Banded, SmootherKind::BlockDiag, SmootherKind::Ulist,
                    SmootherKind::Vlist}) {
    MultigridOptions o;
    o.n_min = 128;
    o.shape = HierarchyShape::VCycle;
    o.post_smooth = 1;
    o.smoother.kind = kind;
    const auto h = build_hierarchy(op, o);
    const Vector lhs = vcycle_apply(*h, 3.0 * u + v);
    const Vector rhs = 3.0 * vcycle_apply(*h, u) + vcycle_apply(*h, v);
    CAPTURE(to_string(kind));
    CHECK((lhs - rhs).norm() / rhs.norm() < 1e-10);
  }
}

TEST_CASE("FMM-based smoothers beat Picard with an unresolved coarse grid") {
  // Four-lobed flower, coarsest grid 512: the Picard two-grid cycle stalls while P_0 does not.
  const DenseOperator op = assemble(build_grid(CurveSpec::flower(4), 2048));
  const Vector f = boundary_data_harmonic(*op.grid).values;
  MultigridOptions o;
  o.n_min = 512;
  o.smoother.leaf = 50;
  const auto picard = make_multigrid_preconditioner(build_hierarchy(op, o));
  o.smoother.kind = SmootherKind::Ulist;
  const auto p0 = make_multigrid_preconditioner(build_hierarchy(op, o));
  const int ip = gmres(op, f, {}, picard.get()).iterations;
  const int i0 = gmres(op, f, {}, p0.get()).iterations;
  CHECK(i0 * 2 < ip);
}

TEST_CASE("projection coarse solve with GMRES and a preconditioned variant") {
  const DenseOperator op = assemble(build_grid(CurveSpec::moderate(), 512));
  const Vector f = boundary_data_harmonic(*op.grid).values;
  MultigridOptions o;
  o.n_min = 256;
  o.mode = CoarseningMode::Projection;
  for (auto kind : {CoarseSolverKind::Gmres, CoarseSolverKind::PreconditionedGmres, CoarseSolverKind::ExactLU}) {
    o.coarse.kind = kind;
    const SolveReport r = gmres(op, f, {}, make_multigrid_preconditioner(build_hierarchy(op, o)).get());
    CHECK(r.converged);
    CHECK(r.iterations < 15);
  }
}
