#include "doctest.h"

#include "dlp/fmmtree.hpp"
#include "dlp/geometry.hpp"
#include "dlp/nystrom.hpp"
#include "dlp/precond.hpp"
#include "dlp/solver.hpp"

#include <random>
#include <sstream>

using namespace dlp;

TEST_CASE("GMRES on the identity takes one iteration") {
  Vector f = Vector::LinSpaced(50, 1.0, 2.0);
  const SolveReport r = gmres([](const Vector& v) { return v; }, f);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK((r.solution - f).norm() < 1e-14);
  CHECK(r.scaled_matvecs == 1.0);
}

TEST_CASE("residual history starts at one and never increases") {
  const DenseOperator op = assemble(build_grid(CurveSpec::flower(6), 512));
  const SolveReport r = gmres(op, boundary_data_harmonic(*op.grid).values);
  REQUIRE(r.converged);
  CHECK(r.residual_history.front() == 1.0);
  CHECK(static_cast<int>(r.residual_history.size()) == r.iterations + 1);
  for (std::size_t i = 1; i < r.residual_history.size(); ++i)
    CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1.0 + 1e-12));
  CHECK(r.residual_history.back() <= 1e-12);
  CHECK(r.true_relres < 1e-10);
}

TEST_CASE("preconditioning changes the iteration count, not the answer") {
  const DenseOperator op = assemble(build_grid(CurveSpec::flower(4), 512));
  const Vector f = boundary_data_random(*op.grid, 3).values;
  const QuadTree tree = build_fmm_tree(*op.grid, 10);
  const auto p0 = build_ulist(op, tree);
  const SolveReport plain = gmres(op, f);
  const SolveReport pre = gmres(op, f, {}, p0.get());
  REQUIRE(plain.converged);
  REQUIRE(pre.converged);
  CHECK(pre.iterations < plain.iterations);
  CHECK((plain.solution - pre.solution).norm() / plain.solution.norm() < 1e-9);
  CHECK(pre.scaled_matvecs == doctest::Approx(2.0 * pre.iterations));
  CHECK(plain.scaled_matvecs == doctest::Approx(plain.iterations));
}

TEST_CASE("solution matches a dense direct solve") {
  const DenseOperator op = assemble(build_grid(CurveSpec::moderate(), 256));
  const Vector f = boundary_data_harmonic(*op.grid, HarmonicKind::Quadratic).values;
  const Vector direct = (Matrix::Identity(256, 256) + op.matrix).partialPivLu().solve(f);
  const SolveReport r = gmres(op, f);
  CHECK((r.solution - direct).norm() / direct.norm() < 1e-10);
}

TEST_CASE("iteration cap reports non-convergence") {
  const DenseOperator op = assemble(build_grid(CurveSpec::flower(8), 512));
  GmresOptions o;
  o.max_iter = 3;
  const SolveReport r = gmres(op, boundary_data_harmonic(*op.grid).values, o);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}

TEST_CASE("zero right-hand side is rejected, the relative residual being undefined") {
  CHECK_THROWS_AS(gmres([](const Vector& v) { return Vector(2.0 * v); }, Vector::Zero(10)), ConfigError);
}

TEST_CASE("GMRES handles a nonnormal matrix with slow convergence") {
  // Jordan-like upper bidiagonal matrix: exact after n steps.
  const int n = 30;
  Matrix a = Matrix::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  Vector f = Vector::Ones(n);
  const SolveReport r = gmres([&](const Vector& v) { return Vector(a * v); }, f);
  CHECK(r.converged);
  CHECK(r.iterations <= n);
  CHECK((a * r.solution - f).norm() < 1e-10);
}

TEST_CASE("residual CSV has one row per iteration") {
  const SolveReport r = gmres([](const Vector& v) { return Vector(3.0 * v); }, Vector::Ones(4));
  std::ostringstream os;
  write_residuals_csv(os, r);
  CHECK(os.str().rfind("iter,relres\n0,1\n", 0) == 0);
}
