#include "doctest.h"

#include "dlp/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>

using namespace dlp;

namespace {

Matrix random_matrix(int r, int c, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  Matrix a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = d(gen);
  return a;
}

Vector random_vector(int n, unsigned seed) { return random_matrix(n, 1, seed).col(0); }

double spectral_norm(const Matrix& a) { return Eigen::JacobiSVD<Matrix>(a).singularValues()(0); }

// Sparse, diagonally dominant, nonsymmetric test matrix with scattered couplings.
SparseMatrix test_sparse(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> col(0, n - 1);
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 6.0 + u(gen));
    t.emplace_back(i, (i + 1) % n, u(gen));
    t.emplace_back(i, (i + n - 1) % n, u(gen));
    for (int k = 0; k < 3; ++k) t.emplace_back(i, col(gen), u(gen));
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

TEST_CASE("truncated SVD reproduces exact low rank") {
  const Matrix a = random_matrix(30, 4, 1) * random_matrix(4, 25, 2);
  const LowRankFactor f = truncated_svd(a, 4);
  CHECK(f.rank() == 4);
  CHECK((f.dense() - a).norm() <= 1e-12 * a.norm());
}

TEST_CASE("truncation error is the next singular value") {
  const Matrix a = random_matrix(20, 20, 3);
  const Vector s = Eigen::JacobiSVD<Matrix>(a).singularValues();
  for (int p : {1, 5, 12}) {
    const LowRankFactor f = truncated_svd(a, p);
    CHECK(std::abs(spectral_norm(a - f.dense()) - s[p]) < 1e-10);
  }
  const LowRankFactor z = truncated_svd(a, 0);
  CHECK(z.rank() == 0);
  CHECK(std::abs(spectral_norm(a - z.dense()) - s[0]) < 1e-10);
  CHECK(truncated_svd(a, 50).rank() == 20);
}

TEST_CASE("Lanczos truncated SVD agrees with the dense one") {
  // Decaying spectrum, like far-field blocks.
  const int n = 300;
  Matrix q1 = random_matrix(n, n, 4).householderQr().householderQ();
  Matrix q2 = random_matrix(n, n, 5).householderQr().householderQ();
  Vector s(n);
  for (int i = 0; i < n; ++i) s[i] = std::pow(0.8, i);
  const Matrix a = q1 * s.asDiagonal() * q2.transpose();
  for (int p : {5, 20}) {
    const LowRankFactor f = truncated_svd([&](const Vector& v) -> Vector { return a * v; },
                                          [&](const Vector& v) -> Vector { return a.transpose() * v; }, n, n, p);
    CHECK(std::abs(spectral_norm(a - f.dense()) - s[p]) < 1e-9);
  }
  // Exactly rank 3 operator asked for rank 6.
  const Matrix b = random_matrix(n, 3, 6) * random_matrix(3, n, 7);
  const LowRankFactor g = truncated_svd([&](const Vector& v) -> Vector { return b * v; },
                                        [&](const Vector& v) -> Vector { return b.transpose() * v; }, n, n, 6);
  CHECK(g.rank() == 6);
  CHECK((g.dense() - b).norm() <= 1e-10 * b.norm());
}

TEST_CASE("ILU of a diagonal matrix is exact") {
  SparseMatrix d(10, 10);
  for (int i = 0; i < 10; ++i) d.insert(i, i) = i + 1.0;
  const SparseFactorization f = SparseFactorization::ilu(d, 0.5);
  const Vector b = random_vector(10, 8);
  CHECK((d * f.solve(b) - b).norm() < 1e-14 * b.norm());
}

TEST_CASE("ILU without dropping matches the exact LU") {
  const SparseMatrix a = test_sparse(100, 9);
  const Vector b = random_vector(100, 10);
  const Vector xe = SparseFactorization::exact(a).solve(b);
  const Vector xi = SparseFactorization::ilu(a, 0.0).solve(b);
  CHECK((a * xe - b).norm() <= 1e-12 * b.norm());
  CHECK((xi - xe).norm() <= 1e-10 * xe.norm());
  const Vector xd = Matrix(a).partialPivLu().solve(b);
  CHECK((xe - xd).norm() <= 1e-10 * xd.norm());
}

TEST_CASE("ILU quality improves as the drop tolerance shrinks") {
  const SparseMatrix a = test_sparse(200, 11);
  const Vector b = random_vector(200, 12);
  double prev = 1e300;
  long long prev_fill = 0;
  for (double tol : {1e-1, 1e-2, 1e-3, 0.0}) {
    const SparseFactorization f = SparseFactorization::ilu(a, tol);
    // Residual of the preconditioned first step x = M^{-1} b.
    const double r = (b - a * f.solve(b)).norm();
    CHECK(r <= prev * (1 + 1e-12));
    CHECK(f.fill() >= prev_fill);
    prev = r;
    prev_fill = f.fill();
  }
}

TEST_CASE("ILU reports zero pivots") {
  SparseMatrix a(3, 3);
  a.insert(0, 1) = 1.0;
  a.insert(1, 0) = 1.0;
  a.insert(2, 2) = 1.0;
  CHECK_THROWS_AS(SparseFactorization::ilu(a, 0.0), NumericalError);
}

TEST_CASE("SMW with zero update is a plain solve") {
  const Matrix bm = random_matrix(8, 8, 13) + 8.0 * Matrix::Identity(8, 8);
  const auto lu = bm.partialPivLu();
  const LinearMap bsolve = [&](const Vector& v) -> Vector { return lu.solve(v); };
  const Vector b = random_vector(8, 14);
  const Vector x = smw_apply(bsolve, Matrix::Zero(8, 2), Matrix::Zero(2, 8), b);
  CHECK((x - lu.solve(b)).norm() < 1e-14 * x.norm());
}

TEST_CASE("SMW closed form for a rank-one identity update") {
  const LinearMap id = [](const Vector& v) -> Vector { return v; };
  Matrix u = Matrix::Zero(5, 1);
  u(0, 0) = 1.0;
  const Vector b = random_vector(5, 15);
  Vector expect = b;
  expect[0] -= 0.5 * b[0];
  CHECK((smw_apply(id, u, u.transpose(), b) - expect).norm() < 1e-15);
}

TEST_CASE("SMW matches dense inversion on random instances") {
  std::mt19937 gen(16);
  std::uniform_int_distribution<int> dim(4, 32);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = dim(gen);
    const int p = std::min(n, 1 + trial % 8);
    const Matrix bm = random_matrix(n, n, 100 + trial) + 2.0 * std::sqrt(n) * Matrix::Identity(n, n);
    const Matrix u = random_matrix(n, p, 200 + trial);
    const Matrix v = random_matrix(p, n, 300 + trial) / std::sqrt(n);
    const auto lu = bm.partialPivLu();
    const SmwSolver smw([&](const Vector& x) -> Vector { return lu.solve(x); }, u, v);
    const Vector b = random_vector(n, 400 + trial);
    const Vector expect = (bm + u * v).partialPivLu().solve(b);
    CHECK((smw.solve(b) - expect).norm() <= 1e-10 * expect.norm());
  }
  // The 8x8 rank-2 case against an explicit inverse.
  const Matrix bm = random_matrix(8, 8, 17) + 6.0 * Matrix::Identity(8, 8);
  const Matrix u = random_matrix(8, 2, 18), v = random_matrix(2, 8, 19);
  const Matrix inv = (bm + u * v).inverse();
  const auto lu = bm.partialPivLu();
  const SmwSolver smw([&](const Vector& x) -> Vector { return lu.solve(x); }, u, v);
  for (int j = 0; j < 8; ++j) CHECK((smw.solve(Vector::Unit(8, j)) - inv.col(j)).norm() < 1e-11);
}

TEST_CASE("singular capacitance matrix is reported") {
  const LinearMap id = [](const Vector& v) -> Vector { return v; };
  Matrix u = Matrix::Zero(4, 1);
  u(0, 0) = 1.0;
  Matrix v = Matrix::Zero(1, 4);
  v(0, 0) = -1.0;
  CHECK_THROWS_AS(SmwSolver(id, u, v), NumericalError);
}
