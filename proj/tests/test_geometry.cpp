#include "doctest.h"

#include "dlp/geometry.hpp"
#include "dlp/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace dlp;

TEST_CASE("unit circle has unit curvature, speed and radial normals") {
  const BoundaryGrid g = build_grid(CurveSpec::ellipse(1.0), 64);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(g.kappa[j] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.jacobian[j] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(g.nx[j] - g.x[j]) < 1e-14);
    CHECK(std::abs(g.ny[j] - g.y[j]) < 1e-14);
  }
}

TEST_CASE("invalid sizes and specs are rejected") {
  CHECK_THROWS_AS(build_grid(CurveSpec::simple(), 4), ConfigError);
  CHECK_THROWS_AS(build_grid(CurveSpec::simple(), 100), ConfigError);
  CHECK_THROWS_AS(build_grid(CurveSpec::flower(1), 64), ConfigError);
  CHECK_THROWS_AS(build_grid(CurveSpec::ellipse(0.5), 64), ConfigError);
  const BoundaryGrid g = build_grid(CurveSpec::simple(), 64);
  CHECK_THROWS_AS(coarsen_geometry(g, 48), ConfigError);
  CHECK_THROWS_AS(coarsen_geometry(g, 4), ConfigError);
}

TEST_CASE("normals are unit length, curves turn once and are counterclockwise") {
  const std::pair<CurveSpec, int> cases[] = {
      {CurveSpec::simple(), 2048}, {CurveSpec::moderate(), 2048}, {CurveSpec::flower(4), 32768},
      {CurveSpec::flower(8), 131072}, {CurveSpec::ellipse(16), 1024}};
  for (const auto& [spec, n] : cases) {
    CAPTURE(spec.name());
    const BoundaryGrid g = build_grid(spec, n);
    for (int j = 0; j < n; ++j) CHECK(std::abs(std::hypot(g.nx[j], g.ny[j]) - 1.0) < 1e-12);
    CHECK(std::abs(total_turning(g) - kTwoPi) < 1e-8);
    CHECK(signed_area(g) > 0.0);
  }
}

TEST_CASE("curvature extremes of the test curves") {
  const BoundaryGrid simple = build_grid(CurveSpec::simple(), 128);
  const double lo = simple.kappa.minCoeff(), hi = simple.kappa.maxCoeff();
  CHECK(lo == doctest::Approx(-27.0).epsilon(0.1));
  CHECK(hi == doctest::Approx(17.0).epsilon(0.1));

  const BoundaryGrid flower = build_grid(CurveSpec::flower(4), 2048);
  const Vector a = flower.kappa.cwiseAbs();
  const double ratio = a.maxCoeff() / std::max(a.minCoeff(), 1e-300);
  CHECK(ratio > 1e3);
}

TEST_CASE("coarsening the circle stays on the circle") {
  const BoundaryGrid g = build_grid(CurveSpec::ellipse(1.0), 256);
  const BoundaryGrid c = coarsen_geometry(g, 64);
  REQUIRE(c.size() == 64);
  for (int j = 0; j < 64; ++j) {
    CHECK(std::abs(std::hypot(c.x[j], c.y[j]) - 1.0) < 1e-12);
    CHECK(std::abs(c.kappa[j] - 1.0) < 1e-10);
    CHECK(std::abs(c.nx[j] - c.x[j]) < 1e-12);
  }
}

TEST_CASE("coarsening to the same size is the identity and restrictions compose") {
  const BoundaryGrid g = build_grid(CurveSpec::flower(4), 512);
  const BoundaryGrid same = coarsen_geometry(g, 512);
  CHECK((same.x - g.x).norm() == 0.0);
  CHECK((same.kappa - g.kappa).norm() == 0.0);

  const BoundaryGrid two = coarsen_geometry(coarsen_geometry(g, 256), 128);
  const BoundaryGrid one = coarsen_geometry(g, 128);
  CHECK((two.x - one.x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((two.y - one.y).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((two.kappa - one.kappa).cwiseAbs().maxCoeff() < 1e-9 * one.kappa.cwiseAbs().maxCoeff());
}

TEST_CASE("coarsened four-lobe flower at 512 points is marginally resolved") {
  const BoundaryGrid fine = build_grid(CurveSpec::flower(4), 2048);
  const double metric = resolution_metric(assemble(coarsen_geometry(fine, 512)));
  CHECK(metric > 6.6e-3);
  CHECK(metric < 6.6e-1);
}

TEST_CASE("geometry csv has one row per point") {
  const BoundaryGrid g = build_grid(CurveSpec::simple(), 16);
  std::ostringstream os;
  write_geometry_csv(os, g);
  const std::string s = os.str();
  CHECK(s.rfind("j,theta,x,y,nx,ny,kappa,jac\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 17);
}
