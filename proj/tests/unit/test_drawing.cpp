#include "doctest.h"
#include "oracles.hpp"

#include "cayley/drawing.hpp"
#include "cayley/errors.hpp"

using namespace cayley;

namespace {

bool isotropic(const Drawing& d, double tol) {
  const RMatrix& c = d.coordinates;
  const double n = double(c.rows());
  const RMatrix cov = c.transpose() * c / n;
  return std::abs(c.col(0).mean()) < tol && std::abs(c.col(1).mean()) < tol &&
         (cov - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("cycles draw as regular polygons") {
  for (int n : {5, 12, 17}) {
    CAPTURE(n);
    const GroupPtr g = build_group(Family::cyclic, n);
    const GroupFunction h = GroupFunction::indicator(g, {1, std::size_t(n - 1)});
    const Drawing d = spectral_drawing(cayley_adjacency(h));
    CHECK(isotropic(d, 1e-10));
    const auto got = oracle::distance_multiset(d.coordinates);
    const auto want = oracle::distance_multiset(oracle::regular_polygon(n, std::sqrt(2.0)));
    REQUIRE(got.size() == want.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    CHECK(worst < 1e-10);
    CHECK(d.edges.size() == std::size_t(n));
  }
}

TEST_CASE("complete graph: degenerate cluster, still isotropic") {
  RMatrix k4 = RMatrix::Ones(4, 4) - RMatrix::Identity(4, 4);
  const Drawing d = spectral_drawing(k4);
  CHECK(isotropic(d, 1e-10));
  CHECK(d.laplacian_spectrum(1) == doctest::Approx(d.laplacian_spectrum(3)));
  CHECK(std::abs(d.variance_x - 1.0) < 1e-12);
  CHECK(std::abs(d.covariance) < 1e-12);
}

TEST_CASE("adjacency of a Cayley graph") {
  const GroupPtr g = parse_group("dihedral:4");
  Rng rng(1);
  const GroupFunction h = GroupFunction::indicator(g, {1, g->inverse(1), 4});
  const RMatrix a = cayley_adjacency(h);
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.rowwise().sum().minCoeff() == doctest::Approx(3.0));
  CHECK(a.rowwise().sum().maxCoeff() == doctest::Approx(3.0));
}

TEST_CASE("errors") {
  RMatrix two_triangles = RMatrix::Zero(6, 6);
  for (int b : {0, 3})
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) two_triangles(b + i, b + j) = 1.0;
  CHECK_THROWS_AS(spectral_drawing(two_triangles), DisconnectedGraphError);
  CHECK_THROWS_AS(spectral_drawing(RMatrix::Ones(2, 2)), DomainError);
  RMatrix asym = RMatrix::Zero(3, 3);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(spectral_drawing(asym), NotHermitianError);
}

TEST_CASE("SVG output") {
  const GroupPtr g = build_group(Family::cyclic, 6);
  const Drawing d = spectral_drawing(cayley_adjacency(GroupFunction::indicator(g, {1, 5})));
  const std::string svg = drawing_svg(d, {{"d", 3}, {"seed", 1}});
  CHECK(svg.find("<!-- {") != std::string::npos);
  CHECK(svg.find("\"canvas\"") != std::string::npos);
  CHECK(svg.find("\"seed\":1") != std::string::npos);
  std::size_t circles = 0, lines = 0;
  for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
  for (std::size_t p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1)) ++lines;
  CHECK(circles == 6);
  CHECK(lines == 6);
  CHECK(svg == drawing_svg(d, {{"d", 3}, {"seed", 1}}));
}
