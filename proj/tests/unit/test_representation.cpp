#include "doctest.h"
#include "oracles.hpp"

#include "cayley/errors.hpp"
#include "cayley/representation.hpp"

using namespace cayley;

namespace {

double homomorphism_error(const FiniteGroup& g, const Irrep& rho) {
  double worst = 0.0;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      worst = std::max(worst, (rho(a) * rho(b) - rho(g.multiply(a, b))).cwiseAbs().maxCoeff());
  return worst;
}

double unitarity_error(const FiniteGroup& g, const Irrep& rho) {
  double worst = 0.0;
  const auto d = static_cast<Eigen::Index>(rho.dimension());
  for (std::size_t a = 0; a < g.order(); ++a)
    worst = std::max(worst, (rho(a) * rho(a).adjoint() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST_CASE("every tabulated irrep is a unitary irreducible homomorphism") {
  for (const char* d : {"cyclic:6", "dihedral:4", "dihedral:5", "q8", "symmetric:3", "symmetric:4",
                        "hyperoctahedral:2", "hyperoctahedral:3", "symmetric:5"}) {
    CAPTURE(d);
    const GroupPtr g = parse_group(d);
    const IrrepTable t = irreps(g);
    for (const Irrep& rho : t.irreps) {
      CAPTURE(rho.id());
      CHECK(homomorphism_error(*g, rho) < 1e-12);
      CHECK(unitarity_error(*g, rho) < 1e-12);
      CHECK(irreducibility_witness(rho) == doctest::Approx(double(g->order())).epsilon(1e-10));
    }
  }
}

TEST_CASE("complete tables satisfy the sum of squares and class count") {
  for (const char* d : {"cyclic:20", "dihedral:4", "dihedral:10", "q8", "symmetric:3", "symmetric:4"}) {
    CAPTURE(d);
    const GroupPtr g = parse_group(d);
    const IrrepTable t = irreps(g);
    REQUIRE(t.complete);
    std::size_t sum = 0;
    for (const Irrep& rho : t.irreps) sum += rho.dimension() * rho.dimension();
    CHECK(sum == g->order());
    CHECK(t.size() == oracle::class_count(*g));
  }
}

TEST_CASE("distinct irreps have orthogonal characters") {
  const GroupPtr g = parse_group("symmetric:4");
  const IrrepTable t = irreps(g);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      Complex s = 0.0;
      for (std::size_t x = 0; x < g->order(); ++x) s += std::conj(t[i].character(x)) * t[j].character(x);
      CHECK(std::abs(s / double(g->order()) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("Frobenius-Schur indicators") {
  const IrrepTable q = irreps(parse_group("q8"));
  CHECK(q[q.index_of("quat")].frobenius_schur() == -1);
  CHECK(q[q.index_of("chi_i")].frobenius_schur() == 1);
  const IrrepTable c = irreps(parse_group("cyclic:5"));
  CHECK(c[0].frobenius_schur() == 1);
  for (std::size_t j = 1; j < 5; ++j) CHECK(c[j].frobenius_schur() == 0);
  CHECK(c.conjugate_of(1) == 4);
  const IrrepTable s = irreps(parse_group("symmetric:4"));
  for (const Irrep& rho : s.irreps) CHECK(rho.frobenius_schur() == 1);
}

TEST_CASE("hyperoctahedral std is the signed-permutation action") {
  const GroupPtr g = parse_group("hyperoctahedral:3");
  const IrrepTable t = irreps(g);
  CHECK_FALSE(t.complete);
  const Irrep& rho = t[t.index_of("std")];
  for (std::size_t x = 0; x < g->order(); ++x)
    CHECK((rho(x).real() - oracle::signed_perm_matrix(*g, x)).norm() == 0.0);
}

TEST_CASE("partial tables are flagged") {
  CHECK_FALSE(irreps(parse_group("symmetric:5")).complete);
  CHECK_THROWS_AS(full_irreps(parse_group("hyperoctahedral:3")), PartialTableError);
  CHECK_THROWS_AS(irreps(parse_group("q8")).index_of("missing"), StructuralError);
}
