#include "doctest.h"
#include "oracles.hpp"

#include "cayley/bounded_basis.hpp"
#include "cayley/errors.hpp"
#include "cayley/expansion.hpp"

using namespace cayley;

namespace {

/// Column-by-column eigen residual and Gram residual computed against the dense operator.
std::pair<double, double> residuals(const BoundedBasisReport& r, const CMatrix& m) {
  const CMatrix b = r.basis();
  const auto n = b.cols();
  double eig = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const CVector col = b.col(j);
    const Complex lambda = col.dot(m * col);
    eig = std::max(eig, (m * col - lambda * col).norm());
  }
  const double gram = (b.adjoint() * b - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return {eig, gram};
}

double sup_constant(const BoundedBasisReport& r) {
  return std::sqrt(double(r.n)) * r.basis().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("coherence target") {
  CHECK(coherence_target(4, 10) == doctest::Approx(std::sqrt(2 * std::log(160.0) / 4)));
}

TEST_CASE("low-coherence basis meets its target") {
  Rng rng(1);
  std::normal_distribution<double> normal;
  RMatrix s(6, 40);
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    for (Eigen::Index i = 0; i < 6; ++i) s(i, j) = normal(rng);
    s.col(j).normalize();
  }
  const LowCoherenceBasis l = low_coherence_basis(s, rng);
  CHECK(l.checked);
  CHECK((l.basis.transpose() * l.basis - RMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(l.coherence <= l.epsilon_target);
  CHECK(l.coherence == doctest::Approx((l.basis.transpose() * s).cwiseAbs().maxCoeff()));

  const LowCoherenceBasis one = low_coherence_basis(RMatrix(RMatrix::Ones(1, 3)), rng);
  CHECK_FALSE(one.checked);
  CHECK(one.basis(0, 0) == 1.0);
  CHECK_THROWS_AS(low_coherence_basis(RMatrix(RMatrix::Constant(2, 1, 3.0)), rng), DomainError);
}

TEST_CASE("boundedness constant") {
  CHECK(boundedness_constant(RMatrix(RMatrix::Identity(4, 4))) == doctest::Approx(2.0));
  RMatrix bad = RMatrix::Identity(3, 3);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(boundedness_constant(bad), NotOrthonormalError);
}

TEST_CASE("abelian paths: characters give C = 1, cos/sin give C <= √2") {
  for (int n : {16, 30, 64}) {
    const GroupPtr g = build_group(Family::cyclic, n);
    Rng rng(n);
    const GroupFunction f = random_function(g, rng, true, true);
    const BoundedBasisReport u =
        bounded_eigenbasis_representation(f, shared_irreps(g), SeedTree(1), BasisMode::unitary);
    CHECK(u.constant == 1.0);
    const BoundedBasisReport r = bounded_eigenbasis_representation(f, shared_irreps(g), SeedTree(1));
    CHECK(r.real);
    CHECK(r.constant <= std::sqrt(2.0) + 1e-9);
    CHECK(sup_constant(r) == doctest::Approx(r.constant));
  }
}

TEST_CASE("every path yields an orthonormal eigenbasis spanning the same eigenspaces") {
  for (const char* d : {"q8", "symmetric:3", "symmetric:4", "dihedral:5", "dihedral:6", "cyclic:15"}) {
    CAPTURE(d);
    const GroupPtr g = parse_group(d);
    Rng rng(21);
    const GroupFunction f = random_function(g, rng, true, true);
    const ConvolutionOperator op = build_operator(f);
    const CMatrix m = op.as_complex();
    const BoundedBasisReport num = bounded_eigenbasis_numeric(op, SeedTree(2));
    const BoundedBasisReport rep = bounded_eigenbasis_representation(f, shared_irreps(g), SeedTree(2));
    const BoundedBasisReport uni =
        bounded_eigenbasis_representation(f, shared_irreps(g), SeedTree(2), BasisMode::unitary);
    for (const BoundedBasisReport* r : {&num, &rep, &uni}) {
      const auto [eig, gram] = residuals(*r, m);
      CHECK(eig < 1e-12);
      CHECK(gram < 1e-12);
      CHECK(r->gram_residual <= 1e-9);
      CHECK(r->max_eigen_residual <= 1e-8);
      CHECK(sup_constant(*r) == doctest::Approx(r->constant));
    }
    CHECK(span_difference(rep, num) < 1e-10);
    CHECK(span_difference(uni, num) < 1e-10);
  }
}

TEST_CASE("quaternion irrep takes the ω = -1 branch and stays real") {
  const GroupPtr g = parse_group("q8");
  const IrrepTablePtr t = shared_irreps(g);
  CHECK((*t)[t->index_of("quat")].frobenius_schur() == -1);
  Rng rng(4);
  const GroupFunction f = random_function(g, rng, true, true);
  const BoundedBasisReport rep = bounded_eigenbasis_representation(f, t, SeedTree(3));
  CHECK(rep.real);
  bool saw = false;
  for (const auto& c : rep.clusters) saw = saw || c.branch.find("omega-1") != std::string::npos;
  CHECK(saw);
  const CMatrix q = self_dual_intertwiner((*t)[t->index_of("quat")]);
  for (std::size_t x = 0; x < 8; ++x) {
    const auto rho = (*t)[t->index_of("quat")](x);
    CHECK((rho * q - q * rho.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK((q * q.conjugate() + CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a complex-valued real-type irrep takes the ω = +1 branch") {
  const GroupPtr g = parse_group("symmetric:4");
  IrrepTable table = irreps(g);
  const std::size_t idx = table.index_of("std");
  // conjugate by a fixed complex unitary so the matrices are no longer real
  CMatrix z(3, 3);
  z << Complex(1, 2), Complex(0, 1), Complex(-1, 0), Complex(2, -1), Complex(1, 1), Complex(0, -2), Complex(0, 0),
      Complex(1, -1), Complex(3, 1);
  Eigen::HouseholderQR<CMatrix> qr(z);
  const CMatrix u = qr.householderQ() * CMatrix::Identity(3, 3);
  std::vector<Complex> images;
  for (std::size_t x = 0; x < g->order(); ++x) {
    const CMatrix m = u * CMatrix(table[idx](x)) * u.adjoint();
    images.insert(images.end(), m.data(), m.data() + 9);
  }
  table.irreps[idx] = Irrep(*g, "std_twisted", 3, images);
  REQUIRE_FALSE(table.irreps[idx].is_real());
  REQUIRE(table.irreps[idx].frobenius_schur() == 1);
  const auto t = std::make_shared<const IrrepTable>(table);
  Rng rng(5);
  const GroupFunction f = random_function(g, rng, true, true);
  const BoundedBasisReport rep = bounded_eigenbasis_representation(f, t, SeedTree(4));
  const BoundedBasisReport num = bounded_eigenbasis_numeric(build_operator(f), SeedTree(4));
  CHECK(rep.real);
  CHECK(rep.gram_residual < 1e-12);
  CHECK(rep.max_eigen_residual < 1e-12);
  CHECK(span_difference(rep, num) < 1e-10);
  bool saw = false;
  for (const auto& c : rep.clusters) saw = saw || c.branch.find("omega+1") != std::string::npos;
  CHECK(saw);
}

TEST_CASE("non-transitive graphs are rejected by the walk-regular gate") {
  RMatrix path = RMatrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i) path(i, i + 1) = path(i + 1, i) = 1.0;
  CHECK_THROWS_AS(bounded_eigenbasis_numeric(operator_from_matrix(path), SeedTree(1)), NotTransitiveError);
}

TEST_CASE("the same seed gives the same basis") {
  const GroupPtr g = parse_group("symmetric:4");
  Rng rng(6);
  const GroupFunction f = random_function(g, rng, true, true);
  const auto a = bounded_eigenbasis_numeric(build_operator(f), SeedTree(99));
  const auto b = bounded_eigenbasis_numeric(build_operator(f), SeedTree(99));
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK((a.real_basis - b.real_basis).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("numeric path on sparse cycles with near-degenerate clusters") {
  // row norms inside a cluster agree only to the walk-regular tolerance
  const GroupPtr g = parse_group("cyclic:256");
  for (std::uint64_t s = 0; s < 12; ++s) {
    CAPTURE(s);
    Rng rng = SeedTree(20240611).child("c5:cyclic:256", s).child("graph").engine();
    const RandomCayleyMultigraph m = sample_multigraph(g, 3, rng);
    const ConvolutionOperator op = build_operator(m.f());
    const BoundedBasisReport r = bounded_eigenbasis_numeric(op, SeedTree(s));
    const auto [eig, gram] = residuals(r, op.as_complex());
    CHECK(gram <= 1e-9);
    CHECK(eig <= 1e-8);
    CHECK(sup_constant(r) == doctest::Approx(r.constant).epsilon(1e-12));
  }
}
