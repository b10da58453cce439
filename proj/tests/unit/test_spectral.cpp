#include "doctest.h"
#include "csv_check.hpp"
#include "oracles.hpp"

#include "cayley/errors.hpp"
#include "cayley/spectral.hpp"

using namespace cayley;

TEST_CASE("cycle spectrum is 2cos(2πj/n)/n") {
  const int n = 10;
  const GroupPtr g = parse_group("cyclic:10");
  const GroupFunction h = GroupFunction::indicator(g, {1, 9});
  const SpectralData sd = symmetric_eigendecomposition(build_operator(h));
  std::vector<double> expected;
  for (int j = 0; j < n; ++j) expected.push_back(2 * std::cos(2 * oracle::pi() * j / n) / n);
  std::sort(expected.rbegin(), expected.rend());
  for (int j = 0; j < n; ++j) CHECK(sd.eigenvalues(j) == doctest::Approx(expected[std::size_t(j)]).epsilon(1e-12));
  // 1 simple top, then pairs, then simple bottom
  REQUIRE(sd.clusters.size() == 6);
  CHECK(sd.clusters.front().multiplicity == 1);
  CHECK(sd.clusters[1].multiplicity == 2);
  CHECK(sd.clusters.back().multiplicity == 1);
}

TEST_CASE("dense and Fourier spectra agree") {
  for (const char* d : {"q8", "symmetric:4", "dihedral:10", "cyclic:20"}) {
    CAPTURE(d);
    const GroupPtr g = parse_group(d);
    Rng rng(5);
    const GroupFunction f = random_function(g, rng, true, false);
    const SpectralData sd = symmetric_eigendecomposition(build_operator(f));
    const RVector via = expand_spectrum(spectrum_via_fourier(f));
    CHECK((via - sd.eigenvalues).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("eigenvectors and projectors") {
  const GroupPtr g = parse_group("symmetric:4");
  Rng rng(6);
  const GroupFunction f = random_function(g, rng, true, true);
  const ConvolutionOperator op = build_operator(f);
  REQUIRE(op.real);
  const SpectralData sd = symmetric_eigendecomposition(op);
  const RMatrix& m = op.real_matrix;
  CHECK((m * sd.real_vectors - sd.real_vectors * sd.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((sd.real_vectors.transpose() * sd.real_vectors - RMatrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-13);
  CMatrix sum = CMatrix::Zero(24, 24);
  for (std::size_t c = 0; c < sd.clusters.size(); ++c) sum += sd.projector(c);
  CHECK((sum - CMatrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-12);
  // each S4 eigenvalue has multiplicity d_ρ
  for (const auto& c : sd.clusters) CHECK((c.multiplicity == 1 || c.multiplicity == 2 || c.multiplicity == 3));
}

TEST_CASE("clustering") {
  RVector v(5);
  v << 3.0, 3.0 + 1e-12, 2.0, 1.0, 1.0;
  std::sort(v.data(), v.data() + 5, std::greater<>());
  const auto c = cluster_descending(v, 1e-9);
  REQUIRE(c.size() == 3);
  CHECK(c[0].multiplicity == 2);
  CHECK(c[2].begin == 3);
  CHECK(c[2].value == 1.0);
}

TEST_CASE("CSV and JSON exports") {
  const GroupPtr g = parse_group("cyclic:4");
  const SpectralData sd = symmetric_eigendecomposition(build_operator(GroupFunction::indicator(g, {1, 3})));
  check_cycle_csv(sd.to_csv());
  const auto j = sd.to_json(true);
  CHECK(j["clusters"].size() == 3);
  CHECK(j["clusters"][1].contains("basis_real"));
  CHECK_FALSE(sd.to_json(false)["clusters"][1].contains("basis_real"));
}

TEST_CASE("subgroup blocks reproduce the dense spectrum") {
  for (const char* d : {"hyperoctahedral:2", "hyperoctahedral:3"}) {
    const GroupPtr g = parse_group(d);
    Rng rng(9);
    const GroupFunction f = random_function(g, rng, true, true);
    const RVector dense = symmetric_eigendecomposition(build_operator(f), {-1.0, false}).eigenvalues;
    CHECK((reduced_spectrum(f, sign_subgroup(*g)) - dense).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((reduced_spectrum(f, trivial_subgroup(*g)) - dense).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("V_{ρ,v} functions are eigenvectors") {
  const GroupPtr g = parse_group("symmetric:4");
  const IrrepTablePtr t = shared_irreps(g);
  Rng rng(10);
  const GroupFunction f = random_function(g, rng, true, false);
  const FourierCoefficients c = fourier_transform(f, t);
  const ConvolutionOperator op = build_operator(f);
  for (std::size_t r = 0; r < t->size(); ++r) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(c[r]);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const EigenspaceDescriptor e = eigenspace_from_irrep((*t)[r], c[r], es.eigenvectors().col(k));
      REQUIRE(e.eigenvalue.has_value());
      CHECK(*e.eigenvalue == doctest::Approx(es.eigenvalues()(k)).epsilon(1e-12));
      for (Eigen::Index w = 0; w < e.functions.cols(); ++w) {
        const CVector x = e.functions.col(w);
        CHECK((op.apply(x) - *e.eigenvalue * x).norm() < 1e-12 * std::max(1.0, x.norm()));
      }
    }
  }
  CHECK_THROWS_AS(eigenspace_from_irrep((*t)[0], CVector::Zero(1)), DomainError);
}

TEST_CASE("non-Hermitian input is rejected") {
  const GroupPtr g = parse_group("cyclic:5");
  CHECK_THROWS_AS(build_operator(GroupFunction::indicator(g, {1})), NotHermitianError);
  RMatrix m = RMatrix::Zero(3, 3);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(symmetric_eigendecomposition(operator_from_matrix(m)), NotHermitianError);
}
