#include "doctest.h"
#include "oracles.hpp"

#include "cayley/errors.hpp"
#include "cayley/fourier.hpp"

using namespace cayley;

TEST_CASE("cyclic transform matches a plain DFT") {
  const GroupPtr g = parse_group("cyclic:12");
  Rng rng(3);
  const GroupFunction f = random_function(g, rng, false, false);
  const FourierCoefficients c = fourier_transform(f, shared_irreps(g));
  const std::vector<Complex> dft = oracle::cyclic_dft(f.values());
  for (std::size_t j = 0; j < 12; ++j) CHECK(std::abs(c[j](0, 0) - dft[j]) < 1e-14);
}

TEST_CASE("Parseval, inversion and the convolution theorem") {
  for (const char* d : {"cyclic:5", "dihedral:4", "q8", "symmetric:3", "symmetric:4"}) {
    CAPTURE(d);
    const GroupPtr g = parse_group(d);
    const IrrepTablePtr t = shared_irreps(g);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupFunction f1 = random_function(g, rng, false, false);
      const GroupFunction f2 = random_function(g, rng, false, false);
      const FourierCoefficients c1 = fourier_transform(f1, t), c2 = fourier_transform(f2, t);

      double energy = 0.0;
      for (std::size_t r = 0; r < t->size(); ++r) energy += double((*t)[r].dimension()) * c1[r].squaredNorm();
      double direct = 0.0;
      for (const Complex& z : f1.values()) direct += std::norm(z);
      CHECK(energy == doctest::Approx(direct / double(g->order())).epsilon(1e-12));

      const GroupFunction back = inverse_fourier(c1);
      for (std::size_t x = 0; x < g->order(); ++x) CHECK(std::abs(back[x] - f1[x]) < 1e-12);

      const FourierCoefficients c12 = fourier_transform(convolve(f1, f2), t);
      for (std::size_t r = 0; r < t->size(); ++r) CHECK((c12[r] - c1[r] * c2[r]).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("convolution matrix applies the convolution") {
  const GroupPtr g = parse_group("dihedral:5");
  Rng rng(4);
  const GroupFunction f = random_function(g, rng, false, false);
  const GroupFunction x = random_function(g, rng, false, false);
  const CVector via_matrix = convolution_matrix(f) * x.as_vector();
  const GroupFunction fx = convolve(f, x);
  for (std::size_t i = 0; i < g->order(); ++i) CHECK(std::abs(via_matrix(Eigen::Index(i)) - fx[i]) < 1e-14);
}

TEST_CASE("norms") {
  const GroupPtr g = parse_group("symmetric:4");
  const GroupFunction delta = GroupFunction::indicator(g, {0});
  CHECK(lp_norm(delta, 1.0) == doctest::Approx(1.0 / 24));
  CHECK(lp_norm(delta, 2.0) == doctest::Approx(std::sqrt(1.0 / 24)));
  CHECK(lp_norm(delta, kInfinity) == 1.0);
  // M_δ = I/|G|
  CHECK(schatten_norm(delta, kInfinity) == doctest::Approx(1.0 / 24));
  CHECK(schatten_norm(delta, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp_norm(delta, 0.5), DomainError);
  CHECK_THROWS_AS(schatten_norm(delta, 0.0), DomainError);
}

TEST_CASE("Schatten norms agree between the Fourier and dense routes") {
  for (const char* d : {"q8", "symmetric:4", "dihedral:10"}) {
    const GroupPtr g = parse_group(d);
    Rng rng(8);
    for (bool sym : {false, true}) {
      const GroupFunction f = random_function(g, rng, sym, !sym ? false : true);
      const FourierCoefficients c = fourier_transform(f, shared_irreps(g));
      for (double p : {1.0, 2.0, 3.5, kInfinity}) {
        CHECK(schatten_norm_fourier(c, p) == doctest::Approx(schatten_norm_dense(f, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("symmetric functions have Hermitian coefficients") {
  const GroupPtr g = parse_group("symmetric:4");
  Rng rng(2);
  const GroupFunction f = random_function(g, rng, true, false);
  CHECK(f.symmetry_defect() == 0.0);
  const FourierCoefficients c = fourier_transform(f, shared_irreps(g));
  for (const CMatrix& m : c.blocks) CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coefficient JSON layout") {
  const GroupPtr g = parse_group("q8");
  const FourierCoefficients c = fourier_transform(GroupFunction::indicator(g, {0}), shared_irreps(g));
  const auto j = c.to_json();
  REQUIRE(j.size() == 5);
  CHECK(j[4]["irrep_id"] == "quat");
  CHECK(j[4]["dim"] == 2);
  CHECK(j[4]["real_parts"].size() == 2);
  CHECK(j[4]["real_parts"][0][0].get<double>() == doctest::Approx(1.0 / 8));
}

TEST_CASE("errors") {
  const GroupPtr g = parse_group("cyclic:4");
  CHECK_THROWS_AS(GroupFunction(g, {1.0, 2.0, 3.0, 4.0}, true), DomainError);
  CHECK_THROWS_AS(GroupFunction(g, {1.0, 2.0}), StructuralError);
  const GroupPtr h = parse_group("hyperoctahedral:2");
  const FourierCoefficients c = fourier_transform(GroupFunction::indicator(h, {0}), shared_irreps(h));
  CHECK_THROWS_AS(inverse_fourier(c), PartialTableError);
  CHECK_THROWS_AS(convolve(GroupFunction::zero(g), GroupFunction::zero(parse_group("cyclic:5"))), StructuralError);
}
