#include "doctest.h"
#include "oracles.hpp"

#include "cayley/errors.hpp"
#include "cayley/expansion.hpp"

using namespace cayley;

TEST_CASE("Z4 with generator 1") {
  const GroupPtr g = parse_group("cyclic:4");
  const RandomCayleyMultigraph m = multigraph_from_generators(g, {1});
  const GroupFunction f = m.f();
  CHECK(f[0].real() == -0.5);
  CHECK(f[1].real() == 0.5);
  CHECK(f[2].real() == -0.5);
  CHECK(f[3].real() == 0.5);
  CHECK(edge_boundary(m, {0, 1}) == 2);
  CHECK(edge_boundary(m, {}) == 0);
  CHECK(edge_boundary(m, {0, 1, 2, 3}) == 0);
  const CutIdentity id = cut_identity_check(m, {0, 1});
  CHECK(id.lhs == doctest::Approx(0.0));
  CHECK(id.rhs == doctest::Approx(0.0));
  CHECK_THROWS_AS(cut_identity_check(m, {}), DomainError);
  CHECK_THROWS_AS(cut_identity_check(m, {0, 1, 2, 3}), DomainError);
}

TEST_CASE("identity generator gives self-loops") {
  const GroupPtr g = parse_group("cyclic:6");
  const RandomCayleyMultigraph m = multigraph_from_generators(g, {0});
  CHECK(m.multiplicity[0] == 2);
  CHECK(m.f()[0].real() == doctest::Approx(2.0 - 2.0 / 6));
  CHECK(edge_boundary(m, {0, 1, 2}) == 0);
  CHECK(m.adjacency().rowwise().sum().minCoeff() == 2.0);
}

TEST_CASE("sampled multigraphs are regular and centred") {
  for (const char* d : {"cyclic:20", "symmetric:4", "q8"}) {
    const GroupPtr g = parse_group(d);
    Rng rng(2);
    const RandomCayleyMultigraph m = sample_multigraph(g, 7, rng);
    CHECK(m.slots.size() == 14);
    const RMatrix a = m.adjacency();
    CHECK(a.rowwise().sum().minCoeff() == 14.0);
    CHECK(a.rowwise().sum().maxCoeff() == 14.0);
    int total = 0;
    for (int c : m.multiplicity) total += c;
    CHECK(total == 14);
    double mean = 0.0;
    const GroupFunction f = m.f();
    for (const Complex& z : f.values()) mean += z.real();
    CHECK(std::abs(mean) < 1e-12);
  }
}

TEST_CASE("edge boundary matches direct edge enumeration and the cut identity") {
  const GroupPtr g = parse_group("symmetric:4");
  Rng rng(3);
  const RandomCayleyMultigraph m = sample_multigraph(g, 5, rng);
  const auto edges = oracle::cayley_edges(*g, m.generators);
  std::bernoulli_distribution coin(0.4);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::size_t> x;
    std::vector<char> in(g->order(), 0);
    for (std::size_t i = 0; i < g->order(); ++i)
      if (coin(rng)) x.push_back(i), in[i] = 1;
    if (x.empty() || x.size() == g->order()) continue;
    const std::int64_t e = edge_boundary(m, x);
    CHECK(e == oracle::crossing_edges(edges, in));
    std::vector<std::size_t> complement;
    for (std::size_t i = 0; i < g->order(); ++i)
      if (!in[i]) complement.push_back(i);
    CHECK(edge_boundary(m, complement) == e);
    CHECK(cut_identity_check(m, x).residual <= 1e-8);
  }
}

TEST_CASE("exhaustive report agrees with direct enumeration") {
  const GroupPtr g = parse_group("dihedral:5");
  Rng rng(4);
  const RandomCayleyMultigraph m = sample_multigraph(g, 3, rng);
  const auto edges = oracle::cayley_edges(*g, m.generators);
  const ExpansionReport r = smallset_expansion_report(m, {}, rng);
  CHECK(r.boundary_mismatches == 0);
  CHECK(r.max_identity_residual <= 1e-8);

  // recompute per-size extremes from scratch
  const std::size_t n = g->order();
  std::vector<std::int64_t> lo(n + 1, INT64_MAX), hi(n + 1, INT64_MIN);
  std::vector<std::uint64_t> count(n + 1, 0);
  double worst = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<char> in(n);
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += (in[i] = (mask >> i) & 1);
    if (s < 2 || 2 * s > n) continue;
    const std::int64_t e = oracle::crossing_edges(edges, in);
    lo[s] = std::min(lo[s], e);
    hi[s] = std::max(hi[s], e);
    ++count[s];
    const double dev = std::abs(double(e) / (2.0 * m.k / n * s * (n - s)) - 1.0);
    worst = std::max(worst, dev / std::sqrt(std::log(double(s)) / m.k));
  }
  for (const SizeRecord& rec : r.per_size) {
    CAPTURE(rec.size);
    CHECK(rec.subsets == count[rec.size]);
    CHECK(rec.min_boundary == lo[rec.size]);
    CHECK(rec.max_boundary == hi[rec.size]);
  }
  CHECK(r.constant_estimate == doctest::Approx(worst).epsilon(1e-12));
  CHECK(r.worst_subset.size() >= 2);
}

TEST_CASE("sampled mode and limits") {
  const GroupPtr g = parse_group("cyclic:30");
  Rng rng(5);
  const RandomCayleyMultigraph m = sample_multigraph(g, 4, rng);
  CHECK_THROWS_AS(smallset_expansion_report(m, {}, rng), SizeLimitError);
  ExpansionOptions opts;
  opts.mode = EnumerationMode::sampled;
  opts.samples_per_size = 50;
  const ExpansionReport r = smallset_expansion_report(m, opts, rng);
  CHECK(r.subsets_evaluated == 50 * 14);
  CHECK(r.max_identity_residual <= 1e-8);
  CHECK(r.to_json()["mode"] == "sampled");
  CHECK(parse_enumeration_mode("exhaustive") == EnumerationMode::exhaustive);
  CHECK_THROWS_AS(parse_enumeration_mode("partial"), DomainError);
}

TEST_CASE("half-size subsets and their complements deviate equally") {
  const GroupPtr g = parse_group("cyclic:8");
  Rng rng(6);
  const RandomCayleyMultigraph m = sample_multigraph(g, 2, rng);
  const std::vector<std::size_t> x = {0, 2, 3, 7}, y = {1, 4, 5, 6};
  CHECK(edge_boundary(m, x) == edge_boundary(m, y));
}

TEST_CASE("Hausdorff-Young") {
  const GroupPtr g = parse_group("symmetric:4");
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const GroupFunction f = random_function(g, rng, t % 2 == 0, t % 3 != 0);
    CHECK(hausdorff_young_check(f, 1.0).slack >= -1e-10);
    CHECK(hausdorff_young_check(f, 1.3).slack >= -1e-10);
    CHECK(std::abs(hausdorff_young_check(f, 2.0).slack) <= 1e-10);
  }
  const GroupFunction delta = GroupFunction::indicator(g, {0});
  const NormComparison eq = hausdorff_young_check(delta, 1.0);
  CHECK(eq.lhs == doctest::Approx(1.0 / 24));
  CHECK(eq.rhs == doctest::Approx(1.0 / 24));
  CHECK_THROWS_AS(hausdorff_young_check(delta, 2.5), DomainError);
  CHECK_THROWS_AS(hausdorff_young_check(delta, 0.5), DomainError);
}

TEST_CASE("quadratic form bound") {
  for (const char* d : {"q8", "symmetric:4"}) {
    const GroupPtr g = parse_group(d);
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
      const GroupFunction f = random_function(g, rng, t % 2 == 0, false);
      const GroupFunction x = random_function(g, rng, false, false);
      for (double p : {1.0, 2.0, 4.0, 8.0, kInfinity}) CHECK(qform_schatten_check(f, x, p).slack >= -1e-10);
    }
    const GroupFunction zero = GroupFunction::zero(g);
    const NormComparison z = qform_schatten_check(random_function(g, rng, true), zero, 2.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    const GroupFunction delta = GroupFunction::indicator(g, {0});
    const GroupFunction x = random_function(g, rng, false, false);
    const NormComparison eq = qform_schatten_check(delta, x, kInfinity);
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-12));
  }
}

TEST_CASE("Schatten concentration statistic") {
  const GroupPtr g = parse_group("symmetric:4");
  const ConcentrationEstimate e = schatten_concentration_estimate(g, 8, 20, {2}, 10.0, SeedTree(1));
  // p = 2: ‖f‖_{S_2} = ‖f‖_{L²}, so the statistic is √(|G| E f²)/√(2k)
  for (int t = 0; t < 20; ++t) {
    Rng rng = SeedTree(1).child("trial", std::uint64_t(t)).engine();
    const RandomCayleyMultigraph m = sample_multigraph(g, 8, rng);
    double energy = 0.0;
    const GroupFunction f = m.f();
    for (const Complex& z : f.values()) energy += z.real() * z.real();
    const double expected = std::sqrt(energy) / std::sqrt(16.0);
    CHECK(e.statistics[std::size_t(t)] == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(e.median == doctest::Approx(oracle::median(e.statistics)));
  CHECK(e.fraction_below == 1.0);
  CHECK_THROWS_AS(schatten_concentration_estimate(g, 8, 0, {2}, 1.0, SeedTree(1)), DomainError);
}
