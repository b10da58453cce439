#include "cayley/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

std::vector<char> membership(std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<char> in(n, 0);
  for (std::size_t g : subset) {
    if (g >= n) throw StructuralError("subset element out of range");
    in[g] = 1;
  }
  return in;
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

struct Tally {
  const RandomCayleyMultigraph& graph;
  ExpansionReport& report;

  void record(std::size_t size, std::int64_t boundary, const std::vector<std::size_t>& members) {
    const double n = static_cast<double>(report.group_order);
    const double s = static_cast<double>(size);
    const double expected = 2.0 * graph.k / n * s * (n - s);
    const double deviation = std::abs(static_cast<double>(boundary) / expected - 1.0);
    const double normalized = deviation / std::sqrt(std::log(s) / graph.k);

    SizeRecord& rec = report.per_size[size - 2];
    if (rec.subsets == 0) {
      rec.min_boundary = rec.max_boundary = boundary;
    } else {
      rec.min_boundary = std::min(rec.min_boundary, boundary);
      rec.max_boundary = std::max(rec.max_boundary, boundary);
    }
    ++rec.subsets;
    rec.worst_deviation = std::max(rec.worst_deviation, deviation);
    rec.worst_normalized_deviation = std::max(rec.worst_normalized_deviation, normalized);
    ++report.subsets_evaluated;
    report.worst_deviation = std::max(report.worst_deviation, deviation);
    if (normalized > report.constant_estimate || report.worst_subset.empty()) {
      report.constant_estimate = std::max(report.constant_estimate, normalized);
      report.worst_subset = members;
    }
  }
};

}  // namespace

GroupFunction RandomCayleyMultigraph::f() const {
  const double centre = 2.0 * k / static_cast<double>(order());
  std::vector<double> values(order());
  for (std::size_t g = 0; g < order(); ++g) values[g] = multiplicity[g] - centre;
  return GroupFunction::from_real(group, values, true);
}

RMatrix RandomCayleyMultigraph::adjacency() const {
  const FiniteGroup& G = *group;
  const auto n = static_cast<Eigen::Index>(order());
  RMatrix a(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    const std::size_t yinv = G.inverse(static_cast<std::size_t>(y));
    for (Eigen::Index x = 0; x < n; ++x) a(x, y) = multiplicity[G.multiply(static_cast<std::size_t>(x), yinv)];
  }
  return a;
}

nlohmann::json RandomCayleyMultigraph::to_json() const {
  nlohmann::json labels = nlohmann::json::array();
  for (std::size_t g : generators) labels.push_back(group->label(g));
  return {{"group", group->descriptor()}, {"k", k}, {"degree", degree()}, {"generators", generators},
          {"generator_labels", labels}};
}

RandomCayleyMultigraph multigraph_from_generators(const GroupPtr& group, std::vector<std::size_t> generators) {
  if (generators.empty()) throw DomainError("multigraph needs k >= 1 generators");
  RandomCayleyMultigraph out;
  out.group = group;
  out.k = static_cast<int>(generators.size());
  out.multiplicity.assign(group->order(), 0);
  for (std::size_t g : generators) {
    if (g >= group->order()) throw StructuralError("generator index out of range");
    out.slots.push_back(g);
    out.slots.push_back(group->inverse(g));
    ++out.multiplicity[g];
    ++out.multiplicity[group->inverse(g)];
  }
  out.generators = std::move(generators);
  return out;
}

RandomCayleyMultigraph sample_multigraph(const GroupPtr& group, int k, Rng& rng) {
  if (k < 1) throw DomainError("multigraph needs k >= 1 generators");
  std::uniform_int_distribution<std::size_t> pick(0, group->order() - 1);
  std::vector<std::size_t> generators(static_cast<std::size_t>(k));
  for (auto& g : generators) g = pick(rng);
  return multigraph_from_generators(group, std::move(generators));
}

std::int64_t edge_boundary(const RandomCayleyMultigraph& graph, const std::vector<std::size_t>& subset) {
  const FiniteGroup& G = *graph.group;
  const std::vector<char> in = membership(graph.order(), subset);
  std::int64_t count = 0;
  for (std::size_t x = 0; x < in.size(); ++x) {
    if (!in[x]) continue;
    for (std::size_t s : graph.slots) count += in[G.multiply(s, x)] ? 0 : 1;
  }
  return count;
}

CutIdentity cut_identity_check(const RandomCayleyMultigraph& graph, const std::vector<std::size_t>& subset) {
  const std::size_t n = graph.order();
  const std::vector<char> in = membership(n, subset);
  const auto size = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
  if (size == 0 || size == n) throw DomainError("cut identity needs a nonempty proper subset");

  std::vector<double> xv(n);
  for (std::size_t g = 0; g < n; ++g) xv[g] = in[g] ? static_cast<double>(n - size) : -static_cast<double>(size);
  const GroupFunction x = GroupFunction::from_real(graph.group, xv);
  const GroupFunction fx = convolve(graph.f(), x);

  CutIdentity out;
  out.boundary = edge_boundary(graph, subset);
  out.lhs = inner_product(x, fx).real();
  out.rhs = 2.0 * graph.k / static_cast<double>(n) * static_cast<double>(size) * static_cast<double>(n - size) -
            static_cast<double>(out.boundary);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

NormComparison hausdorff_young_check(const GroupFunction& f, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("Hausdorff-Young needs 1 <= p <= 2");
  const double q = p == 1.0 ? kInfinity : p / (p - 1.0);
  NormComparison out;
  out.lhs = schatten_norm(f, q);
  out.rhs = lp_norm(f, p);
  out.slack = out.rhs - out.lhs;
  return out;
}

NormComparison qform_schatten_check(const GroupFunction& f, const GroupFunction& x, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten exponent must be >= 1");
  const double r = std::isinf(p) ? 2.0 : 2.0 * p / (p + 1.0);
  const double xr = lp_norm(x, r);
  NormComparison out;
  out.lhs = std::abs(inner_product(x, convolve(f, x)));
  out.rhs = schatten_norm(f, p) * xr * xr;
  out.slack = out.rhs - out.lhs;
  return out;
}

nlohmann::json ConcentrationEstimate::to_json() const {
  return {{"k", k},           {"p_range", p_range},     {"trials", statistics.size()},
          {"median", median}, {"threshold", threshold}, {"fraction_below", fraction_below},
          {"statistics", statistics}};
}

ConcentrationEstimate schatten_concentration_estimate(const GroupPtr& group, int k, int trials,
                                                      const std::vector<int>& p_range, double threshold,
                                                      const SeedTree& seeds) {
  if (trials < 1) throw DomainError("concentration estimate needs trials >= 1");
  if (p_range.empty()) throw DomainError("concentration estimate needs a nonempty p range");
  for (int p : p_range)
    if (p < 1) throw DomainError("Schatten exponent must be >= 1");

  ConcentrationEstimate out;
  out.k = k;
  out.p_range = p_range;
  out.threshold = threshold;
  const double n = static_cast<double>(group->order());
  int below = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = seeds.child("trial", static_cast<std::uint64_t>(t)).engine();
    const RVector sv = singular_values(sample_multigraph(group, k, rng).f());
    double stat = 0.0;
    for (int p : p_range) {
      const double value = lp_of(sv, p) * std::pow(n, 1.0 - 1.0 / p) / std::sqrt(static_cast<double>(p) * k);
      stat = std::max(stat, value);
    }
    out.statistics.push_back(stat);
    below += stat <= threshold ? 1 : 0;
  }
  out.median = median_of(out.statistics);
  out.fraction_below = static_cast<double>(below) / trials;
  return out;
}

EnumerationMode parse_enumeration_mode(const std::string& text) {
  if (text == "exhaustive") return EnumerationMode::exhaustive;
  if (text == "sampled") return EnumerationMode::sampled;
  throw DomainError("unknown enumeration mode '" + text + "' (expected exhaustive or sampled)");
}

std::string to_string(EnumerationMode mode) {
  return mode == EnumerationMode::exhaustive ? "exhaustive" : "sampled";
}

nlohmann::json ExpansionReport::to_json() const {
  nlohmann::json sizes = nlohmann::json::array();
  for (const SizeRecord& r : per_size) {
    sizes.push_back({{"size", r.size},
                     {"subsets", r.subsets},
                     {"min_boundary", r.min_boundary},
                     {"max_boundary", r.max_boundary},
                     {"worst_deviation", r.worst_deviation},
                     {"worst_normalized_deviation", r.worst_normalized_deviation}});
  }
  return {{"mode", to_string(mode)},
          {"group_order", group_order},
          {"k", k},
          {"generators", generators},
          {"subsets_evaluated", subsets_evaluated},
          {"per_size", sizes},
          {"worst_deviation", worst_deviation},
          {"constant_estimate", constant_estimate},
          {"worst_subset", worst_subset},
          {"max_identity_residual", max_identity_residual},
          {"boundary_mismatches", boundary_mismatches}};
}

ExpansionReport smallset_expansion_report(const RandomCayleyMultigraph& graph, const ExpansionOptions& options,
                                          Rng& rng) {
  const FiniteGroup& G = *graph.group;
  const std::size_t n = graph.order();
  ExpansionReport report;
  report.mode = options.mode;
  report.group_order = n;
  report.k = graph.k;
  report.generators = graph.generators;
  for (std::size_t s = 2; s <= n / 2; ++s) report.per_size.push_back(SizeRecord{s});
  Tally tally{graph, report};

  if (options.mode == EnumerationMode::sampled) {
    std::vector<std::size_t> perm(n);
    for (std::size_t s = 2; s <= n / 2; ++s) {
      for (std::uint64_t t = 0; t < options.samples_per_size; ++t) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = 0; i < s; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, n - 1);
          std::swap(perm[i], perm[pick(rng)]);
        }
        std::vector<std::size_t> members(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
        std::sort(members.begin(), members.end());
        std::int64_t boundary;
        if (options.check_identity) {
          const CutIdentity id = cut_identity_check(graph, members);
          report.max_identity_residual = std::max(report.max_identity_residual, id.residual);
          boundary = id.boundary;
        } else {
          boundary = edge_boundary(graph, members);
        }
        tally.record(s, boundary, members);
      }
    }
    return report;
  }

  if (n > kExhaustiveLimit) {
    throw SizeLimitError("exhaustive enumeration needs |G| <= " + std::to_string(kExhaustiveLimit) + ", got " +
                         std::to_string(n));
  }
  const std::int64_t two_k = 2 * graph.k;
  const std::int64_t self_loops = graph.multiplicity[G.identity()];
  // left[s][v] = s·v
  std::vector<std::vector<std::size_t>> left(graph.slots.size(), std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < graph.slots.size(); ++i)
    for (std::size_t v = 0; v < n; ++v) left[i][v] = G.multiply(graph.slots[i], v);

  RMatrix fm(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const GroupFunction f = graph.f();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      fm(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(h)) = f[G.multiply(g, G.inverse(h))].real();

  std::vector<char> in(n, 0);
  std::vector<std::int64_t> arcs(n, 0);  // arcs[v] = #{slots s : s·v ∈ X}
  std::int64_t boundary = 0;
  std::int64_t inside = 0;  // ordered pairs (v, s) with v, s·v ∈ X
  std::size_t size = 0;
  std::vector<std::size_t> members;
  RVector x(static_cast<Eigen::Index>(n));

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto v = static_cast<std::size_t>(std::countr_zero(step));
    if (!in[v]) {
      boundary += (two_k - self_loops) - 2 * arcs[v];
      inside += 2 * arcs[v] + self_loops;
      in[v] = 1;
      ++size;
      for (const auto& row : left) ++arcs[row[v]];
    } else {
      for (const auto& row : left) --arcs[row[v]];
      in[v] = 0;
      --size;
      boundary -= (two_k - self_loops) - 2 * arcs[v];
      inside -= 2 * arcs[v] + self_loops;
    }
    if (size < 2 || 2 * size > n) continue;

    const auto sz = static_cast<std::int64_t>(size);
    if (two_k * sz != inside + boundary) ++report.boundary_mismatches;
    members.clear();
    for (std::size_t g = 0; g < n; ++g)
      if (in[g]) members.push_back(g);
    if (options.check_identity) {
      std::int64_t direct = 0;
      for (std::size_t g : members)
        for (const auto& row : left) direct += in[row[g]] ? 0 : 1;
      if (direct != boundary) ++report.boundary_mismatches;
      for (std::size_t g = 0; g < n; ++g)
        x(static_cast<Eigen::Index>(g)) = in[g] ? static_cast<double>(n - size) : -static_cast<double>(size);
      const double lhs = x.dot(fm * x) / static_cast<double>(n * n);
      const double rhs = static_cast<double>(two_k) / static_cast<double>(n) * static_cast<double>(size) *
                             static_cast<double>(n - size) -
                         static_cast<double>(boundary);
      report.max_identity_residual = std::max(report.max_identity_residual, std::abs(lhs - rhs));
    }
    tally.record(size, boundary, members);
  }
  return report;
}

}  // namespace cayley
