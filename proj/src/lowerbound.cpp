#include "cayley/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cayley/errors.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

namespace {

constexpr double kIntervalSlack = 1e-10;
constexpr double kClusterGap = 1e-9;

RMatrix fourier_block(const GroupFunction& f, const Irrep& rho) {
  const auto d = static_cast<Eigen::Index>(rho.dimension());
  RMatrix acc = RMatrix::Zero(d, d);
  for (std::size_t g = 0; g < f.size(); ++g) {
    if (f[g].real() != 0.0) acc += f[g].real() * RMatrix(rho(g).real());
  }
  acc /= static_cast<double>(f.size());
  return 0.5 * (acc + acc.transpose());
}

RVector sorted_abs_desc(const RVector& v) {
  RVector out = v.cwiseAbs();
  std::sort(out.data(), out.data() + out.size(), std::greater<>());
  return out;
}

int score(const SampleOutcome& s) {
  if (s.kind == SampleKind::drawing) {
    return int(s.top_simple) + int(s.second_from_rho) + int(s.second_multiplicity == s.d);
  }
  return int(s.interval_ok) + int(s.hhat_interval_ok) + int(s.ab_ok);
}

nlohmann::json vector_json(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

RVector staircase_vector(int d) {
  if (d < 1) throw DomainError("staircase_vector: d must be >= 1");
  RVector a(d);
  for (int j = 0; j < d; ++j) a(j) = 1.0 / std::sqrt(static_cast<double>(j + 1));
  return a / a.norm();
}

GroupFunction construction_f(const GroupPtr& group, const RVector& a) {
  if (group->family() != Family::hyperoctahedral) {
    throw StructuralError("construction_f: group " + group->descriptor() + " is not hyperoctahedral");
  }
  if (a.size() != group->parameter()) {
    throw StructuralError("construction_f: vector of dimension " + std::to_string(a.size()) +
                          " for hyperoctahedral:" + std::to_string(group->parameter()));
  }
  const std::size_t n = group->order();
  std::vector<double> values(n);
  for (std::size_t g = 0; g < n; ++g) {
    const std::size_t gi = group->inverse(g);
    if (gi < g) {
      values[g] = values[gi];
      continue;
    }
    const auto& e = std::get<SignedPermutation>(group->payload(g));
    // aᵀ D_ε P_σ a = Σ_j a_{σ(j)} ε_{σ(j)} a_j
    double q = 0.0;
    for (std::size_t j = 0; j < e.images.size(); ++j) {
      const auto t = static_cast<std::size_t>(e.images[j]);
      q += a(static_cast<Eigen::Index>(t)) * e.signs[t] * a(static_cast<Eigen::Index>(j));
    }
    values[g] = std::clamp((1.0 - q) / 2.0, 0.0, 1.0);
  }
  values[group->identity()] = 0.0;
  return GroupFunction::from_real(group, values, true);
}

InvolutionClasses involution_classes(const FiniteGroup& group) {
  InvolutionClasses out;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const std::size_t gi = group.inverse(g);
    if (gi == g) out.self_inverse.push_back(g);
    else if (g < gi) out.pair_representatives.push_back(g);
  }
  return out;
}

GroupFunction sample_graph(const GroupFunction& f, Rng& rng) {
  const FiniteGroup& G = f.group_ref();
  std::vector<double> h(G.order(), 0.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // one uniform per class, in element order, so the stream layout is fixed
  for (std::size_t g = 0; g < G.order(); ++g) {
    const std::size_t gi = G.inverse(g);
    if (gi < g) continue;
    const double p = f[g].real();
    if (p < 0.0 || p > 1.0) throw DomainError("sample_graph: f(g) outside [0, 1]");
    const double u = unif(rng);
    if (u < p) h[g] = h[gi] = 1.0;
  }
  return GroupFunction::from_real(f.group(), h, true);
}

GroupFunction sample_drawing_graph(const GroupFunction& f, double c, Rng& rng) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("sample_drawing_graph: sparsify constant must lie in [0, 1]");
  const FiniteGroup& G = f.group_ref();
  std::vector<double> h(G.order(), 0.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t g = 0; g < G.order(); ++g) {
    const std::size_t gi = G.inverse(g);
    if (gi < g || g == G.identity()) continue;
    const double u = unif(rng);
    if (u < c * (1.0 - f[g].real())) h[g] = h[gi] = 1.0;
  }
  return GroupFunction::from_real(f.group(), h, true);
}

double signed_perm_sup(const RVector& v, const RVector& b) {
  if (v.size() != b.size()) throw StructuralError("signed_perm_sup: dimension mismatch");
  return sorted_abs_desc(v).dot(sorted_abs_desc(b));
}

WorstRatio worst_ratio(const RVector& b) {
  if (b.size() == 0 || !(b.norm() > 0.0)) throw DomainError("worst_ratio: zero vector");
  const RVector s = sorted_abs_desc(b);
  const double sqrt_d = std::sqrt(static_cast<double>(b.size()));
  WorstRatio out;
  out.value = kInfinity;
  double partial = 0.0;
  for (Eigen::Index k = 1; k <= s.size(); ++k) {
    partial += s(k - 1);
    const double r = sqrt_d * partial / std::sqrt(static_cast<double>(k));
    if (r < out.value) {
      out.value = r;
      out.argmin_k = static_cast<int>(k);
    }
  }
  return out;
}

nlohmann::json SampleOutcome::to_json() const {
  std::vector<std::size_t> generators;
  if (h) {
    for (std::size_t g = 0; g < h->size(); ++g)
      if ((*h)[g].real() != 0.0) generators.push_back(g);
  }
  return {{"kind", kind == SampleKind::drawing ? "drawing" : "proposition"},
          {"d", d},
          {"group_order", group_order},
          {"generators", generators},
          {"mh_in_interval", mh_in_interval},
          {"hhat_in_interval", hhat_in_interval},
          {"hhat_spectrum", vector_json(hhat_spectrum)},
          {"lambda", lambda},
          {"b", vector_json(b)},
          {"b_residual", b_residual},
          {"a_minus_b", a_minus_b},
          {"mh_deviation", mh_deviation},
          {"hhat_deviation", hhat_deviation},
          {"thresholds", {{"norm1", norm1_threshold}, {"norm2", norm2_threshold}, {"a_minus_b", ab_threshold}}},
          {"verdicts",
           {{"interval", interval_ok},
            {"hhat_interval", hhat_interval_ok},
            {"a_minus_b", ab_ok},
            {"norm1", norm1_ok},
            {"norm2", norm2_ok},
            {"proposition_valid", proposition_valid},
            {"top_simple", top_simple},
            {"second_multiplicity", second_multiplicity},
            {"second_from_rho", second_from_rho},
            {"drawing_valid", drawing_valid}}},
          {"worst_ratio", ratio.value},
          {"worst_ratio_k", ratio.argmin_k},
          {"attempts", attempts},
          {"valid", valid}};
}

SampleOutcome validate_sample(const GroupFunction& h, const GroupFunction& f, const Irrep& rho, const RVector& a,
                              SampleKind kind) {
  const FiniteGroup& G = h.group_ref();
  const auto d = static_cast<int>(rho.dimension());
  if (a.size() != d) throw StructuralError("validate_sample: a has the wrong dimension");
  if (rho.group_order() != G.order() || f.size() != G.order()) {
    throw StructuralError("validate_sample: inputs live on different groups");
  }
  SampleOutcome out;
  out.h = h;
  out.kind = kind;
  out.d = d;
  out.group_order = G.order();
  const double n = static_cast<double>(G.order());
  const double lo = -1.0 / d - kIntervalSlack;
  const double hi = -1.0 / (3.0 * d) + kIntervalSlack;
  auto in_interval = [&](double x) { return x >= lo && x <= hi; };

  const AbelianSubgroup sub = default_subgroup(G);
  out.mh_spectrum = reduced_spectrum(h, sub);
  for (Eigen::Index i = 0; i < out.mh_spectrum.size(); ++i) out.mh_in_interval += in_interval(out.mh_spectrum(i));

  std::vector<double> diff(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) diff[g] = h[g].real() - f[g].real();
  out.mh_deviation = reduced_spectrum(GroupFunction::from_real(h.group(), diff, true), sub).cwiseAbs().maxCoeff();

  const RMatrix hhat = fourier_block(h, rho);
  const RMatrix fhat = fourier_block(f, rho);
  out.hhat_deviation = symmetric_operator_norm(hhat - fhat);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(hhat);
  out.hhat_spectrum = es.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < d; ++i) out.hhat_in_interval += in_interval(out.hhat_spectrum(i));

  Eigen::Index pick = d - 1;  // es is ascending, so this is the top eigenvector
  if (kind == SampleKind::proposition) {
    double best = kInfinity;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double dist = std::abs(es.eigenvalues()(i) + 1.0 / (2.0 * d));
      if (dist < best) {
        best = dist;
        pick = i;
      }
    }
  }
  out.lambda = es.eigenvalues()(pick);
  out.b = es.eigenvectors().col(pick);
  if (out.b.dot(a) < 0.0) out.b = -out.b;
  out.b_residual = (hhat * out.b - out.lambda * out.b).norm();
  out.a_minus_b = (a - out.b).norm();

  out.norm1_threshold = 4.0 * std::sqrt(std::log(6.0 * n) / n);
  out.norm2_threshold = 4.0 * std::sqrt(std::log(6.0 * d) / n);
  out.ab_threshold = 16.0 * std::sqrt(2.0) * d * std::sqrt(std::log(6.0 * d) / n);
  out.interval_ok = out.mh_in_interval == d;
  out.hhat_interval_ok = out.hhat_in_interval == 1;
  out.ab_ok = out.a_minus_b <= out.ab_threshold;
  out.norm1_ok = out.mh_deviation <= out.norm1_threshold;
  out.norm2_ok = out.hhat_deviation <= out.norm2_threshold;
  out.proposition_valid = out.interval_ok && out.hhat_interval_ok && out.ab_ok;

  const auto clusters = cluster_descending(out.mh_spectrum, kClusterGap);
  out.top_simple = !clusters.empty() && clusters[0].multiplicity == 1;
  if (clusters.size() >= 2) {
    out.second_multiplicity = static_cast<int>(clusters[1].multiplicity);
    out.second_from_rho = std::abs(clusters[1].value - out.hhat_spectrum(0)) <= kClusterGap;
  }
  out.drawing_valid = out.top_simple && out.second_multiplicity == d && out.second_from_rho;

  out.ratio = worst_ratio(out.b);
  out.valid = kind == SampleKind::drawing ? out.drawing_valid : out.proposition_valid;
  return out;
}

SampleOutcome resample_until_valid(const GroupFunction& f, const Irrep& rho, const RVector& a, const SeedTree& seeds,
                                   const ResampleOptions& options) {
  if (options.max_attempts < 1) throw DomainError("resample_until_valid: max_attempts must be >= 1");
  std::optional<SampleOutcome> best;
  int best_score = -1;
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Rng rng = seeds.child("attempt", static_cast<std::uint64_t>(attempt)).engine();
    const GroupFunction h = options.kind == SampleKind::drawing ? sample_drawing_graph(f, options.sparsify, rng)
                                                                : sample_graph(f, rng);
    SampleOutcome s = validate_sample(h, f, rho, a, options.kind);
    s.attempts = attempt;
    if (options.predicate) s.valid = options.predicate(s);
    if (s.valid) return s;
    const int sc = score(s);
    if (sc > best_score) {
      best_score = sc;
      best = std::move(s);
    }
  }
  best->attempts = options.max_attempts;
  best->valid = false;
  return *best;
}

}  // namespace cayley
