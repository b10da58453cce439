#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cayley/fourier.hpp"
#include "cayley/random.hpp"

namespace cayley {

/// Cayley multigraph generated by g₁, g₁⁻¹, ..., g_k, g_k⁻¹ taken with multiplicity.
/// Vertex x is joined to s·x for every slot s, so every vertex has degree 2k.
struct RandomCayleyMultigraph {
  GroupPtr group;
  int k = 0;
  std::vector<std::size_t> generators;    // g₁, ..., g_k
  std::vector<std::size_t> slots;         // g₁, g₁⁻¹, g₂, g₂⁻¹, ...
  std::vector<int> multiplicity;          // m(g) = number of slots equal to g

  std::size_t order() const noexcept { return multiplicity.size(); }
  int degree() const noexcept { return 2 * k; }
  /// m - 2k/|G|, real and symmetric.
  GroupFunction f() const;
  /// Adjacency A(x, y) = m(x y⁻¹).
  RMatrix adjacency() const;
  nlohmann::json to_json() const;
};

/// k independent uniform generators (the identity is allowed).
RandomCayleyMultigraph sample_multigraph(const GroupPtr& group, int k, Rng& rng);
RandomCayleyMultigraph multigraph_from_generators(const GroupPtr& group, std::vector<std::size_t> generators);

/// Edges with exactly one endpoint in X, with multiplicity. Repeats in X are ignored.
std::int64_t edge_boundary(const RandomCayleyMultigraph& graph, const std::vector<std::size_t>& subset);

struct CutIdentity {
  double lhs = 0.0;       // ⟨x, f∗x⟩ for x = |G∖X| 𝟙_X - |X| 𝟙_{G∖X}
  double rhs = 0.0;       // (2k/|G|)|X||G∖X| - e(X, G∖X)
  double residual = 0.0;
  std::int64_t boundary = 0;
};
/// Both sides evaluated independently. DomainError unless X is nonempty and proper.
CutIdentity cut_identity_check(const RandomCayleyMultigraph& graph, const std::vector<std::size_t>& subset);

struct NormComparison {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
};

/// lhs = ‖f‖_{S_q}, rhs = ‖f‖_{L^p} with 1/p + 1/q = 1. DomainError unless 1 <= p <= 2.
NormComparison hausdorff_young_check(const GroupFunction& f, double p);
/// lhs = |⟨x, f∗x⟩|, rhs = ‖f‖_{S_p} ‖x‖²_{L^{2p/(p+1)}}; p = kInfinity allowed.
NormComparison qform_schatten_check(const GroupFunction& f, const GroupFunction& x, double p);

struct ConcentrationEstimate {
  int k = 0;
  std::vector<int> p_range;
  std::vector<double> statistics;  // per trial: max_p ‖f‖_{S_p} |G|^{1-1/p} / √(pk)
  double median = 0.0;
  double threshold = 0.0;
  double fraction_below = 0.0;     // fraction of trials with statistic <= threshold
  nlohmann::json to_json() const;
};

/// Trial i samples its multigraph from seeds.child("trial", i).
ConcentrationEstimate schatten_concentration_estimate(const GroupPtr& group, int k, int trials,
                                                      const std::vector<int>& p_range, double threshold,
                                                      const SeedTree& seeds);

enum class EnumerationMode { exhaustive, sampled };
EnumerationMode parse_enumeration_mode(const std::string& text);
std::string to_string(EnumerationMode mode);

struct SizeRecord {
  std::size_t size = 0;
  std::uint64_t subsets = 0;
  std::int64_t min_boundary = 0;
  std::int64_t max_boundary = 0;
  double worst_deviation = 0.0;             // max |ratio - 1|
  double worst_normalized_deviation = 0.0;  // max |ratio - 1| / √(log|X| / k)
};

struct ExpansionReport {
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::size_t group_order = 0;
  int k = 0;
  std::vector<std::size_t> generators;
  std::uint64_t subsets_evaluated = 0;
  std::vector<SizeRecord> per_size;  // |X| = 2, ..., ⌊|G|/2⌋
  double worst_deviation = 0.0;
  double constant_estimate = 0.0;    // Ĉ
  std::vector<std::size_t> worst_subset;
  double max_identity_residual = 0.0;
  std::uint64_t boundary_mismatches = 0;  // incremental vs direct edge count

  nlohmann::json to_json() const;
};

struct ExpansionOptions {
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t samples_per_size = 2000;  // sampled mode
  bool check_identity = true;             // evaluate ⟨x, f∗x⟩ for every subset
};

inline constexpr std::size_t kExhaustiveLimit = 22;

/// Deviation of e(X, G∖X) / ((2k/|G|)|X||G∖X|) from 1 over subsets 1 < |X| <= |G|/2.
/// Exhaustive mode walks all subsets in Gray-code order (SizeLimitError above kExhaustiveLimit).
ExpansionReport smallset_expansion_report(const RandomCayleyMultigraph& graph, const ExpansionOptions& options,
                                          Rng& rng);

}  // namespace cayley
