#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"

#include "cayley/fourier.hpp"
#include "cayley/random.hpp"

namespace cayley {

/// Unit vector proportional to (1, 1/√2, ..., 1/√d).
RVector staircase_vector(int d);

/// f(g) = (1 - aᵀ ρ(g) a) / 2 for the signed-permutation representation of a
/// hyperoctahedral group. StructuralError on dimension mismatch.
GroupFunction construction_f(const GroupPtr& group, const RVector& a);

/// Self-inverse elements G′ and one representative of each pair {g, g⁻¹}, g ≠ g⁻¹ (G″).
struct InvolutionClasses {
  std::vector<std::size_t> self_inverse;
  std::vector<std::size_t> pair_representatives;
};
InvolutionClasses involution_classes(const FiniteGroup& group);

/// h(g) = h(g⁻¹) = 1 with probability f(g), independently over G′ ∪ G″.
GroupFunction sample_graph(const GroupFunction& f, Rng& rng);
/// Sparsified complement used for drawings: each g ≠ e (with g⁻¹) kept with probability c·(1 - f(g)).
GroupFunction sample_drawing_graph(const GroupFunction& f, double c, Rng& rng);

enum class SampleKind { proposition, drawing };

struct WorstRatio {
  double value = 0.0;
  int argmin_k = 0;  // minimizing v is (1,...,1,0,...,0)/√k in sorted coordinates
};

/// sup over signed permutations g of ⟨v, ρ(g) b⟩ = ⟨sort↓|v|, sort↓|b|⟩.
double signed_perm_sup(const RVector& v, const RVector& b);
/// min over real unit v of ‖x_v‖_∞ / ‖x_v‖_{L²} = √d · min_k (Σ_{j≤k} b*_j)/√k.
WorstRatio worst_ratio(const RVector& b);

struct SampleOutcome {
  std::optional<GroupFunction> h;
  SampleKind kind = SampleKind::proposition;
  int d = 0;
  std::size_t group_order = 0;

  RVector mh_spectrum;          // descending
  RVector hhat_spectrum;        // descending eigenvalues of ĥ(ρ)
  int mh_in_interval = 0;       // eigenvalues of M_h in [-1/d, -1/(3d)]
  int hhat_in_interval = 0;
  double lambda = 0.0;          // eigenvalue of ĥ(ρ) carrying b
  RVector b;                    // unit, a·b >= 0
  double b_residual = 0.0;      // ‖ĥ(ρ) b - λ b‖
  double a_minus_b = 0.0;
  double mh_deviation = 0.0;    // ‖M_h - M_f‖_op
  double hhat_deviation = 0.0;  // ‖ĥ(ρ) - f̂(ρ)‖_op

  double norm1_threshold = 0.0;  // 4 √(log(6|G|)/|G|)
  double norm2_threshold = 0.0;  // 4 √(log(6d)/|G|)
  double ab_threshold = 0.0;     // 16 √2 d √(log(6d)/|G|)

  bool interval_ok = false;      // exactly d eigenvalues of M_h in the interval
  bool hhat_interval_ok = false; // exactly one eigenvalue of ĥ(ρ) in the interval
  bool ab_ok = false;
  bool norm1_ok = false;
  bool norm2_ok = false;
  bool proposition_valid = false;

  bool top_simple = false;        // largest eigenvalue of M_h is simple
  int second_multiplicity = 0;    // size of the second cluster of M_h
  bool second_from_rho = false;   // second cluster value = λ_max(ĥ(ρ))
  bool drawing_valid = false;

  WorstRatio ratio;
  int attempts = 0;
  bool valid = false;             // verdict of the predicate used to select this sample

  nlohmann::json to_json() const;
};

/// All verdicts for one sampled h. For SampleKind::drawing, b is the top eigenvector of ĥ(ρ);
/// otherwise it belongs to the eigenvalue in [-1/d, -1/(3d)] (closest to -1/(2d) if none or several).
SampleOutcome validate_sample(const GroupFunction& h, const GroupFunction& f, const Irrep& rho, const RVector& a,
                              SampleKind kind = SampleKind::proposition);

struct ResampleOptions {
  SampleKind kind = SampleKind::proposition;
  double sparsify = 2.0 / 3.0;  // drawing kind only
  int max_attempts = 200;
  /// Replaces the built-in predicate when set.
  std::function<bool(const SampleOutcome&)> predicate;
};

/// Draws samples under seeds.child("attempt", i) until the predicate holds. After
/// max_attempts the highest-scoring sample is returned with valid = false.
SampleOutcome resample_until_valid(const GroupFunction& f, const Irrep& rho, const RVector& a, const SeedTree& seeds,
                                   const ResampleOptions& options = {});

}  // namespace cayley
