#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "cayley/fourier.hpp"
#include "cayley/random.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

/// Explicit acceptance threshold √(2 log(4 d m) / d) for m test vectors in dimension d.
double coherence_target(std::size_t d, std::size_t m);

/// Random orthonormal basis with small inner products against a fixed set of unit vectors.
struct LowCoherenceBasis {
  std::size_t dimension = 0;
  RMatrix basis;              // real orthonormal columns
  double coherence = 0.0;     // max |⟨w, v⟩| over the tested real set
  double input_coherence = 0.0;  // same against the original (possibly complex) vectors
  double epsilon_target = 0.0;
  std::size_t tested_vectors = 0;
  int retries = 0;            // rejected samples before acceptance
  bool checked = true;        // false when d = 1 (bound vacuous)
};

/// Columns of `s` are unit vectors in R^d. Haar bases are drawn until the
/// coherence is at most coherence_target(d, |S|); SamplingFailure after
/// max_retries rejections. d = 1 returns the basis {1} unchecked.
LowCoherenceBasis low_coherence_basis(const RMatrix& s, Rng& rng, int max_retries = 64);
/// Complex S: the normalized real and imaginary parts form the real test set S′,
/// and the returned basis is real.
LowCoherenceBasis low_coherence_basis(const CMatrix& s, Rng& rng, int max_retries = 64);

/// C = √n · max |entry|; NotOrthonormalError when the Gram residual exceeds 1e-6.
double boundedness_constant(const RMatrix& basis);
double boundedness_constant(const CMatrix& basis);

struct BasisCluster {
  double value = 0.0;
  Eigen::Index begin = 0;
  Eigen::Index multiplicity = 0;
  std::string source;  // cluster index, or irrep id for the representation path
  std::string branch;  // numeric, unitary, real, omega+1, omega-1 or conjugate_pair (comma joined after merging)
  std::vector<double> epsilon_targets;
  std::vector<double> coherences;
  std::vector<int> retries;
};

/// Orthonormal eigenbasis with columns grouped by eigenvalue (descending).
struct BoundedBasisReport {
  std::size_t n = 0;
  bool real = true;
  RMatrix real_basis;
  CMatrix complex_basis;
  RVector eigenvalues;        // one per column
  RVector eigen_residuals;    // ‖M x - λ x‖₂ per column (Euclidean-unit x)
  double gram_residual = 0.0;
  double max_eigen_residual = 0.0;
  double constant = 0.0;      // C
  std::vector<BasisCluster> clusters;

  CMatrix basis() const { return real ? CMatrix(real_basis.cast<Complex>()) : complex_basis; }
  /// Projector onto the span of the columns of one cluster.
  CMatrix projector(std::size_t cluster) const;
  nlohmann::json to_json() const;
};

struct BasisOptions {
  int max_retries = 64;
  double cluster_tolerance = -1.0;   // negative: 1e-6 · ‖M‖_op
  double walk_regular_tolerance = 1e-8;
  bool verify = true;                // fill residuals (costs two dense products)
};

/// Per-cluster random rotation of a dense eigendecomposition. NotTransitiveError
/// when some cluster projector has a non-constant diagonal.
BoundedBasisReport bounded_eigenbasis_numeric(const ConvolutionOperator& m, const SeedTree& seeds,
                                              const BasisOptions& options = {});
/// Same, reusing a decomposition (with vectors) of m.
BoundedBasisReport bounded_eigenbasis_numeric(const ConvolutionOperator& m, const SpectralData& spectrum,
                                              const SeedTree& seeds, const BasisOptions& options = {});

enum class BasisMode { real, unitary };

/// Eigenbasis assembled irrep by irrep from functions x_v(g) = d ⟨ρ(g), b v†⟩_HS.
/// Real mode pairs conjugate irreps and handles self-dual irreps through the
/// antiunitary J(v) = Q v̄ with ρ(g) Q = Q conj ρ(g). Requires a complete table
/// and, in real mode, a real symmetric f.
BoundedBasisReport bounded_eigenbasis_representation(const GroupFunction& f, const IrrepTablePtr& table,
                                                     const SeedTree& seeds, BasisMode mode = BasisMode::real,
                                                     const BasisOptions& options = {});

/// Unitary Q with ρ(g) Q = Q conj ρ(g), normalized to Q Q† = I. StructuralError if ρ is not self-dual.
CMatrix self_dual_intertwiner(const Irrep& rho);

/// Max over clusters of ‖P_a - P_b‖ (max entry) for two reports with the same cluster structure.
/// Returns +inf when cluster counts or multiplicities differ.
double span_difference(const BoundedBasisReport& a, const BoundedBasisReport& b, double value_tolerance = 1e-8);

}  // namespace cayley
