#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cayley/fourier.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

/// Dense M_f, entry (g, h) = f(g h⁻¹)/|G|. Stored real when f is real-valued.
struct ConvolutionOperator {
  std::optional<GroupFunction> source;
  bool real = true;
  RMatrix real_matrix;
  CMatrix complex_matrix;

  Eigen::Index size() const noexcept { return real ? real_matrix.rows() : complex_matrix.rows(); }
  CMatrix as_complex() const;
  CVector apply(const CVector& x) const;
  /// max |M - M†|.
  double hermitian_defect() const;
};

/// NotHermitianError if require_symmetric is set and f is not flagged symmetric.
ConvolutionOperator build_operator(const GroupFunction& f, bool require_symmetric = true);
/// Wraps a raw matrix (for instance a graph adjacency matrix).
ConvolutionOperator operator_from_matrix(RMatrix m);
ConvolutionOperator operator_from_matrix(CMatrix m);

struct SpectralCluster {
  double value = 0.0;          // mean of the member eigenvalues
  Eigen::Index begin = 0;      // first column in SpectralData order
  Eigen::Index multiplicity = 0;
};

struct SpectralOptions {
  /// Cluster gap; negative means 1e-6 · ‖M‖_op.
  double tolerance = -1.0;
  bool with_vectors = true;
};

/// Eigenvalues in descending order, eigenvectors in matching columns,
/// and clusters of consecutive eigenvalues whose gaps are at most the tolerance.
struct SpectralData {
  RVector eigenvalues;
  bool real = true;
  RMatrix real_vectors;
  CMatrix complex_vectors;
  std::vector<SpectralCluster> clusters;
  double tolerance = 0.0;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
  bool has_vectors() const noexcept { return real ? real_vectors.size() > 0 : complex_vectors.size() > 0; }
  RMatrix real_basis(std::size_t cluster) const;
  CMatrix basis(std::size_t cluster) const;
  CMatrix projector(std::size_t cluster) const;

  /// "eigenvalue,multiplicity" rows, one per cluster.
  std::string to_csv() const;
  nlohmann::json to_json(bool include_vectors) const;
};

/// Groups a descending sequence into clusters with gaps <= tol.
std::vector<SpectralCluster> cluster_descending(const RVector& values, double tol);

/// Dense Hermitian eigensolver. NotHermitianError if max |M - M†| exceeds 1e-12 · max(1, max |M|).
SpectralData symmetric_eigendecomposition(const ConvolutionOperator& m, const SpectralOptions& options = {});

struct SpectrumEntry {
  double value = 0.0;
  std::size_t multiplicity = 0;
  std::string irrep_id;
};

/// Eigenvalues λ_{ρ,j} of each f̂(ρ), multiplicity d_ρ, sorted by descending value.
/// PartialTableError unless the group has a complete table; f must be symmetric.
std::vector<SpectrumEntry> spectrum_via_fourier(const GroupFunction& f);
std::vector<SpectrumEntry> spectrum_via_fourier(const FourierCoefficients& coeffs);
/// Expanded multiset in descending order.
RVector expand_spectrum(const std::vector<SpectrumEntry>& entries);

/// Abelian subgroup N with its character table and a set of left-coset representatives.
///
/// Right translation by N commutes with every M_f, so M_f splits into one
/// block per character χ, indexed by cosets:
///   B_χ[c, c'] = Σ_{m∈N} conj χ(m) f(r_c m r_{c'}⁻¹) / |G|.
struct AbelianSubgroup {
  std::vector<std::size_t> members;
  std::vector<std::vector<Complex>> characters;  // characters[s][i] = χ_s(members[i])
  std::vector<std::size_t> coset_reps;
};

/// The sign subgroup {(id, η)} of a hyperoctahedral group, χ_s(η) = (-1)^{s·η}.
AbelianSubgroup sign_subgroup(const FiniteGroup& group);
/// Trivial subgroup; one block, the full operator.
AbelianSubgroup trivial_subgroup(const FiniteGroup& group);
/// The subgroup appropriate for fast spectra of this group (sign subgroup when hyperoctahedral).
AbelianSubgroup default_subgroup(const FiniteGroup& group);

/// B_χ for one character; real when f and χ are real.
CMatrix subgroup_block(const GroupFunction& f, const AbelianSubgroup& n, std::size_t character);
/// Spectrum of M_f (f symmetric) assembled from the subgroup blocks, descending.
RVector reduced_spectrum(const GroupFunction& f, const AbelianSubgroup& n);

/// Basis functions x_w(g) = d_ρ ⟨ρ(g), v w†⟩_HS = d_ρ (ρ(g) w)† v of V_{ρ,v}.
struct EigenspaceDescriptor {
  std::string irrep_id;
  CVector v;
  std::optional<double> eigenvalue;
  CMatrix functions;  // one column per w, rows indexed by group element
};

/// DomainError when v is zero. An empty basis uses the standard basis of W_ρ.
/// v is normalized before use.
EigenspaceDescriptor eigenspace_from_irrep(const Irrep& rho, const CVector& v,
                                           const std::vector<CVector>& basis_vectors = {});
/// Same, with the eigenvalue v† f̂(ρ) v filled in.
EigenspaceDescriptor eigenspace_from_irrep(const Irrep& rho, const CMatrix& coefficient, const CVector& v,
                                           const std::vector<CVector>& basis_vectors = {});

}  // namespace cayley
