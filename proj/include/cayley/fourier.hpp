#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "cayley/group.hpp"
#include "cayley/linalg.hpp"
#include "cayley/representation.hpp"

namespace cayley {

/// Complex-valued function on a finite group, indexed by element index.
///
/// The symmetric flag asserts f(g⁻¹) = conj f(g); it is checked on
/// construction so every f̂(ρ) of a flagged function is Hermitian.
class GroupFunction {
 public:
  GroupFunction(GroupPtr group, std::vector<Complex> values, bool symmetric = false);

  static GroupFunction zero(GroupPtr group);
  static GroupFunction constant(GroupPtr group, Complex c);
  /// Indicator of a set of elements (repeats add up).
  static GroupFunction indicator(GroupPtr group, const std::vector<std::size_t>& elements);
  static GroupFunction from_real(GroupPtr group, const std::vector<double>& values, bool symmetric = false);

  const GroupPtr& group() const noexcept { return group_; }
  const FiniteGroup& group_ref() const noexcept { return *group_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex operator[](std::size_t g) const { return values_[g]; }
  bool symmetric() const noexcept { return symmetric_; }

  /// max |Im f(g)| <= tol.
  bool is_real(double tol = 1e-14) const;
  RVector real_part() const;
  CVector as_vector() const;

  /// Largest |f(g⁻¹) - conj f(g)|.
  double symmetry_defect() const;

 private:
  GroupPtr group_;
  std::vector<Complex> values_;
  bool symmetric_;
};

/// Uniform random real function with values in [-1, 1]; symmetrized when asked.
GroupFunction random_function(const GroupPtr& group, Rng& rng, bool symmetric, bool real = true);

/// f̂(ρ) for every irrep of a table.
struct FourierCoefficients {
  IrrepTablePtr table;
  std::vector<CMatrix> blocks;

  const CMatrix& operator[](std::size_t i) const { return blocks.at(i); }
  std::size_t size() const noexcept { return blocks.size(); }

  /// [{irrep_id, dim, real_parts, imag_parts}], matrices as row-major nested lists.
  nlohmann::json to_json() const;
};

/// f̂(ρ) = E_g f(g) ρ(g).
FourierCoefficients fourier_transform(const GroupFunction& f, const IrrepTablePtr& table);

/// f(g) = Σ_ρ d_ρ ⟨ρ(g), f̂(ρ)⟩_HS. PartialTableError on partial tables.
GroupFunction inverse_fourier(const FourierCoefficients& coeffs);

/// (f1 ∗ f2)(g) = E_h f1(g h⁻¹) f2(h), evaluated directly.
GroupFunction convolve(const GroupFunction& f1, const GroupFunction& f2);

/// ⟨x, y⟩ = E_g conj x(g) y(g).
Complex inner_product(const GroupFunction& x, const GroupFunction& y);

/// (E_g |f(g)|^p)^{1/p}; p = kInfinity gives max |f|.
double lp_norm(const GroupFunction& f, double p);

/// Dense M_f with entries f(g h⁻¹)/|G|.
CMatrix convolution_matrix(const GroupFunction& f);

/// (Σ_ρ d_ρ ‖f̂(ρ)‖_{S_p}^p)^{1/p}; the table must be complete.
double schatten_norm_fourier(const FourierCoefficients& coeffs, double p);
/// Schatten norm of the dense operator M_f.
double schatten_norm_dense(const GroupFunction& f, double p);
/// Singular values of M_f with multiplicity (Fourier route when the table is complete).
RVector singular_values(const GroupFunction& f);
/// Fourier route when the group has a complete table, dense route otherwise.
double schatten_norm(const GroupFunction& f, double p);

}  // namespace cayley
