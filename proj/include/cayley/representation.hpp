#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

/// Unitary irreducible representation of a FiniteGroup, stored as one d×d
/// matrix per element (column-major, contiguous).
class Irrep {
 public:
  /// `images` holds order()·d·d entries; ρ(g) occupies [g·d², (g+1)·d²).
  /// The Frobenius–Schur indicator and realness are computed here.
  Irrep(const FiniteGroup& group, std::string id, std::size_t dimension,
        std::vector<Complex> images);

  const std::string& id() const noexcept { return id_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t group_order() const noexcept { return order_; }

  Eigen::Map<const CMatrix> operator()(std::size_t g) const {
    const auto d = static_cast<Eigen::Index>(dimension_);
    return Eigen::Map<const CMatrix>(images_.data() + g * dimension_ * dimension_, d, d);
  }

  /// All matrix entries are real.
  bool is_real() const noexcept { return is_real_; }
  /// 1 real type, -1 quaternionic type, 0 not self-dual.
  int frobenius_schur() const noexcept { return indicator_; }
  bool is_self_dual() const noexcept { return indicator_ != 0; }

  /// χ(g) = tr ρ(g).
  Complex character(std::size_t g) const { return (*this)(g).trace(); }

 private:
  std::string id_;
  std::size_t dimension_;
  std::size_t order_;
  std::vector<Complex> images_;
  bool is_real_ = false;
  int indicator_ = 0;
};

/// E_g tr ρ(g²), rounded to {-1, 0, 1}; DomainError if the raw value is more
/// than 1e-6 away from that set.
int frobenius_schur(const FiniteGroup& group, const Irrep& rho);

struct IrrepTable {
  GroupPtr group;
  std::vector<Irrep> irreps;
  bool complete = false;

  std::size_t size() const noexcept { return irreps.size(); }
  const Irrep& operator[](std::size_t i) const { return irreps.at(i); }
  /// Position of the irrep with the given id; StructuralError if absent.
  std::size_t index_of(const std::string& id) const;
  /// Throws PartialTableError unless the table is complete.
  void require_complete(const char* what) const;
  /// Index of the irrep whose character is the complex conjugate of irrep i.
  std::size_t conjugate_of(std::size_t i) const;
};

/// Irreducible representations of a built-in group. Complete tables for cyclic,
/// dihedral, Q8 and symmetric d <= 4; partial (flagged) otherwise: symmetric
/// d = 5, 6 get trivial/sign/standard/standard⊗sign, hyperoctahedral gets the
/// trivial and the d-dimensional signed-permutation representation ("std").
/// SizeLimitError when the stored table would exceed 2^22 matrix entries.
IrrepTable irreps(const GroupPtr& group);

using IrrepTablePtr = std::shared_ptr<const IrrepTable>;

/// irreps(), wrapped for sharing between FourierCoefficients and callers.
IrrepTablePtr shared_irreps(const GroupPtr& group);

/// Same as irreps() but raises PartialTableError for partial tables.
IrrepTable full_irreps(const GroupPtr& group);

/// Σ_g |tr ρ(g)|²; equals |G| exactly for irreducible ρ.
double irreducibility_witness(const Irrep& rho);

}  // namespace cayley
