#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cayley {

enum class Family { cyclic, dihedral, quaternion8, symmetric, hyperoctahedral };

std::string_view family_name(Family family);

/// Largest group order any family may be built with (dense-matrix budget).
inline constexpr std::size_t kMaxGroupOrder = 5000;

struct CyclicElement {
  int residue = 0;
};

/// rot^rotation * flip^flip in the dihedral group of the regular n-gon.
struct DihedralElement {
  int rotation = 0;
  int flip = 0;
};

/// Unit quaternion; unit in 0..7 stands for 1, -1, i, -i, j, -j, k, -k.
struct QuaternionElement {
  int unit = 0;
};

/// Permutation of {0..d-1}; images[j] is the image of j.
struct PermutationElement {
  std::vector<int> images;
};

/// Signed permutation (σ, ε) acting on R^d as D_ε P_σ, i.e. e_j -> ε_{σ(j)} e_{σ(j)}.
struct SignedPermutation {
  std::vector<int> images;
  std::vector<int> signs;  // entries are +1 or -1, indexed by target coordinate
};

using ElementPayload = std::variant<CyclicElement, DihedralElement, QuaternionElement,
                                    PermutationElement, SignedPermutation>;

struct GroupElement {
  std::size_t index = 0;
  ElementPayload payload;
};

/// Canonical string for a payload, e.g. "perm=2,0,1;sign=+,-,+".
std::string payload_label(const ElementPayload& payload);

/// Enumerable finite group with an exact multiplication table.
///
/// Elements are identified with indices 0..n-1, enumerated lexicographically
/// in their structured payload; index 0 is always the identity. Instances are
/// immutable after construction (conjugacy classes are filled in once, under
/// std::call_once) and may be shared across threads.
class FiniteGroup {
 public:
  FiniteGroup(Family family, int parameter, std::vector<ElementPayload> elements,
              std::vector<std::uint16_t> table);

  Family family() const noexcept { return family_; }
  int parameter() const noexcept { return parameter_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t identity() const noexcept { return 0; }

  std::size_t multiply(std::size_t a, std::size_t b) const noexcept {
    return table_[a * order() + b];
  }
  std::size_t inverse(std::size_t a) const noexcept { return inverse_[a]; }

  const ElementPayload& payload(std::size_t index) const { return elements_.at(index); }
  GroupElement element(std::size_t index) const { return {index, payload(index)}; }
  std::string label(std::size_t index) const { return payload_label(payload(index)); }

  /// Index of the element with the given canonical label; throws StructuralError if absent.
  std::size_t index_of(std::string_view label) const;

  /// Partition into conjugacy classes; each class sorted, classes ordered by smallest member.
  const std::vector<std::vector<std::size_t>>& conjugacy_classes() const;

  /// "cyclic:20", "q8", "hyperoctahedral:3", ... (round-trips through parse_group).
  std::string descriptor() const;
  nlohmann::json to_json() const;

 private:
  Family family_;
  int parameter_;
  std::vector<ElementPayload> elements_;
  std::vector<std::uint16_t> table_;
  std::vector<std::size_t> inverse_;

  mutable std::once_flag classes_once_;
  mutable std::vector<std::vector<std::size_t>> classes_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builds one of the supported families. Parameter meaning: cyclic n (order n),
/// dihedral n (order 2n), quaternion8 (parameter ignored), symmetric d (order d!),
/// hyperoctahedral d (order 2^d d!, d <= 5). Throws SizeLimitError otherwise.
GroupPtr build_group(Family family, int parameter);

/// Parses "cyclic:20", "dihedral:4", "q8", "quaternion8", "symmetric:4", "hyperoctahedral:3".
GroupPtr parse_group(std::string_view descriptor);

}  // namespace cayley
