#include "cayley/group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "cayley/errors.hpp"

namespace cayley {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::cyclic: return "cyclic";
    case Family::dihedral: return "dihedral";
    case Family::quaternion8: return "quaternion8";
    case Family::symmetric: return "symmetric";
    case Family::hyperoctahedral: return "hyperoctahedral";
  }
  return "unknown";
}

namespace {

constexpr const char* kQuaternionLabels[8] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (std::size_t j = 0; j < inner.size(); ++j) out[j] = outer[static_cast<std::size_t>(inner[j])];
  return out;
}

std::vector<std::vector<int>> permutations_lex(int d) {
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t permutation_rank(const std::vector<int>& p) {
  // Lehmer code; matches std::next_permutation order.
  const std::size_t d = p.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < d; ++j) smaller += p[j] < p[i] ? 1 : 0;
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= d - 1 - i; ++k) fact *= k;
    rank += smaller * fact;
  }
  return rank;
}

std::size_t factorial(int d) {
  std::size_t f = 1;
  for (int k = 2; k <= d; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

struct Quat {
  int axis;  // 0 = 1, 1 = i, 2 = j, 3 = k
  int sign;  // +1 / -1
};

Quat quat_mul(Quat a, Quat b) {
  // axis products for 1, i, j, k
  static constexpr int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return {axis[a.axis][b.axis], a.sign * b.sign * sign[a.axis][b.axis]};
}

struct FamilyOps {
  std::vector<ElementPayload> elements;
  std::size_t (*encode)(const ElementPayload&, int);
  ElementPayload (*mul)(const ElementPayload&, const ElementPayload&, int);
};

std::size_t encode_cyclic(const ElementPayload& p, int) {
  return static_cast<std::size_t>(std::get<CyclicElement>(p).residue);
}
ElementPayload mul_cyclic(const ElementPayload& a, const ElementPayload& b, int n) {
  return CyclicElement{(std::get<CyclicElement>(a).residue + std::get<CyclicElement>(b).residue) % n};
}

std::size_t encode_dihedral(const ElementPayload& p, int) {
  const auto& e = std::get<DihedralElement>(p);
  return static_cast<std::size_t>(2 * e.rotation + e.flip);
}
ElementPayload mul_dihedral(const ElementPayload& a, const ElementPayload& b, int n) {
  // flip * rot = rot^{-1} * flip
  const auto& x = std::get<DihedralElement>(a);
  const auto& y = std::get<DihedralElement>(b);
  const int r = x.flip ? x.rotation - y.rotation : x.rotation + y.rotation;
  return DihedralElement{((r % n) + n) % n, x.flip ^ y.flip};
}

std::size_t encode_quaternion(const ElementPayload& p, int) {
  return static_cast<std::size_t>(std::get<QuaternionElement>(p).unit);
}
ElementPayload mul_quaternion(const ElementPayload& a, const ElementPayload& b, int) {
  const int ua = std::get<QuaternionElement>(a).unit;
  const int ub = std::get<QuaternionElement>(b).unit;
  const Quat q = quat_mul({ua / 2, ua % 2 ? -1 : 1}, {ub / 2, ub % 2 ? -1 : 1});
  return QuaternionElement{2 * q.axis + (q.sign < 0 ? 1 : 0)};
}

std::size_t encode_symmetric(const ElementPayload& p, int) {
  return permutation_rank(std::get<PermutationElement>(p).images);
}
ElementPayload mul_symmetric(const ElementPayload& a, const ElementPayload& b, int) {
  return PermutationElement{compose(std::get<PermutationElement>(a).images,
                                    std::get<PermutationElement>(b).images)};
}

std::size_t sign_bits(const std::vector<int>& signs) {
  std::size_t bits = 0;
  for (int s : signs) bits = (bits << 1) | (s < 0 ? 1U : 0U);
  return bits;
}

std::size_t encode_hyperoctahedral(const ElementPayload& p, int d) {
  const auto& e = std::get<SignedPermutation>(p);
  return (permutation_rank(e.images) << d) | sign_bits(e.signs);
}
ElementPayload mul_hyperoctahedral(const ElementPayload& a, const ElementPayload& b, int d) {
  // (σ,ε)(σ',ε') = (σσ', ε ⊙ σ·ε') where (σ·ε')_{σ(j)} = ε'_j.
  const auto& x = std::get<SignedPermutation>(a);
  const auto& y = std::get<SignedPermutation>(b);
  SignedPermutation out{compose(x.images, y.images), x.signs};
  for (int j = 0; j < d; ++j) {
    out.signs[static_cast<std::size_t>(x.images[static_cast<std::size_t>(j)])] *=
        y.signs[static_cast<std::size_t>(j)];
  }
  return out;
}

FamilyOps family_ops(Family family, int parameter) {
  FamilyOps ops;
  switch (family) {
    case Family::cyclic:
      for (int r = 0; r < parameter; ++r) ops.elements.emplace_back(CyclicElement{r});
      ops.encode = encode_cyclic;
      ops.mul = mul_cyclic;
      break;
    case Family::dihedral:
      for (int r = 0; r < parameter; ++r)
        for (int s = 0; s < 2; ++s) ops.elements.emplace_back(DihedralElement{r, s});
      ops.encode = encode_dihedral;
      ops.mul = mul_dihedral;
      break;
    case Family::quaternion8:
      for (int u = 0; u < 8; ++u) ops.elements.emplace_back(QuaternionElement{u});
      ops.encode = encode_quaternion;
      ops.mul = mul_quaternion;
      break;
    case Family::symmetric:
      for (auto& p : permutations_lex(parameter)) ops.elements.emplace_back(PermutationElement{p});
      ops.encode = encode_symmetric;
      ops.mul = mul_symmetric;
      break;
    case Family::hyperoctahedral: {
      const auto d = static_cast<std::size_t>(parameter);
      for (auto& p : permutations_lex(parameter)) {
        for (std::size_t bits = 0; bits < (std::size_t{1} << d); ++bits) {
          std::vector<int> signs(d);
          for (std::size_t j = 0; j < d; ++j) signs[j] = (bits >> (d - 1 - j)) & 1U ? -1 : 1;
          ops.elements.emplace_back(SignedPermutation{p, signs});
        }
      }
      ops.encode = encode_hyperoctahedral;
      ops.mul = mul_hyperoctahedral;
      break;
    }
  }
  return ops;
}

std::size_t expected_order(Family family, int parameter) {
  switch (family) {
    case Family::cyclic: return static_cast<std::size_t>(parameter);
    case Family::dihedral: return 2 * static_cast<std::size_t>(parameter);
    case Family::quaternion8: return 8;
    case Family::symmetric: return factorial(parameter);
    case Family::hyperoctahedral: return (std::size_t{1} << parameter) * factorial(parameter);
  }
  return 0;
}

}  // namespace

std::string payload_label(const ElementPayload& payload) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CyclicElement>) {
          return "r=" + std::to_string(e.residue);
        } else if constexpr (std::is_same_v<T, DihedralElement>) {
          return "rot=" + std::to_string(e.rotation) + ";flip=" + std::to_string(e.flip);
        } else if constexpr (std::is_same_v<T, QuaternionElement>) {
          return std::string("q=") + kQuaternionLabels[e.unit];
        } else if constexpr (std::is_same_v<T, PermutationElement>) {
          return "perm=" + join_ints(e.images);
        } else {
          std::string signs;
          for (std::size_t j = 0; j < e.signs.size(); ++j) {
            if (j) signs += ',';
            signs += e.signs[j] > 0 ? '+' : '-';
          }
          return "perm=" + join_ints(e.images) + ";sign=" + signs;
        }
      },
      payload);
}

FiniteGroup::FiniteGroup(Family family, int parameter, std::vector<ElementPayload> elements,
                         std::vector<std::uint16_t> table)
    : family_(family),
      parameter_(parameter),
      elements_(std::move(elements)),
      table_(std::move(table)),
      inverse_(elements_.size()) {
  const std::size_t n = elements_.size();
  if (table_.size() != n * n) throw StructuralError("multiplication table has wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a * n + b] == 0) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

std::size_t FiniteGroup::index_of(std::string_view wanted) const {
  for (std::size_t i = 0; i < order(); ++i) {
    if (label(i) == wanted) return i;
  }
  throw StructuralError("no element labelled '" + std::string(wanted) + "' in " + descriptor());
}

const std::vector<std::vector<std::size_t>>& FiniteGroup::conjugacy_classes() const {
  std::call_once(classes_once_, [this] {
    const std::size_t n = order();
    std::vector<bool> seen(n, false);
    for (std::size_t g = 0; g < n; ++g) {
      if (seen[g]) continue;
      std::vector<std::size_t> cls;
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t c = multiply(multiply(x, g), inverse(x));
        if (!seen[c]) {
          seen[c] = true;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  });
  return classes_;
}

std::string FiniteGroup::descriptor() const {
  if (family_ == Family::quaternion8) return "q8";
  return std::string(family_name(family_)) + ":" + std::to_string(parameter_);
}

nlohmann::json FiniteGroup::to_json() const {
  return {{"family", family_name(family_)}, {"parameter", parameter_}, {"order", order()}};
}

GroupPtr build_group(Family family, int parameter) {
  if (family == Family::quaternion8) parameter = 8;
  int max_parameter = 0;
  switch (family) {
    case Family::cyclic: max_parameter = static_cast<int>(kMaxGroupOrder); break;
    case Family::dihedral: max_parameter = static_cast<int>(kMaxGroupOrder / 2); break;
    case Family::quaternion8: max_parameter = 8; break;
    case Family::symmetric: max_parameter = 6; break;
    case Family::hyperoctahedral: max_parameter = 5; break;
  }
  if (parameter < 1 || parameter > max_parameter) {
    throw SizeLimitError(std::string(family_name(family)) + " parameter " +
                         std::to_string(parameter) + " outside supported range [1, " +
                         std::to_string(max_parameter) + "]");
  }

  FamilyOps ops = family_ops(family, parameter);
  const std::size_t n = ops.elements.size();
  if (n != expected_order(family, parameter)) throw StructuralError("enumeration size mismatch");

  std::vector<std::uint16_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t c = ops.encode(ops.mul(ops.elements[a], ops.elements[b], parameter), parameter);
      table[a * n + b] = static_cast<std::uint16_t>(c);
    }
  }
  return std::make_shared<const FiniteGroup>(family, parameter, std::move(ops.elements),
                                             std::move(table));
}

GroupPtr parse_group(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  const std::string_view name = descriptor.substr(0, colon);
  if (name == "q8" || name == "quaternion8") return build_group(Family::quaternion8, 8);

  Family family;
  if (name == "cyclic") family = Family::cyclic;
  else if (name == "dihedral") family = Family::dihedral;
  else if (name == "symmetric") family = Family::symmetric;
  else if (name == "hyperoctahedral") family = Family::hyperoctahedral;
  else throw SizeLimitError("unsupported group family '" + std::string(name) + "'");

  if (colon == std::string_view::npos) {
    throw StructuralError("group descriptor '" + std::string(descriptor) + "' needs a parameter");
  }
  const std::string_view digits = descriptor.substr(colon + 1);
  int parameter = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), parameter);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw StructuralError("bad group parameter in '" + std::string(descriptor) + "'");
  }
  return build_group(family, parameter);
}

}  // namespace cayley
