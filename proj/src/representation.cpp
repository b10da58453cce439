#include "cayley/representation.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

constexpr std::size_t kMaxTableEntries = std::size_t{1} << 22;

using ImageFn = std::function<CMatrix(const ElementPayload&)>;

Irrep make_irrep(const FiniteGroup& group, std::string id, std::size_t d, const ImageFn& image) {
  const std::size_t n = group.order();
  std::vector<Complex> data(n * d * d);
  for (std::size_t g = 0; g < n; ++g) {
    const CMatrix m = image(group.payload(g));
    std::copy(m.data(), m.data() + d * d, data.begin() + static_cast<std::ptrdiff_t>(g * d * d));
  }
  return Irrep(group, std::move(id), d, std::move(data));
}

CMatrix scalar(Complex c) {
  CMatrix m(1, 1);
  m(0, 0) = c;
  return m;
}

/// Orthonormal basis of the sum-zero subspace of R^d (Helmert columns).
RMatrix helmert(int d) {
  RMatrix h = RMatrix::Zero(d, d - 1);
  for (int k = 1; k < d; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) h(i, k - 1) = s;
    h(k, k - 1) = -k * s;
  }
  return h;
}

RMatrix permutation_matrix(const std::vector<int>& images) {
  const auto d = static_cast<Eigen::Index>(images.size());
  RMatrix p = RMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) p(images[static_cast<std::size_t>(j)], j) = 1.0;
  return p;
}

int parity(const std::vector<int>& images) {
  int sign = 1;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j]) sign = -sign;
  return sign;
}

CMatrix standard_symmetric(const std::vector<int>& images) {
  const RMatrix h = helmert(static_cast<int>(images.size()));
  return (h.transpose() * permutation_matrix(images) * h).cast<Complex>();
}

/// S_4 -> S_3 through the action on the three pairings {01|23}, {02|13}, {03|12}.
std::vector<int> pairing_action(const std::vector<int>& s) {
  std::vector<int> out(3);
  for (int t = 0; t < 3; ++t) {
    const int a = s[0];
    const int b = s[static_cast<std::size_t>(t + 1)];
    int partner;
    if (a == 0) partner = b;
    else if (b == 0) partner = a;
    else partner = 6 - a - b;  // 0 sits in the complementary pair {c, d}; c + d = 6 - a - b
    out[static_cast<std::size_t>(t)] = partner - 1;
  }
  return out;
}

std::vector<Irrep> cyclic_irreps(const FiniteGroup& g) {
  const int n = g.parameter();
  std::vector<Irrep> out;
  for (int j = 0; j < n; ++j) {
    out.push_back(make_irrep(g, "chi" + std::to_string(j), 1, [j, n](const ElementPayload& p) {
      const int m = std::get<CyclicElement>(p).residue;
      const double theta = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * m) % n) / n;
      return scalar(std::polar(1.0, theta));
    }));
  }
  return out;
}

std::vector<Irrep> dihedral_irreps(const FiniteGroup& g) {
  const int n = g.parameter();
  std::vector<Irrep> out;
  auto one_dim = [&](std::string id, bool rot_sign, bool flip_sign) {
    out.push_back(make_irrep(g, std::move(id), 1, [=](const ElementPayload& p) {
      const auto& e = std::get<DihedralElement>(p);
      double v = 1.0;
      if (rot_sign && e.rotation % 2) v = -v;
      if (flip_sign && e.flip) v = -v;
      return scalar(v);
    }));
  };
  one_dim("triv", false, false);
  one_dim("det", false, true);
  if (n % 2 == 0) {
    one_dim("alt", true, false);
    one_dim("alt_det", true, true);
  }
  for (int j = 1; 2 * j < n; ++j) {
    out.push_back(make_irrep(g, "rho" + std::to_string(j), 2, [j, n](const ElementPayload& p) {
      const auto& e = std::get<DihedralElement>(p);
      const double theta = 2.0 * std::numbers::pi * j * e.rotation / n;
      RMatrix r(2, 2);
      r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
      if (e.flip) r.col(1) = -r.col(1);  // R(θ) · diag(1, -1)
      return CMatrix(r.cast<Complex>());
    }));
  }
  return out;
}

std::vector<Irrep> quaternion_irreps(const FiniteGroup& g) {
  std::vector<Irrep> out;
  out.push_back(make_irrep(g, "triv", 1, [](const ElementPayload&) { return scalar(1.0); }));
  const char* names[3] = {"chi_i", "chi_j", "chi_k"};
  for (int axis = 1; axis <= 3; ++axis) {
    out.push_back(make_irrep(g, names[axis - 1], 1, [axis](const ElementPayload& p) {
      const int a = std::get<QuaternionElement>(p).unit / 2;
      return scalar(a == 0 || a == axis ? 1.0 : -1.0);
    }));
  }
  out.push_back(make_irrep(g, "quat", 2, [](const ElementPayload& p) {
    const int u = std::get<QuaternionElement>(p).unit;
    const Complex i(0.0, 1.0);
    CMatrix m(2, 2);
    switch (u / 2) {
      case 0: m << 1.0, 0.0, 0.0, 1.0; break;
      case 1: m << i, 0.0, 0.0, -i; break;
      case 2: m << 0.0, 1.0, -1.0, 0.0; break;
      default: m << 0.0, i, i, 0.0; break;
    }
    return CMatrix(u % 2 ? CMatrix(-m) : m);
  }));
  return out;
}

std::vector<Irrep> symmetric_irreps(const FiniteGroup& g) {
  const int d = g.parameter();
  std::vector<Irrep> out;
  out.push_back(make_irrep(g, "triv", 1, [](const ElementPayload&) { return scalar(1.0); }));
  if (d == 1) return out;
  out.push_back(make_irrep(g, "sign", 1, [](const ElementPayload& p) {
    return scalar(parity(std::get<PermutationElement>(p).images));
  }));
  if (d == 2) return out;
  const auto sd = static_cast<std::size_t>(d - 1);
  out.push_back(make_irrep(g, "std", sd, [](const ElementPayload& p) {
    return standard_symmetric(std::get<PermutationElement>(p).images);
  }));
  if (d == 3) return out;
  out.push_back(make_irrep(g, "std_x_sign", sd, [](const ElementPayload& p) {
    const auto& s = std::get<PermutationElement>(p).images;
    return CMatrix(static_cast<double>(parity(s)) * standard_symmetric(s));
  }));
  if (d == 4) {
    out.push_back(make_irrep(g, "two", 2, [](const ElementPayload& p) {
      return standard_symmetric(pairing_action(std::get<PermutationElement>(p).images));
    }));
  }
  return out;
}

std::vector<Irrep> hyperoctahedral_irreps(const FiniteGroup& g) {
  const auto d = static_cast<std::size_t>(g.parameter());
  std::vector<Irrep> out;
  out.push_back(make_irrep(g, "triv", 1, [](const ElementPayload&) { return scalar(1.0); }));
  out.push_back(make_irrep(g, "std", d, [](const ElementPayload& p) {
    const auto& e = std::get<SignedPermutation>(p);
    const auto dim = static_cast<Eigen::Index>(e.images.size());
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int target = e.images[static_cast<std::size_t>(j)];
      m(target, j) = static_cast<double>(e.signs[static_cast<std::size_t>(target)]);
    }
    return m;
  }));
  return out;
}

std::size_t table_entries(const FiniteGroup& g) {
  const std::size_t n = g.order();
  switch (g.family()) {
    case Family::cyclic: return n * n;
    case Family::dihedral: return n * n;  // Σ d² = |G|
    case Family::quaternion8: return 64;
    case Family::symmetric: return n * (2 + 2 * static_cast<std::size_t>((g.parameter() - 1) * (g.parameter() - 1)) + 4);
    case Family::hyperoctahedral: return n * (1 + static_cast<std::size_t>(g.parameter() * g.parameter()));
  }
  return 0;
}

}  // namespace

Irrep::Irrep(const FiniteGroup& group, std::string id, std::size_t dimension,
             std::vector<Complex> images)
    : id_(std::move(id)), dimension_(dimension), order_(group.order()), images_(std::move(images)) {
  if (images_.size() != order_ * dimension_ * dimension_) {
    throw StructuralError("irrep '" + id_ + "' has the wrong number of matrix entries");
  }
  is_real_ = true;
  for (const Complex& z : images_) {
    if (std::abs(z.imag()) > 1e-14) {
      is_real_ = false;
      break;
    }
  }
  indicator_ = cayley::frobenius_schur(group, *this);
}

int frobenius_schur(const FiniteGroup& group, const Irrep& rho) {
  if (rho.group_order() != group.order()) throw StructuralError("irrep belongs to another group");
  Complex sum = 0.0;
  for (std::size_t g = 0; g < group.order(); ++g) sum += rho.character(group.multiply(g, g));
  sum /= static_cast<double>(group.order());
  const double rounded = std::round(sum.real());
  if (std::abs(sum - Complex(rounded, 0.0)) > 1e-6 || std::abs(rounded) > 1.0) {
    throw DomainError("Frobenius-Schur indicator of '" + rho.id() + "' is not in {-1, 0, 1}");
  }
  return static_cast<int>(rounded);
}

double irreducibility_witness(const Irrep& rho) {
  double sum = 0.0;
  for (std::size_t g = 0; g < rho.group_order(); ++g) sum += std::norm(rho.character(g));
  return sum;
}

std::size_t IrrepTable::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < irreps.size(); ++i)
    if (irreps[i].id() == id) return i;
  throw StructuralError("no irrep '" + id + "' in table for " + group->descriptor());
}

void IrrepTable::require_complete(const char* what) const {
  if (!complete) {
    throw PartialTableError(std::string(what) + " needs a complete irrep table, but the table for " +
                            group->descriptor() + " is partial");
  }
}

std::size_t IrrepTable::conjugate_of(std::size_t i) const {
  const Irrep& rho = irreps.at(i);
  for (std::size_t j = 0; j < irreps.size(); ++j) {
    if (irreps[j].dimension() != rho.dimension()) continue;
    bool match = true;
    for (std::size_t g = 0; g < group->order() && match; ++g) {
      match = std::abs(irreps[j].character(g) - std::conj(rho.character(g))) < 1e-8;
    }
    if (match) return j;
  }
  throw StructuralError("conjugate of irrep '" + rho.id() + "' is not in the table");
}

IrrepTable irreps(const GroupPtr& group) {
  if (table_entries(*group) > kMaxTableEntries) {
    throw SizeLimitError("irrep table for " + group->descriptor() + " exceeds the storage budget");
  }
  IrrepTable table;
  table.group = group;
  switch (group->family()) {
    case Family::cyclic:
      table.irreps = cyclic_irreps(*group);
      table.complete = true;
      break;
    case Family::dihedral:
      table.irreps = dihedral_irreps(*group);
      table.complete = true;
      break;
    case Family::quaternion8:
      table.irreps = quaternion_irreps(*group);
      table.complete = true;
      break;
    case Family::symmetric:
      table.irreps = symmetric_irreps(*group);
      table.complete = group->parameter() <= 4;
      break;
    case Family::hyperoctahedral:
      table.irreps = hyperoctahedral_irreps(*group);
      table.complete = group->parameter() == 1;
      break;
  }
  return table;
}

IrrepTablePtr shared_irreps(const GroupPtr& group) {
  return std::make_shared<const IrrepTable>(irreps(group));
}

IrrepTable full_irreps(const GroupPtr& group) {
  IrrepTable table = irreps(group);
  table.require_complete("full_irreps");
  return table;
}

}  // namespace cayley
