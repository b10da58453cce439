#include "cayley/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_same_group(const GroupFunction& a, const GroupFunction& b, const char* what) {
  if (a.group() != b.group() && a.group()->descriptor() != b.group()->descriptor()) {
    throw StructuralError(std::string(what) + ": functions live on different groups");
  }
}

nlohmann::json rows_of(const RMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

GroupFunction::GroupFunction(GroupPtr group, std::vector<Complex> values, bool symmetric)
    : group_(std::move(group)), values_(std::move(values)), symmetric_(symmetric) {
  if (!group_) throw StructuralError("group function without a group");
  if (values_.size() != group_->order()) {
    throw StructuralError("group function has " + std::to_string(values_.size()) +
                          " values for a group of order " + std::to_string(group_->order()));
  }
  if (symmetric_) {
    double scale = 1.0;
    for (const Complex& z : values_) scale = std::max(scale, std::abs(z));
    if (symmetry_defect() > kSymmetryTolerance * scale) {
      throw DomainError("function flagged symmetric but f(g^-1) != conj f(g)");
    }
  }
}

GroupFunction GroupFunction::zero(GroupPtr group) {
  const std::size_t n = group->order();
  return GroupFunction(std::move(group), std::vector<Complex>(n), true);
}

GroupFunction GroupFunction::constant(GroupPtr group, Complex c) {
  const std::size_t n = group->order();
  const bool symmetric = c.imag() == 0.0;
  return GroupFunction(std::move(group), std::vector<Complex>(n, c), symmetric);
}

GroupFunction GroupFunction::indicator(GroupPtr group, const std::vector<std::size_t>& elements) {
  std::vector<Complex> values(group->order());
  for (std::size_t g : elements) {
    if (g >= values.size()) throw StructuralError("indicator element out of range");
    values[g] += 1.0;
  }
  bool symmetric = true;
  for (std::size_t g = 0; g < values.size() && symmetric; ++g) {
    symmetric = values[g] == values[group->inverse(g)];
  }
  return GroupFunction(std::move(group), std::move(values), symmetric);
}

GroupFunction GroupFunction::from_real(GroupPtr group, const std::vector<double>& values, bool symmetric) {
  return GroupFunction(std::move(group), std::vector<Complex>(values.begin(), values.end()), symmetric);
}

bool GroupFunction::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(),
                     [tol](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

RVector GroupFunction::real_part() const {
  RVector out(static_cast<Eigen::Index>(values_.size()));
  for (std::size_t g = 0; g < values_.size(); ++g) out(static_cast<Eigen::Index>(g)) = values_[g].real();
  return out;
}

CVector GroupFunction::as_vector() const {
  return Eigen::Map<const CVector>(values_.data(), static_cast<Eigen::Index>(values_.size()));
}

double GroupFunction::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t g = 0; g < values_.size(); ++g) {
    worst = std::max(worst, std::abs(values_[group_->inverse(g)] - std::conj(values_[g])));
  }
  return worst;
}

GroupFunction random_function(const GroupPtr& group, Rng& rng, bool symmetric, bool real) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const std::size_t n = group->order();
  std::vector<Complex> values(n);
  for (auto& v : values) {
    const double re = unif(rng);
    v = real ? Complex(re, 0.0) : Complex(re, unif(rng));
  }
  if (symmetric) {
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t gi = group->inverse(g);
      if (gi < g) continue;
      if (gi == g) {
        values[g] = values[g].real();
      } else {
        values[gi] = std::conj(values[g]);
      }
    }
  }
  return GroupFunction(group, std::move(values), symmetric);
}

nlohmann::json FourierCoefficients::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Irrep& rho = (*table)[i];
    out.push_back({{"irrep_id", rho.id()},
                   {"dim", rho.dimension()},
                   {"real_parts", rows_of(blocks[i].real())},
                   {"imag_parts", rows_of(blocks[i].imag())}});
  }
  return out;
}

FourierCoefficients fourier_transform(const GroupFunction& f, const IrrepTablePtr& table) {
  if (!table) throw StructuralError("fourier_transform: no irrep table");
  if (table->group->order() != f.size() || table->group->descriptor() != f.group()->descriptor()) {
    throw StructuralError("fourier_transform: irrep table belongs to another group");
  }
  FourierCoefficients out;
  out.table = table;
  const double inv_n = 1.0 / static_cast<double>(f.size());
  for (const Irrep& rho : table->irreps) {
    const auto d = static_cast<Eigen::Index>(rho.dimension());
    CMatrix acc = CMatrix::Zero(d, d);
    for (std::size_t g = 0; g < f.size(); ++g) {
      if (f[g] != Complex(0.0)) acc.noalias() += f[g] * rho(g);
    }
    acc *= inv_n;
    if (f.symmetric()) acc = (0.5 * (acc + acc.adjoint())).eval();
    out.blocks.push_back(std::move(acc));
  }
  return out;
}

GroupFunction inverse_fourier(const FourierCoefficients& coeffs) {
  if (!coeffs.table) throw StructuralError("inverse_fourier: no irrep table");
  coeffs.table->require_complete("inverse_fourier");
  if (coeffs.blocks.size() != coeffs.table->size()) {
    throw StructuralError("inverse_fourier: coefficient count does not match the irrep table");
  }
  const std::size_t n = coeffs.table->group->order();
  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < coeffs.blocks.size(); ++i) {
    const Irrep& rho = (*coeffs.table)[i];
    const CMatrix& block = coeffs.blocks[i];
    if (block.rows() != static_cast<Eigen::Index>(rho.dimension()) || block.cols() != block.rows()) {
      throw StructuralError("inverse_fourier: block for '" + rho.id() + "' has the wrong shape");
    }
    const double d = static_cast<double>(rho.dimension());
    for (std::size_t g = 0; g < n; ++g) {
      // ⟨ρ(g), F⟩_HS = Σ conj(ρ(g)_ij) F_ij
      values[g] += d * (rho(g).conjugate().cwiseProduct(block)).sum();
    }
  }
  return GroupFunction(coeffs.table->group, std::move(values));
}

GroupFunction convolve(const GroupFunction& f1, const GroupFunction& f2) {
  require_same_group(f1, f2, "convolve");
  const FiniteGroup& G = f1.group_ref();
  const std::size_t n = G.order();
  std::vector<Complex> out(n);
  for (std::size_t h = 0; h < n; ++h) {
    const Complex b = f2[h];
    if (b == Complex(0.0)) continue;
    const std::size_t hinv = G.inverse(h);
    for (std::size_t g = 0; g < n; ++g) out[g] += f1[G.multiply(g, hinv)] * b;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= inv_n;
  return GroupFunction(f1.group(), std::move(out));
}

Complex inner_product(const GroupFunction& x, const GroupFunction& y) {
  require_same_group(x, y, "inner_product");
  Complex sum = 0.0;
  for (std::size_t g = 0; g < x.size(); ++g) sum += std::conj(x[g]) * y[g];
  return sum / static_cast<double>(x.size());
}

double lp_norm(const GroupFunction& f, double p) {
  RVector mags(static_cast<Eigen::Index>(f.size()));
  for (std::size_t g = 0; g < f.size(); ++g) mags(static_cast<Eigen::Index>(g)) = std::abs(f[g]);
  const double raw = lp_of(mags, p);
  if (std::isinf(p)) return raw;
  return raw * std::pow(static_cast<double>(f.size()), -1.0 / p);
}

CMatrix convolution_matrix(const GroupFunction& f) {
  const FiniteGroup& G = f.group_ref();
  const auto n = static_cast<Eigen::Index>(G.order());
  const double inv_n = 1.0 / static_cast<double>(n);
  CMatrix m(n, n);
  for (Eigen::Index h = 0; h < n; ++h) {
    const std::size_t hinv = G.inverse(static_cast<std::size_t>(h));
    for (Eigen::Index g = 0; g < n; ++g) m(g, h) = f[G.multiply(static_cast<std::size_t>(g), hinv)] * inv_n;
  }
  return m;
}

namespace {

RVector singular_values_fourier(const FourierCoefficients& coeffs) {
  coeffs.table->require_complete("schatten_norm");
  // singular values of M_f are those of f̂(ρ), each repeated d_ρ times
  std::vector<double> singular;
  for (std::size_t i = 0; i < coeffs.blocks.size(); ++i) {
    Eigen::JacobiSVD<CMatrix> svd(coeffs.blocks[i]);
    const std::size_t d = (*coeffs.table)[i].dimension();
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      singular.insert(singular.end(), d, svd.singularValues()(k));
    }
  }
  return Eigen::Map<const RVector>(singular.data(), static_cast<Eigen::Index>(singular.size()));
}

RVector singular_values_dense(const GroupFunction& f) {
  const CMatrix m = convolution_matrix(f);
  if (f.symmetric()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs();
  }
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace

double schatten_norm_fourier(const FourierCoefficients& coeffs, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten exponent must be >= 1");
  return lp_of(singular_values_fourier(coeffs), p);
}

double schatten_norm_dense(const GroupFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten exponent must be >= 1");
  return lp_of(singular_values_dense(f), p);
}

RVector singular_values(const GroupFunction& f) {
  IrrepTablePtr table;
  try {
    table = shared_irreps(f.group());
  } catch (const SizeLimitError&) {
    return singular_values_dense(f);
  }
  if (!table->complete) return singular_values_dense(f);
  return singular_values_fourier(fourier_transform(f, table));
}

double schatten_norm(const GroupFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten exponent must be >= 1");
  return lp_of(singular_values(f), p);
}

}  // namespace cayley
