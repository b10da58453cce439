#include "cayley/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const RMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename Matrix>
void reverse_columns(Matrix& m) {
  m = m.rowwise().reverse().eval();
}

}  // namespace

CMatrix ConvolutionOperator::as_complex() const {
  return real ? CMatrix(real_matrix.cast<Complex>()) : complex_matrix;
}

CVector ConvolutionOperator::apply(const CVector& x) const {
  if (x.size() != size()) throw StructuralError("operator applied to a vector of the wrong length");
  if (real) return real_matrix.cast<Complex>() * x;
  return complex_matrix * x;
}

double ConvolutionOperator::hermitian_defect() const {
  if (real) return real_matrix.size() ? (real_matrix - real_matrix.transpose()).cwiseAbs().maxCoeff() : 0.0;
  return hermitian_residual(complex_matrix);
}

ConvolutionOperator build_operator(const GroupFunction& f, bool require_symmetric) {
  if (require_symmetric && !f.symmetric()) {
    throw NotHermitianError("build_operator: f is not flagged symmetric (f(g^-1) = conj f(g))");
  }
  ConvolutionOperator op;
  op.source = f;
  op.real = f.is_real(0.0);
  const FiniteGroup& G = f.group_ref();
  const auto n = static_cast<Eigen::Index>(G.order());
  const double inv_n = 1.0 / static_cast<double>(n);
  if (op.real) {
    op.real_matrix.resize(n, n);
    for (Eigen::Index h = 0; h < n; ++h) {
      const std::size_t hinv = G.inverse(static_cast<std::size_t>(h));
      for (Eigen::Index g = 0; g < n; ++g) {
        op.real_matrix(g, h) = f[G.multiply(static_cast<std::size_t>(g), hinv)].real() * inv_n;
      }
    }
  } else {
    op.complex_matrix = convolution_matrix(f);
  }
  return op;
}

ConvolutionOperator operator_from_matrix(RMatrix m) {
  if (m.rows() != m.cols()) throw StructuralError("operator matrix must be square");
  ConvolutionOperator op;
  op.real = true;
  op.real_matrix = std::move(m);
  return op;
}

ConvolutionOperator operator_from_matrix(CMatrix m) {
  if (m.rows() != m.cols()) throw StructuralError("operator matrix must be square");
  ConvolutionOperator op;
  op.real = false;
  op.complex_matrix = std::move(m);
  return op;
}

RMatrix SpectralData::real_basis(std::size_t cluster) const {
  if (!real) throw StructuralError("real_basis requested from a complex decomposition");
  if (!has_vectors()) throw StructuralError("decomposition was computed without eigenvectors");
  const SpectralCluster& c = clusters.at(cluster);
  return real_vectors.middleCols(c.begin, c.multiplicity);
}

CMatrix SpectralData::basis(std::size_t cluster) const {
  if (real) return real_basis(cluster).cast<Complex>();
  if (!has_vectors()) throw StructuralError("decomposition was computed without eigenvectors");
  const SpectralCluster& c = clusters.at(cluster);
  return complex_vectors.middleCols(c.begin, c.multiplicity);
}

CMatrix SpectralData::projector(std::size_t cluster) const {
  const CMatrix b = basis(cluster);
  return b * b.adjoint();
}

std::string SpectralData::to_csv() const {
  std::string out = "eigenvalue,multiplicity\n";
  for (const auto& c : clusters) out += format_double(c.value) + "," + std::to_string(c.multiplicity) + "\n";
  return out;
}

nlohmann::json SpectralData::to_json(bool include_vectors) const {
  nlohmann::json cl = nlohmann::json::array();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& c = clusters[i];
    nlohmann::json entry{{"value", c.value}, {"multiplicity", c.multiplicity}, {"begin", c.begin}};
    if (include_vectors && has_vectors()) {
      const CMatrix b = basis(i);
      nlohmann::json re = nlohmann::json::array();
      nlohmann::json im = nlohmann::json::array();
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        nlohmann::json rc = nlohmann::json::array();
        nlohmann::json ic = nlohmann::json::array();
        for (Eigen::Index r = 0; r < b.rows(); ++r) {
          rc.push_back(b(r, j).real());
          ic.push_back(b(r, j).imag());
        }
        re.push_back(std::move(rc));
        im.push_back(std::move(ic));
      }
      entry["basis_real"] = std::move(re);
      if (!real) entry["basis_imag"] = std::move(im);
    }
    cl.push_back(std::move(entry));
  }
  return {{"n", size()}, {"tolerance", tolerance}, {"real", real}, {"clusters", std::move(cl)}};
}

std::vector<SpectralCluster> cluster_descending(const RVector& values, double tol) {
  std::vector<SpectralCluster> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values(i - 1) - values(i) > tol) {
      SpectralCluster c;
      c.begin = start;
      c.multiplicity = i - start;
      c.value = values.segment(start, c.multiplicity).mean();
      out.push_back(c);
      start = i;
    }
  }
  return out;
}

SpectralData symmetric_eigendecomposition(const ConvolutionOperator& m, const SpectralOptions& options) {
  const double scale = std::max(1.0, m.real ? max_abs(m.real_matrix) : max_abs(m.complex_matrix));
  if (m.hermitian_defect() > 1e-12 * scale) {
    throw NotHermitianError("symmetric_eigendecomposition: operator is not Hermitian");
  }
  SpectralData out;
  out.real = m.real;
  const int mode = options.with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (m.size() == 0) return out;
  if (m.real) {
    const RMatrix sym = 0.5 * (m.real_matrix + m.real_matrix.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(sym, mode);
    out.eigenvalues = es.eigenvalues().reverse();
    if (options.with_vectors) {
      out.real_vectors = es.eigenvectors();
      reverse_columns(out.real_vectors);
    }
  } else {
    const CMatrix herm = 0.5 * (m.complex_matrix + m.complex_matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, mode);
    out.eigenvalues = es.eigenvalues().reverse();
    if (options.with_vectors) {
      out.complex_vectors = es.eigenvectors();
      reverse_columns(out.complex_vectors);
    }
  }
  const double op_norm = out.eigenvalues.cwiseAbs().maxCoeff();
  out.tolerance = options.tolerance >= 0.0 ? options.tolerance : 1e-6 * op_norm;
  out.clusters = cluster_descending(out.eigenvalues, out.tolerance);
  return out;
}

std::vector<SpectrumEntry> spectrum_via_fourier(const FourierCoefficients& coeffs) {
  coeffs.table->require_complete("spectrum_via_fourier");
  std::vector<SpectrumEntry> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Irrep& rho = (*coeffs.table)[i];
    if (hermitian_residual(coeffs[i]) > 1e-10 * std::max(1.0, max_abs(coeffs[i]))) {
      throw NotHermitianError("spectrum_via_fourier: f-hat(" + rho.id() + ") is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (coeffs[i] + coeffs[i].adjoint()), Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      out.push_back({es.eigenvalues()(k), rho.dimension(), rho.id()});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value > b.value; });
  return out;
}

std::vector<SpectrumEntry> spectrum_via_fourier(const GroupFunction& f) {
  const IrrepTablePtr table = shared_irreps(f.group());
  table->require_complete("spectrum_via_fourier");
  return spectrum_via_fourier(fourier_transform(f, table));
}

RVector expand_spectrum(const std::vector<SpectrumEntry>& entries) {
  std::vector<double> values;
  for (const auto& e : entries) values.insert(values.end(), e.multiplicity, e.value);
  std::sort(values.begin(), values.end(), std::greater<>());
  return Eigen::Map<const RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

AbelianSubgroup sign_subgroup(const FiniteGroup& group) {
  if (group.family() != Family::hyperoctahedral) {
    throw StructuralError("sign_subgroup: " + group.descriptor() + " is not hyperoctahedral");
  }
  const int d = group.parameter();
  AbelianSubgroup out;
  std::vector<unsigned> bits;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const auto& e = std::get<SignedPermutation>(group.payload(g));
    bool identity_perm = true;
    for (int j = 0; j < d; ++j) identity_perm = identity_perm && e.images[static_cast<std::size_t>(j)] == j;
    if (!identity_perm) continue;
    unsigned b = 0;
    for (int j = 0; j < d; ++j)
      if (e.signs[static_cast<std::size_t>(j)] < 0) b |= 1u << j;
    out.members.push_back(g);
    bits.push_back(b);
  }
  const unsigned count = 1u << d;
  for (unsigned s = 0; s < count; ++s) {
    std::vector<Complex> chi;
    for (unsigned b : bits) chi.emplace_back(std::popcount(s & b) % 2 ? -1.0 : 1.0);
    out.characters.push_back(std::move(chi));
  }
  std::vector<char> covered(group.order(), 0);
  for (std::size_t g = 0; g < group.order(); ++g) {
    if (covered[g]) continue;
    out.coset_reps.push_back(g);
    for (std::size_t m : out.members) covered[group.multiply(g, m)] = 1;
  }
  return out;
}

AbelianSubgroup trivial_subgroup(const FiniteGroup& group) {
  AbelianSubgroup out;
  out.members = {group.identity()};
  out.characters = {{Complex(1.0)}};
  out.coset_reps.resize(group.order());
  std::iota(out.coset_reps.begin(), out.coset_reps.end(), std::size_t{0});
  return out;
}

AbelianSubgroup default_subgroup(const FiniteGroup& group) {
  return group.family() == Family::hyperoctahedral ? sign_subgroup(group) : trivial_subgroup(group);
}

CMatrix subgroup_block(const GroupFunction& f, const AbelianSubgroup& sub, std::size_t character) {
  const FiniteGroup& G = f.group_ref();
  const auto cosets = static_cast<Eigen::Index>(sub.coset_reps.size());
  const std::vector<Complex>& chi = sub.characters.at(character);
  const double inv_n = 1.0 / static_cast<double>(G.order());
  CMatrix block(cosets, cosets);
  for (Eigen::Index c = 0; c < cosets; ++c) {
    const std::size_t rc = sub.coset_reps[static_cast<std::size_t>(c)];
    for (Eigen::Index c2 = 0; c2 < cosets; ++c2) {
      const std::size_t rinv = G.inverse(sub.coset_reps[static_cast<std::size_t>(c2)]);
      Complex sum = 0.0;
      for (std::size_t i = 0; i < sub.members.size(); ++i) {
        sum += std::conj(chi[i]) * f[G.multiply(G.multiply(rc, sub.members[i]), rinv)];
      }
      block(c, c2) = sum * inv_n;
    }
  }
  return block;
}

RVector reduced_spectrum(const GroupFunction& f, const AbelianSubgroup& sub) {
  if (!f.symmetric()) throw NotHermitianError("reduced_spectrum: f is not flagged symmetric");
  const FiniteGroup& G = f.group_ref();
  if (sub.members.size() * sub.coset_reps.size() != G.order()) {
    throw StructuralError("reduced_spectrum: subgroup cosets do not tile the group");
  }
  const auto cosets = static_cast<Eigen::Index>(sub.coset_reps.size());
  const std::size_t k = sub.members.size();
  // values[(c·C + c2)·k + i] = f(r_c m_i r_{c2}⁻¹)
  std::vector<Complex> values(static_cast<std::size_t>(cosets * cosets) * k);
  for (Eigen::Index c = 0; c < cosets; ++c) {
    const std::size_t rc = sub.coset_reps[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t left = G.multiply(rc, sub.members[i]);
      for (Eigen::Index c2 = 0; c2 < cosets; ++c2) {
        values[static_cast<std::size_t>(c * cosets + c2) * k + i] =
            f[G.multiply(left, G.inverse(sub.coset_reps[static_cast<std::size_t>(c2)]))];
      }
    }
  }
  const bool real_f = f.is_real(0.0);
  const double inv_n = 1.0 / static_cast<double>(G.order());
  std::vector<double> all;
  all.reserve(G.order());
  for (const auto& chi : sub.characters) {
    const bool real_chi = std::all_of(chi.begin(), chi.end(), [](const Complex& z) { return z.imag() == 0.0; });
    if (real_f && real_chi) {
      RMatrix block(cosets, cosets);
      for (Eigen::Index c = 0; c < cosets; ++c)
        for (Eigen::Index c2 = 0; c2 < cosets; ++c2) {
          double sum = 0.0;
          const Complex* row = &values[static_cast<std::size_t>(c * cosets + c2) * k];
          for (std::size_t i = 0; i < k; ++i) sum += chi[i].real() * row[i].real();
          block(c, c2) = sum * inv_n;
        }
      Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (block + block.transpose()), Eigen::EigenvaluesOnly);
      all.insert(all.end(), es.eigenvalues().begin(), es.eigenvalues().end());
    } else {
      CMatrix block(cosets, cosets);
      for (Eigen::Index c = 0; c < cosets; ++c)
        for (Eigen::Index c2 = 0; c2 < cosets; ++c2) {
          Complex sum = 0.0;
          const Complex* row = &values[static_cast<std::size_t>(c * cosets + c2) * k];
          for (std::size_t i = 0; i < k; ++i) sum += std::conj(chi[i]) * row[i];
          block(c, c2) = sum * inv_n;
        }
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (block + block.adjoint()), Eigen::EigenvaluesOnly);
      all.insert(all.end(), es.eigenvalues().begin(), es.eigenvalues().end());
    }
  }
  std::sort(all.begin(), all.end(), std::greater<>());
  return Eigen::Map<const RVector>(all.data(), static_cast<Eigen::Index>(all.size()));
}

EigenspaceDescriptor eigenspace_from_irrep(const Irrep& rho, const CVector& v,
                                           const std::vector<CVector>& basis_vectors) {
  const auto d = static_cast<Eigen::Index>(rho.dimension());
  if (v.size() != d) throw StructuralError("eigenspace_from_irrep: v has the wrong dimension");
  const double norm = v.norm();
  if (!(norm > 0.0)) throw DomainError("eigenspace_from_irrep: v is the zero vector");
  EigenspaceDescriptor out;
  out.irrep_id = rho.id();
  out.v = v / norm;
  std::vector<CVector> ws = basis_vectors;
  if (ws.empty()) {
    for (Eigen::Index j = 0; j < d; ++j) ws.push_back(CVector::Unit(d, j));
  }
  const auto n = static_cast<Eigen::Index>(rho.group_order());
  out.functions.resize(n, static_cast<Eigen::Index>(ws.size()));
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (ws[k].size() != d) throw StructuralError("eigenspace_from_irrep: basis vector has the wrong dimension");
    for (Eigen::Index g = 0; g < n; ++g) {
      out.functions(g, static_cast<Eigen::Index>(k)) =
          static_cast<double>(d) * (rho(static_cast<std::size_t>(g)) * ws[k]).dot(out.v);
    }
  }
  return out;
}

EigenspaceDescriptor eigenspace_from_irrep(const Irrep& rho, const CMatrix& coefficient, const CVector& v,
                                           const std::vector<CVector>& basis_vectors) {
  EigenspaceDescriptor out = eigenspace_from_irrep(rho, v, basis_vectors);
  if (coefficient.rows() != out.v.size() || coefficient.cols() != out.v.size()) {
    throw StructuralError("eigenspace_from_irrep: coefficient block has the wrong shape");
  }
  out.eigenvalue = out.v.dot(coefficient * out.v).real();
  return out;
}

}  // namespace cayley
