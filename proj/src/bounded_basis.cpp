#include "cayley/bounded_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

constexpr double kUnitTolerance = 1e-10;

double raw_constant(const CMatrix& basis) {
  if (basis.size() == 0) return 0.0;
  return std::sqrt(static_cast<double>(basis.rows())) * basis.cwiseAbs().maxCoeff();
}

double raw_constant(const RMatrix& basis) {
  if (basis.size() == 0) return 0.0;
  return std::sqrt(static_cast<double>(basis.rows())) * basis.cwiseAbs().maxCoeff();
}

LowCoherenceBasis sample_against(const RMatrix& tested, Rng& rng, int max_retries) {
  LowCoherenceBasis out;
  const Eigen::Index d = tested.rows();
  out.dimension = static_cast<std::size_t>(d);
  out.tested_vectors = static_cast<std::size_t>(tested.cols());
  if (d == 1) {
    out.basis = RMatrix::Ones(1, 1);
    out.coherence = tested.size() ? tested.cwiseAbs().maxCoeff() : 0.0;
    out.epsilon_target = kInfinity;
    out.checked = false;
    return out;
  }
  out.epsilon_target = coherence_target(out.dimension, std::max<std::size_t>(out.tested_vectors, 1));
  double best = kInfinity;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    RMatrix l = haar_orthogonal(d, rng);
    const double mu = tested.size() ? (l.transpose() * tested).cwiseAbs().maxCoeff() : 0.0;
    best = std::min(best, mu);
    if (mu <= out.epsilon_target) {
      out.basis = std::move(l);
      out.coherence = mu;
      out.retries = attempt;
      return out;
    }
  }
  throw SamplingFailure("low_coherence_basis: no basis met the coherence target after " +
                            std::to_string(max_retries) + " retries",
                        best);
}

template <typename Matrix>
void require_unit_columns(const Matrix& s) {
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    if (std::abs(s.col(j).norm() - 1.0) > kUnitTolerance) {
      throw DomainError("low_coherence_basis: input vector " + std::to_string(j) + " is not a unit vector");
    }
  }
}

/// Antiunitary J(u) = Q conj(u).
CVector apply_j(const CMatrix& q, const CVector& u) { return q * u.conjugate(); }

/// Orthonormal J-fixed vectors spanning the (J-invariant) column space of e; J² = +1.
CMatrix j_fixed_basis(const CMatrix& e, const CMatrix& q) {
  const Eigen::Index d = e.rows();
  const Eigen::Index k = e.cols();
  CMatrix out(d, 0);
  const Complex i(0.0, 1.0);
  auto try_add = [&](CVector c) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) c -= out.col(j).dot(c).real() * out.col(j);
    const double norm = c.norm();
    if (norm < 1e-6) return;
    c /= norm;
    out.conservativeResize(d, out.cols() + 1);
    out.col(out.cols() - 1) = c;
  };
  for (Eigen::Index j = 0; j < k && out.cols() < k; ++j) {
    const CVector u = e.col(j);
    try_add(u + apply_j(q, u));
    if (out.cols() < k) try_add(i * (u - apply_j(q, u)));
  }
  if (out.cols() != k) throw StructuralError("could not find a J-fixed basis of an eigenspace");
  return out;
}

/// Orthonormal basis of e's column space of the form b_1, J b_1, b_2, J b_2, ...; J² = -1.
/// Returns the b's only.
std::vector<CVector> j_pairs(const CMatrix& e, const CMatrix& q) {
  const Eigen::Index k = e.cols();
  if (k % 2) throw StructuralError("quaternionic eigenspace of odd dimension");
  std::vector<CVector> chosen;
  std::vector<CVector> heads;
  auto residual = [&](CVector c) {
    for (const auto& b : chosen) c -= b.dot(c) * b;
    return c;
  };
  for (Eigen::Index j = 0; j < k && static_cast<Eigen::Index>(chosen.size()) < k; ++j) {
    CVector r = residual(e.col(j));
    if (r.norm() < 1e-6) continue;
    r.normalize();
    CVector jr = residual(apply_j(q, r));
    jr.normalize();
    chosen.push_back(r);
    chosen.push_back(jr);
    heads.push_back(r);
  }
  if (static_cast<Eigen::Index>(chosen.size()) != k) throw StructuralError("could not pair a quaternionic eigenspace");
  return heads;
}

struct Column {
  double value;
  CVector vec;
  std::size_t cluster;  // index into pending clusters
};

/// Eigen-decomposition of a Hermitian d×d block; clusters in descending order.
struct BlockEigen {
  std::vector<double> values;
  std::vector<CMatrix> spaces;
};

BlockEigen block_eigen(const CMatrix& block, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (block + block.adjoint()));
  const RVector vals = es.eigenvalues().reverse();
  CMatrix vecs = es.eigenvectors().rowwise().reverse();
  BlockEigen out;
  for (const auto& c : cluster_descending(vals, tol)) {
    out.values.push_back(c.value);
    out.spaces.push_back(vecs.middleCols(c.begin, c.multiplicity));
  }
  return out;
}

void finish_report(BoundedBasisReport& report, const ConvolutionOperator* m, bool verify) {
  const Eigen::Index n = static_cast<Eigen::Index>(report.n);
  if (verify && m) {
    if (report.real && m->real) {
      const RMatrix mb = m->real_matrix * report.real_basis;
      report.eigenvalues = (report.real_basis.cwiseProduct(mb)).colwise().sum().transpose();
      const RMatrix res = mb - report.real_basis * report.eigenvalues.asDiagonal();
      report.eigen_residuals = res.colwise().norm().transpose();
      report.gram_residual = gram_residual(report.real_basis);
    } else {
      const CMatrix b = report.basis();
      const CMatrix mb = m->as_complex() * b;
      report.eigenvalues = (b.conjugate().cwiseProduct(mb)).colwise().sum().real().transpose();
      const CMatrix res = mb - b * report.eigenvalues.cast<Complex>().asDiagonal();
      report.eigen_residuals = res.colwise().norm().transpose();
      report.gram_residual = gram_residual(b);
    }
    report.max_eigen_residual = n ? report.eigen_residuals.maxCoeff() : 0.0;
  }
  report.constant = report.real ? raw_constant(report.real_basis) : raw_constant(report.complex_basis);
}

}  // namespace

double coherence_target(std::size_t d, std::size_t m) {
  if (d == 0 || m == 0) throw DomainError("coherence_target: empty dimension or vector set");
  return std::sqrt(2.0 * std::log(4.0 * static_cast<double>(d) * static_cast<double>(m)) / static_cast<double>(d));
}

LowCoherenceBasis low_coherence_basis(const RMatrix& s, Rng& rng, int max_retries) {
  if (s.rows() < 1) throw DomainError("low_coherence_basis: dimension must be >= 1");
  require_unit_columns(s);
  LowCoherenceBasis out = sample_against(s, rng, max_retries);
  out.input_coherence = out.coherence;
  return out;
}

LowCoherenceBasis low_coherence_basis(const CMatrix& s, Rng& rng, int max_retries) {
  if (s.rows() < 1) throw DomainError("low_coherence_basis: dimension must be >= 1");
  require_unit_columns(s);
  std::vector<RVector> parts;
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    const RVector re = s.col(j).real();
    const RVector im = s.col(j).imag();
    if (re.norm() > 1e-12) parts.push_back(re / re.norm());
    if (im.norm() > 1e-12) parts.push_back(im / im.norm());
  }
  RMatrix tested(s.rows(), static_cast<Eigen::Index>(parts.size()));
  for (std::size_t j = 0; j < parts.size(); ++j) tested.col(static_cast<Eigen::Index>(j)) = parts[j];
  LowCoherenceBasis out = sample_against(tested, rng, max_retries);
  out.input_coherence = s.size() ? (out.basis.cast<Complex>().adjoint() * s).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

double boundedness_constant(const RMatrix& basis) {
  if (gram_residual(basis) > 1e-6) throw NotOrthonormalError("boundedness_constant: columns are not orthonormal");
  return raw_constant(basis);
}

double boundedness_constant(const CMatrix& basis) {
  if (gram_residual(basis) > 1e-6) throw NotOrthonormalError("boundedness_constant: columns are not orthonormal");
  return raw_constant(basis);
}

CMatrix BoundedBasisReport::projector(std::size_t cluster) const {
  const BasisCluster& c = clusters.at(cluster);
  const CMatrix b = basis().middleCols(c.begin, c.multiplicity);
  return b * b.adjoint();
}

nlohmann::json BoundedBasisReport::to_json() const {
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& c : clusters) {
    cl.push_back({{"value", c.value},
                  {"multiplicity", c.multiplicity},
                  {"source", c.source},
                  {"branch", c.branch},
                  {"epsilon_targets", c.epsilon_targets},
                  {"coherences", c.coherences},
                  {"retries", c.retries}});
  }
  return {{"n", n},
          {"real", real},
          {"C", constant},
          {"gram_residual", gram_residual},
          {"max_eigen_residual", max_eigen_residual},
          {"clusters", std::move(cl)}};
}

BoundedBasisReport bounded_eigenbasis_numeric(const ConvolutionOperator& m, const SeedTree& seeds,
                                              const BasisOptions& options) {
  SpectralOptions so;
  so.tolerance = options.cluster_tolerance;
  so.with_vectors = true;
  return bounded_eigenbasis_numeric(m, symmetric_eigendecomposition(m, so), seeds, options);
}

BoundedBasisReport bounded_eigenbasis_numeric(const ConvolutionOperator& m, const SpectralData& spectrum,
                                              const SeedTree& seeds, const BasisOptions& options) {
  if (!spectrum.has_vectors()) throw StructuralError("bounded_eigenbasis_numeric: decomposition has no vectors");
  if (spectrum.size() != m.size()) throw StructuralError("bounded_eigenbasis_numeric: decomposition size mismatch");
  const Eigen::Index n = m.size();
  BoundedBasisReport report;
  report.n = static_cast<std::size_t>(n);
  report.real = spectrum.real;
  if (report.real) report.real_basis.resize(n, n);
  else report.complex_basis.resize(n, n);
  report.eigenvalues = spectrum.eigenvalues;

  for (std::size_t ci = 0; ci < spectrum.clusters.size(); ++ci) {
    const SpectralCluster& c = spectrum.clusters[ci];
    const double expected = static_cast<double>(c.multiplicity) / static_cast<double>(n);
    const CMatrix v = spectrum.basis(ci);
    const RVector diag = v.rowwise().squaredNorm();
    if ((diag.array() - expected).abs().maxCoeff() > options.walk_regular_tolerance) {
      throw NotTransitiveError("eigenprojector diagonal is not constant in cluster " + std::to_string(ci) +
                               " (value " + std::to_string(c.value) + ")");
    }
    Rng rng = seeds.child("cluster", ci).engine();
    const RVector inv_row = diag.cwiseSqrt().cwiseInverse();
    LowCoherenceBasis l;
    if (spectrum.real) {
      const RMatrix vr = spectrum.real_basis(ci);
      l = low_coherence_basis(RMatrix(vr.transpose() * inv_row.asDiagonal()), rng, options.max_retries);
      report.real_basis.middleCols(c.begin, c.multiplicity) = vr * l.basis;
    } else {
      l = low_coherence_basis(CMatrix(v.transpose() * inv_row.cast<Complex>().asDiagonal()), rng, options.max_retries);
      report.complex_basis.middleCols(c.begin, c.multiplicity) = v * l.basis.cast<Complex>();
    }
    BasisCluster bc;
    bc.value = c.value;
    bc.begin = c.begin;
    bc.multiplicity = c.multiplicity;
    bc.source = "cluster:" + std::to_string(ci);
    bc.branch = "numeric";
    bc.epsilon_targets = {l.checked ? l.epsilon_target : -1.0};
    bc.coherences = {l.coherence};
    bc.retries = {l.retries};
    report.clusters.push_back(std::move(bc));
  }
  finish_report(report, &m, options.verify);
  return report;
}

CMatrix self_dual_intertwiner(const Irrep& rho) {
  if (!rho.is_self_dual()) throw StructuralError("irrep '" + rho.id() + "' is not self-dual");
  const auto d = static_cast<Eigen::Index>(rho.dimension());
  const std::size_t n = rho.group_order();
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      CMatrix q = CMatrix::Zero(d, d);
      for (std::size_t g = 0; g < n; ++g) q += rho(g).col(a) * rho(g).col(b).transpose();
      const double scale = std::sqrt((q.adjoint() * q).trace().real() / static_cast<double>(d));
      if (scale < 1e-8) continue;
      q /= scale;
      double defect = 0.0;
      for (std::size_t g = 0; g < n; ++g) {
        defect = std::max(defect, (rho(g) * q - q * rho(g).conjugate()).cwiseAbs().maxCoeff());
      }
      if (defect > 1e-9 || gram_residual(q) > 1e-9) {
        throw StructuralError("intertwiner for '" + rho.id() + "' failed verification");
      }
      return q;
    }
  }
  throw StructuralError("no nonzero intertwiner found for '" + rho.id() + "'");
}

BoundedBasisReport bounded_eigenbasis_representation(const GroupFunction& f, const IrrepTablePtr& table,
                                                     const SeedTree& seeds, BasisMode mode,
                                                     const BasisOptions& options) {
  if (!table) throw StructuralError("bounded_eigenbasis_representation: no irrep table");
  table->require_complete("bounded_eigenbasis_representation");
  if (!f.symmetric()) throw NotHermitianError("bounded_eigenbasis_representation: f is not flagged symmetric");
  if (mode == BasisMode::real && !f.is_real(0.0)) {
    throw DomainError("bounded_eigenbasis_representation: a real basis needs a real-valued f");
  }
  const FourierCoefficients coeffs = fourier_transform(f, table);
  const std::size_t n = f.size();
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  double top = 0.0;
  for (const auto& block : coeffs.blocks) top = std::max(top, block.cwiseAbs().maxCoeff());
  const double tol = options.cluster_tolerance >= 0.0 ? options.cluster_tolerance : 1e-6 * top;

  std::vector<Column> columns;
  std::vector<BasisCluster> pending;  // per (irrep, eigenvalue) bookkeeping, merged later

  for (std::size_t i = 0; i < table->size(); ++i) {
    const Irrep& rho = (*table)[i];
    const auto d = static_cast<Eigen::Index>(rho.dimension());
    const double dd = static_cast<double>(d);
    const SeedTree irrep_seeds = seeds.child("irrep:" + rho.id());
    const BlockEigen be = block_eigen(coeffs[i], tol);

    // orbit S = {ρ(g) b}; x_v(g) = d (ρ(g) v)† b
    auto orbit = [&](const CVector& b) {
      CMatrix s(d, static_cast<Eigen::Index>(n));
      for (std::size_t g = 0; g < n; ++g) s.col(static_cast<Eigen::Index>(g)) = rho(g) * b;
      return s;
    };
    auto x_of = [&](const CVector& v, const CVector& b) {
      CVector x(static_cast<Eigen::Index>(n));
      for (std::size_t g = 0; g < n; ++g) x(static_cast<Eigen::Index>(g)) = dd * (rho(g) * v).dot(b);
      return x;
    };
    std::size_t b_counter = 0;
    auto record = [&](BasisCluster& bc, const LowCoherenceBasis& l) {
      bc.epsilon_targets.push_back(l.checked ? l.epsilon_target : -1.0);
      bc.coherences.push_back(l.input_coherence);
      bc.retries.push_back(l.retries);
    };

    if (mode == BasisMode::real && rho.frobenius_schur() == 0 && table->conjugate_of(i) < i) continue;

    std::optional<CMatrix> q;
    if (mode == BasisMode::real && rho.frobenius_schur() != 0 && !rho.is_real()) q = self_dual_intertwiner(rho);
    std::optional<CMatrix> fixed_frame;  // orthonormal J-fixed basis of C^d, ω = +1
    if (q && rho.frobenius_schur() == 1) fixed_frame = j_fixed_basis(CMatrix::Identity(d, d), *q);

    for (std::size_t e = 0; e < be.values.size(); ++e) {
      const double lambda = be.values[e];
      BasisCluster bc;
      bc.value = lambda;
      bc.source = rho.id();
      const std::size_t slot = pending.size();
      auto add = [&](const CVector& col) { columns.push_back({lambda, col, slot}); };

      if (mode == BasisMode::unitary) {
        bc.branch = "unitary";
        for (Eigen::Index j = 0; j < be.spaces[e].cols(); ++j) {
          const CVector b = be.spaces[e].col(j);
          Rng rng = irrep_seeds.child("b", b_counter++).engine();
          const LowCoherenceBasis l = low_coherence_basis(orbit(b), rng, options.max_retries);
          record(bc, l);
          for (Eigen::Index k = 0; k < d; ++k) {
            add(x_of(l.basis.col(k).cast<Complex>(), b) / (std::sqrt(dd) * sqrt_n));
          }
        }
      } else if (rho.is_real() && rho.frobenius_schur() == 1) {
        // real eigenvectors of the real symmetric block
        bc.branch = "real";
        Eigen::SelfAdjointEigenSolver<RMatrix> es(coeffs[i].real());
        const RMatrix rv = es.eigenvectors();
        const RVector rvals = es.eigenvalues();
        for (Eigen::Index j = 0; j < d; ++j) {
          if (std::abs(rvals(j) - lambda) > tol) continue;
          const RVector b = rv.col(j);
          RMatrix s(d, static_cast<Eigen::Index>(n));
          for (std::size_t g = 0; g < n; ++g) s.col(static_cast<Eigen::Index>(g)) = RMatrix(rho(g).real()) * b;
          Rng rng = irrep_seeds.child("b", b_counter++).engine();
          const LowCoherenceBasis l = low_coherence_basis(s, rng, options.max_retries);
          record(bc, l);
          for (Eigen::Index k = 0; k < d; ++k) {
            add(CVector(x_of(l.basis.col(k).cast<Complex>(), b.cast<Complex>()).real().cast<Complex>() /
                        (std::sqrt(dd) * sqrt_n)));
          }
        }
      } else if (rho.frobenius_schur() == 1) {
        bc.branch = "omega+1";
        const CMatrix fixed = j_fixed_basis(be.spaces[e], *q);
        for (Eigen::Index j = 0; j < fixed.cols(); ++j) {
          const CVector b = fixed.col(j);
          const CMatrix s = fixed_frame->adjoint() * orbit(b);
          if (s.size() && s.imag().cwiseAbs().maxCoeff() > 1e-9) {
            throw StructuralError("orbit coordinates in the J-fixed frame are not real");
          }
          Rng rng = irrep_seeds.child("b", b_counter++).engine();
          const LowCoherenceBasis l = low_coherence_basis(RMatrix(s.real()), rng, options.max_retries);
          record(bc, l);
          for (Eigen::Index k = 0; k < d; ++k) {
            const CVector v = *fixed_frame * l.basis.col(k).cast<Complex>();
            add(CVector(x_of(v, b).real().cast<Complex>() / (std::sqrt(dd) * sqrt_n)));
          }
        }
      } else {
        // ω = -1 pairs (b, J b) inside the eigenspace, or a non-self-dual irrep
        // paired with its conjugate; both give x and conj x in orthogonal components.
        std::vector<CVector> heads;
        bc.branch = q ? "omega-1" : "conjugate_pair";
        if (q) {
          heads = j_pairs(be.spaces[e], *q);
        } else {
          for (Eigen::Index j = 0; j < be.spaces[e].cols(); ++j) heads.push_back(be.spaces[e].col(j));
        }
        const double scale = std::sqrt(2.0 / dd) / sqrt_n;
        for (const CVector& b : heads) {
          Rng rng = irrep_seeds.child("b", b_counter++).engine();
          const LowCoherenceBasis l = low_coherence_basis(orbit(b), rng, options.max_retries);
          record(bc, l);
          for (Eigen::Index k = 0; k < d; ++k) {
            const CVector x = x_of(l.basis.col(k).cast<Complex>(), b);
            add(CVector(x.real().cast<Complex>() * scale));
            add(CVector(x.imag().cast<Complex>() * scale));
          }
        }
        if (!q) bc.source += "+" + (*table)[table->conjugate_of(i)].id();
      }
      pending.push_back(std::move(bc));
    }
  }

  if (columns.size() != n) {
    throw StructuralError("representation path produced " + std::to_string(columns.size()) + " columns for n = " +
                          std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return columns[a].value > columns[b].value; });

  BoundedBasisReport report;
  report.n = n;
  report.real = mode == BasisMode::real;
  const auto nn = static_cast<Eigen::Index>(n);
  if (report.real) report.real_basis.resize(nn, nn);
  else report.complex_basis.resize(nn, nn);
  RVector values(nn);
  for (Eigen::Index j = 0; j < nn; ++j) {
    const Column& c = columns[order[static_cast<std::size_t>(j)]];
    values(j) = c.value;
    if (report.real) report.real_basis.col(j) = c.vec.real();
    else report.complex_basis.col(j) = c.vec;
  }
  report.eigenvalues = values;

  // merge the per-irrep bookkeeping into eigenvalue clusters of M_f
  for (const auto& sc : cluster_descending(values, tol)) {
    BasisCluster bc;
    bc.value = sc.value;
    bc.begin = sc.begin;
    bc.multiplicity = sc.multiplicity;
    std::vector<std::size_t> slots;
    for (Eigen::Index j = sc.begin; j < sc.begin + sc.multiplicity; ++j) {
      slots.push_back(columns[order[static_cast<std::size_t>(j)]].cluster);
    }
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    for (std::size_t s : slots) {
      const BasisCluster& p = pending[s];
      bc.source += (bc.source.empty() ? "" : ",") + p.source;
      if (bc.branch.find(p.branch) == std::string::npos) bc.branch += (bc.branch.empty() ? "" : ",") + p.branch;
      bc.epsilon_targets.insert(bc.epsilon_targets.end(), p.epsilon_targets.begin(), p.epsilon_targets.end());
      bc.coherences.insert(bc.coherences.end(), p.coherences.begin(), p.coherences.end());
      bc.retries.insert(bc.retries.end(), p.retries.begin(), p.retries.end());
    }
    report.clusters.push_back(std::move(bc));
  }

  if (options.verify) {
    const ConvolutionOperator m = build_operator(f);
    finish_report(report, &m, true);
  } else {
    finish_report(report, nullptr, false);
  }
  return report;
}

double span_difference(const BoundedBasisReport& a, const BoundedBasisReport& b, double value_tolerance) {
  if (a.clusters.size() != b.clusters.size() || a.n != b.n) return kInfinity;
  double worst = 0.0;
  for (std::size_t c = 0; c < a.clusters.size(); ++c) {
    if (a.clusters[c].multiplicity != b.clusters[c].multiplicity) return kInfinity;
    if (std::abs(a.clusters[c].value - b.clusters[c].value) > value_tolerance) return kInfinity;
    worst = std::max(worst, (a.projector(c) - b.projector(c)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cayley
