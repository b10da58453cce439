#include "cayley/linalg.hpp"

#include <cmath>

#include "cayley/errors.hpp"

namespace cayley {

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError("Hilbert-Schmidt inner product of differently shaped matrices");
  }
  return (a.adjoint() * b).trace();
}

double lp_of(const RVector& values, double p) {
  if (!(p >= 1.0)) throw DomainError("norm exponent must be >= 1");
  if (values.size() == 0) return 0.0;
  const double top = values.cwiseAbs().maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  // scale by the maximum so large p does not underflow
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double matrix_schatten_norm(const CMatrix& m, double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten exponent must be >= 1");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return lp_of(svd.singularValues(), p);
}

RMatrix haar_orthogonal(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) z(i, j) = normal(rng);
  Eigen::HouseholderQR<RMatrix> qr(z);
  RMatrix q = qr.householderQ() * RMatrix::Identity(d, d);
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

double gram_residual(const CMatrix& columns) {
  const CMatrix g = columns.adjoint() * columns;
  return (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double gram_residual(const RMatrix& columns) {
  const RMatrix g = columns.transpose() * columns;
  return (g - RMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double hermitian_residual(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double hermitian_operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double symmetric_operator_norm(const RMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace cayley
