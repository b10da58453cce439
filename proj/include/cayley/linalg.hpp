#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "cayley/random.hpp"

namespace cayley {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Hilbert–Schmidt inner product tr(A† B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// Schatten p-norm (p >= 1, p = kInfinity allowed) of a matrix from its singular values.
double matrix_schatten_norm(const CMatrix& m, double p);

/// ℓ^p norm of a nonnegative sequence, p = kInfinity allowed.
double lp_of(const RVector& values, double p);

/// Haar-distributed real orthogonal matrix: QR of a Gaussian matrix with R's diagonal made positive.
RMatrix haar_orthogonal(Eigen::Index d, Rng& rng);

/// max |entry| of G - I where G = B† B.
double gram_residual(const CMatrix& columns);
double gram_residual(const RMatrix& columns);

/// Largest absolute value of A - A†.
double hermitian_residual(const CMatrix& a);

/// Operator (spectral) norm of a Hermitian matrix.
double hermitian_operator_norm(const CMatrix& a);
double symmetric_operator_norm(const RMatrix& a);

}  // namespace cayley
