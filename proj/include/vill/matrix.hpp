#pragma once

// Dense Eigen types over exact scalars, plus the handful of free functions
// the rest of the library leans on. Everything here is expression-friendly:
// inputs are matrix bases, outputs are plain dense objects.

#include "vill/rational.hpp"

#include <Eigen/Dense>

namespace vill {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<Int>;
using IntVector = DenseVector<Int>;
using RatMatrix = DenseMatrix<Rational>;
using RatVector = DenseVector<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

/// Applies a [source k][target l] coefficient matrix to a source tuple:
/// result_l = sum_k m(k,l) * h_k.
RatVector apply_affine(const RatMatrix& m, const RatVector& h);

bool is_column_stochastic(const RatMatrix& m);

/// Max over column pairs of the l1 distance between columns; 0 for <=1 column.
Rational l1_column_diameter(const RatMatrix& m);

/// Dobrushin contraction coefficient of a column-stochastic matrix:
/// half the l1 column diameter's worst pair, i.e. 1 - min_{l,l'} sum_k min(m(k,l), m(k,l')).
Rational dobrushin_coefficient(const RatMatrix& m);

/// True iff some power of the nonnegative square matrix is entrywise positive
/// (checked up to the Wielandt bound (n-1)^2 + 1 on boolean powers).
bool is_primitive(const IntMatrix& m);

Rational sup_norm(const RatVector& v);

}  // namespace vill
