#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dsmg {

using Scalar = std::complex<double>;
using Index = Eigen::Index;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline Vector to_complex(const RealVector& x) { return x.cast<Scalar>(); }

bool all_finite(const Vector& x);
bool all_finite(const DenseMatrix& a);

}  // namespace dsmg
