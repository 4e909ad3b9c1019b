#pragma once

// Data-parallel inner loops shared by the solvers. Each kernel has an OpenMP
// version in dsmg::kernels and a plain serial reference in
// dsmg::kernels::serial; tests check they agree and bench/ compares them.
//
// Reductions are split into fixed-size chunks whose partial sums are added in
// chunk order, so the result does not depend on the number of threads.

#include <cmath>
#include <span>

#include "dsmg/types.hpp"

namespace dsmg::kernels {

using RowMajorMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Index kReductionChunk = 512;

/// (1 - exp(-t*lambda)) / lambda with its limit t at lambda = 0. No domain checks.
inline double decay_filter(double lambda, double t) noexcept {
    if (lambda == 0.0) return t;
    return -std::expm1(-t * lambda) / lambda;
}

/// m_p = sum_i lambda_i^p * exp(-2 t lambda_i) * weight_i for p = 0, 1, 2.
struct DecayMoments {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

DecayMoments decay_moments(std::span<const double> lambda, std::span<const double> weight, double t);

/// out_i = exp(-t lambda_i) * a_i + decay_filter(lambda_i, t) * b_i
void filter_combine(std::span<const double> lambda, std::span<const Scalar> a, std::span<const Scalar> b,
                    double t, std::span<Scalar> out);

/// y = M x
void gemv(const RowMajorMatrix& m, std::span<const Scalar> x, std::span<Scalar> y);

/// g_i = sum_j h_j f_{(i-j) mod N}
void circular_convolve(std::span<const double> h, std::span<const double> f, std::span<double> g);

namespace serial {

DecayMoments decay_moments(std::span<const double> lambda, std::span<const double> weight, double t);
void filter_combine(std::span<const double> lambda, std::span<const Scalar> a, std::span<const Scalar> b,
                    double t, std::span<Scalar> out);
void gemv(const RowMajorMatrix& m, std::span<const Scalar> x, std::span<Scalar> y);
void circular_convolve(std::span<const double> h, std::span<const double> f, std::span<double> g);

}  // namespace serial

}  // namespace dsmg::kernels
