#pragma once

#include <memory>
#include <random>

#include "dsmg/dsmg.hpp"

namespace dsmg::testing {

inline RealMatrix random_orthogonal(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    RealMatrix g(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<RealMatrix> qr(g);
    return qr.householderQ();
}

/// A = Q1 diag(sigma) Q2^T with sigma log-uniform on [lo, hi].
inline RealMatrix random_matrix(Index n, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit;
    RealVector sigma(n);
    for (Index i = 0; i < n; ++i) sigma[i] = lo * std::pow(hi / lo, unit(rng));
    return random_orthogonal(n, rng) * sigma.asDiagonal() * random_orthogonal(n, rng).transpose();
}

inline RealVector random_vector(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    RealVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

/// Exact data A u_true plus noise of norm exactly delta.
struct RandomInstance {
    RealMatrix a;
    RealVector u_true;
    std::shared_ptr<const NoisyProblem> problem;
};

inline RandomInstance random_instance(Index n, double lo, double hi, double delta_rel, std::mt19937_64& rng) {
    RandomInstance out;
    out.a = random_matrix(n, lo, hi, rng);
    out.u_true = random_vector(n, rng);
    const RealVector f = out.a * out.u_true;
    RealVector e = random_vector(n, rng);
    const double delta = delta_rel * f.norm();
    e *= delta / e.norm();
    auto fact = std::make_shared<const SpectralFactorization>(factorize_svd(out.a));
    out.problem = std::make_shared<const NoisyProblem>(fact, to_complex(f + e), delta);
    return out;
}

inline double rel_diff(const Vector& a, const Vector& b) { return (a - b).norm() / b.norm(); }

}  // namespace dsmg::testing
