#pragma once

#include "dsmg/dsmg.hpp"

namespace dsmg {

/// Tikhonov (variational) regularization with the parameter chosen by the
/// discrepancy principle.
struct VRReport {
    double alpha = 0.0;
    Vector solution;
    double residual_norm = 0.0;
    int bisection_iterations = 0;
};

inline constexpr int kMaxBisectionIterations = 200;

/// ||A u_alpha - f_delta|| for u_alpha = V diag(conj(s)/(lambda + alpha)) U* f_delta.
double vr_discrepancy(const NoisyProblem& p, double alpha);

/// u_alpha for a given alpha > 0.
Vector vr_solution(const NoisyProblem& p, double alpha);

/// Bisection on log(alpha) over [1e-16, 1e4] * max(lambda) until
/// |residual - c delta| <= 1e-8 c delta. Ignores p.u0().
/// Errors: UnattainableDiscrepancy, BracketFailure, IterationBudgetExceeded.
VRReport vr_solve(const NoisyProblem& p, double c);

/// Pseudo-inverse oracle, re-exported for benchmarking.
inline Vector pseudo_inverse_solution(const SpectralFactorization& f, const Vector& rhs,
                                      double rank_tol = kDefaultRankTol) {
    return minimal_norm_solution(f, rhs, rank_tol);
}

}  // namespace dsmg
