#include "dsmg/baselines.hpp"

#include <cmath>
#include <sstream>

#include "dsmg/errors.hpp"

namespace dsmg {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) raise(ErrorKind::DomainError, "alpha must be positive and finite");
}

}  // namespace

double vr_discrepancy(const NoisyProblem& p, double alpha) {
    require_alpha(alpha);
    const auto& f = p.factorization();
    const Index k = f.rank_dim();
    const Vector& h = p.projected_data();
    double sum = 0.0;
    for (Index i = 0; i < k; ++i) {
        const double damp = alpha / (f.eigenvalues()[i] + alpha);
        sum += damp * damp * std::norm(h[i]);
    }
    sum += h.tail(f.rows() - k).squaredNorm();
    return std::sqrt(sum);
}

Vector vr_solution(const NoisyProblem& p, double alpha) {
    require_alpha(alpha);
    const auto& f = p.factorization();
    const Index k = f.rank_dim();
    Vector coeff = Vector::Zero(f.cols());
    for (Index i = 0; i < k; ++i)
        coeff[i] = std::conj(f.diag()[i]) / (f.eigenvalues()[i] + alpha) * p.projected_data()[i];
    return f.v_times(coeff);
}

VRReport vr_solve(const NoisyProblem& p, double c) {
    if (!(c > 0.0)) raise(ErrorKind::DomainError, "C must be positive");
    const auto& f = p.factorization();
    const double target = c * p.delta();
    const double tol = kNewtonRelTol * target;

    // alpha -> 0 keeps only the components Tikhonov cannot reduce.
    const Index k = f.rank_dim();
    const Vector& h = p.projected_data();
    double floor_sq = h.tail(f.rows() - k).squaredNorm();
    for (Index i = 0; i < k; ++i)
        if (f.eigenvalues()[i] == 0.0) floor_sq += std::norm(h[i]);
    if (std::sqrt(floor_sq) >= target) {
        std::ostringstream os;
        os << "inf residual = " << std::sqrt(floor_sq) << " >= C*delta = " << target;
        raise(ErrorKind::UnattainableDiscrepancy, os.str());
    }
    if (!(f.max_eigenvalue() > 0.0)) raise(ErrorKind::BracketFailure, "A = 0");

    double lo = std::log(1e-16 * f.max_eigenvalue());
    double hi = std::log(1e4 * f.max_eigenvalue());
    const double r_lo = vr_discrepancy(p, std::exp(lo));
    const double r_hi = vr_discrepancy(p, std::exp(hi));
    if (!(r_lo < target && r_hi > target)) {
        std::ostringstream os;
        os << "residual over alpha bracket [" << r_lo << ", " << r_hi << "] does not straddle C*delta = " << target;
        raise(ErrorKind::BracketFailure, os.str());
    }

    VRReport out;
    double mid = 0.5 * (lo + hi);
    double r_mid = vr_discrepancy(p, std::exp(mid));
    while (std::abs(r_mid - target) > tol) {
        if (out.bisection_iterations == kMaxBisectionIterations)
            raise(ErrorKind::IterationBudgetExceeded, "alpha bisection did not converge");
        ++out.bisection_iterations;
        (r_mid > target ? hi : lo) = mid;
        mid = 0.5 * (lo + hi);
        r_mid = vr_discrepancy(p, std::exp(mid));
    }
    out.alpha = std::exp(mid);
    out.solution = vr_solution(p, out.alpha);
    out.residual_norm = r_mid;
    return out;
}

}  // namespace dsmg
