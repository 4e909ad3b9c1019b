#include "dsmg/dsmg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dsmg/errors.hpp"
#include "dsmg/kernels.hpp"

namespace dsmg {

namespace {

std::span<const double> span_of(const RealVector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

std::span<const Scalar> span_of(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << "time must be finite and nonnegative, got " << t;
        raise(ErrorKind::DomainError, os.str());
    }
}

kernels::DecayMoments moments(const NoisyProblem& p, double t) {
    return kernels::decay_moments(span_of(p.factorization().eigenvalues()), span_of(p.residual_weights()), t);
}

double norm_from(const kernels::DecayMoments& m, double r_perp) { return std::sqrt(m.m0 + r_perp * r_perp); }

void require_discrepancy_constant(double c) {
    if (!(c > 1.0 && c < 2.0)) {
        std::ostringstream os;
        os << "discrepancy constant must lie in (1, 2), got " << c;
        raise(ErrorKind::DomainError, os.str());
    }
}

void require_attainable(const NoisyProblem& p, double target) {
    if (p.residual_floor() >= target) {
        std::ostringstream os;
        os << "inf psi = " << p.residual_floor() << " >= C*delta = " << target
           << "; the noise bound is understated or C is too small";
        raise(ErrorKind::UnattainableDiscrepancy, os.str());
    }
}

}  // namespace

NoisyProblem::NoisyProblem(std::shared_ptr<const SpectralFactorization> factorization, Vector f_delta,
                           double delta, std::optional<Vector> u0)
    : factorization_(std::move(factorization)), f_delta_(std::move(f_delta)), delta_(delta) {
    if (!factorization_) raise(ErrorKind::DomainError, "factorization is null");
    const auto& f = *factorization_;
    if (f_delta_.size() != f.rows()) raise(ErrorKind::DimensionMismatch, "f_delta length must equal rows of A");
    if (!(delta_ > 0.0) || !std::isfinite(delta_)) raise(ErrorKind::DomainError, "delta must be positive and finite");
    if (!f_delta_.allFinite()) raise(ErrorKind::DomainError, "f_delta has non-finite entries");
    u0_ = u0 ? std::move(*u0) : Vector::Zero(f.cols());
    if (u0_.size() != f.cols()) raise(ErrorKind::DimensionMismatch, "u0 length must equal columns of A");
    if (!u0_.allFinite()) raise(ErrorKind::DomainError, "u0 has non-finite entries");

    const Index k = f.rank_dim();
    h_ = f.u_adjoint_times(f_delta_);
    v0_ = f.v_adjoint_times(u0_);
    r0_ = -h_;
    r0_.head(k) += f.diag().cwiseProduct(v0_.head(k));

    weights_ = r0_.head(k).cwiseAbs2();
    r_perp_ = r0_.tail(f.rows() - k).norm();

    double floor_sq = r_perp_ * r_perp_;
    for (Index i = 0; i < k; ++i)
        if (f.eigenvalues()[i] == 0.0) floor_sq += weights_[i];
    floor_ = std::sqrt(floor_sq);
}

void validate(const StoppingRule& rule) {
    if (const auto* d = std::get_if<Discrepancy>(&rule)) {
        require_discrepancy_constant(d->c);
        return;
    }
    const auto& a = std::get<APriori>(rule);
    if (!(a.c > 0.0) || !std::isfinite(a.c)) raise(ErrorKind::DomainError, "a priori C must be positive");
    if (!(a.gamma > 0.0 && a.gamma < 1.0)) raise(ErrorKind::DomainError, "a priori gamma must lie in (0, 1)");
}

double evolution_filter(double lambda, double t) {
    if (!(lambda >= 0.0)) raise(ErrorKind::DomainError, "lambda must be nonnegative");
    require_time(t);
    return kernels::decay_filter(lambda, t);
}

Vector solution_at(const NoisyProblem& p, double t) {
    require_time(t);
    const auto& f = p.factorization();
    const Index k = f.rank_dim();
    const Vector gain = f.diag().conjugate().cwiseProduct(p.projected_data().head(k));

    Vector coeff = p.projected_start();
    kernels::filter_combine(span_of(f.eigenvalues()), span_of(p.projected_start()).first(k), span_of(gain), t,
                            {coeff.data(), static_cast<std::size_t>(k)});
    return f.v_times(coeff);
}

double discrepancy(const NoisyProblem& p, double t) {
    require_time(t);
    return norm_from(moments(p, t), p.orthogonal_residual());
}

double discrepancy_derivative(const NoisyProblem& p, double t) {
    require_time(t);
    const auto m = moments(p, t);
    const double psi = norm_from(m, p.orthogonal_residual());
    if (psi == 0.0) raise(ErrorKind::DegenerateResidual, "psi(t) = 0; data are noise-free and in the range of A");
    return -m.m1 / psi;
}

double discrepancy_second_derivative(const NoisyProblem& p, double t) {
    require_time(t);
    const auto m = moments(p, t);
    const double psi = norm_from(m, p.orthogonal_residual());
    if (psi == 0.0) raise(ErrorKind::DegenerateResidual, "psi(t) = 0; data are noise-free and in the range of A");
    const double d1 = -m.m1 / psi;
    return (2.0 * m.m2 - d1 * d1) / psi;
}

NewtonResult newton_solve_t(const NoisyProblem& p, double c, double t0) {
    require_time(t0);
    if (!(c > 0.0)) raise(ErrorKind::DomainError, "C must be positive");
    const double target = c * p.delta();
    const double tol = kNewtonRelTol * target;
    require_attainable(p, target);

    const double r_perp = p.orthogonal_residual();
    auto phi = [&](double t) { return norm_from(moments(p, t), r_perp) - target; };

    NewtonResult out;
    double t = t0;
    double phi_t = phi(t);
    if (!(phi_t > 0.0)) {
        std::ostringstream os;
        os << "phi(t0) = " << phi_t << " must be positive (t0 = " << t0 << ")";
        raise(ErrorKind::PreconditionViolated, os.str());
    }
    out.trace.push_back(t);

    // Smallest point known to lie right of the root.
    double right = std::numeric_limits<double>::infinity();

    while (std::abs(phi_t) > tol) {
        if (out.iterations == kMaxNewtonIterations) {
            std::ostringstream os;
            os << "no convergence after " << kMaxNewtonIterations << " Newton steps; |phi| = " << std::abs(phi_t);
            raise(ErrorKind::IterationBudgetExceeded, os.str());
        }
        ++out.iterations;

        const auto m = moments(p, t);
        const double psi = norm_from(m, r_perp);
        const double slope = -m.m1 / psi;
        if (!(slope < 0.0)) raise(ErrorKind::DegenerateResidual, "psi is flat; A* f_delta vanishes numerically");

        double next = t - phi_t / slope;
        if (next >= right) next = 0.5 * (t + right);
        double phi_next = phi(next);

        if (phi_next < -tol) {
            // Overshoot: halve the step once, then fall back to bisection.
            right = next;
            ++out.safeguard_steps;
            next = t + 0.5 * (next - t);
            phi_next = phi(next);
            if (phi_next < -tol) {
                right = next;
                ++out.safeguard_steps;
                next = 0.5 * (t + right);
                phi_next = phi(next);
                if (phi_next < -tol) {
                    right = next;
                    next = t;
                    phi_next = phi_t;
                }
            }
        }
        t = next;
        phi_t = phi_next;
        out.trace.push_back(t);
    }
    out.t_delta = t;
    return out;
}

T0Choice choose_t0(const NoisyProblem& p, double c) {
    const double delta = p.delta();
    const double target = c * delta;
    const double psi0 = discrepancy(p, 0.0);
    if (!(psi0 > target)) raise(ErrorKind::PreconditionViolated, "psi(0) <= C*delta; no positive stopping time");
    require_attainable(p, target);

    const double r_perp = p.orthogonal_residual();
    auto psi = [&](double t) { return norm_from(moments(p, t), r_perp); };

    T0Choice out;
    double t = 10.0 * psi0 / delta;
    bool seen_above = false;  // psi - delta > delta occurred
    bool seen_below = false;  // psi - delta < 0 occurred
    bool accepted = false;
    while (out.probes < kMaxT0Probes) {
        ++out.probes;
        const double v = psi(t) - delta;
        if (v > 0.0 && v <= delta) {
            accepted = true;
            break;
        }
        if (v <= 0.0) {
            seen_below = true;
            t /= seen_above ? 3.0 : 10.0;
            continue;
        }
        seen_above = true;
        if (seen_below) {
            accepted = true;
            break;
        }
        t *= 3.0;
    }

    if (!accepted) {
        out.budget_exhausted = true;
        if (!(std::isfinite(t) && psi(t) > target)) {
            double lo = 0.0;
            double hi = std::isfinite(t) ? t : std::numeric_limits<double>::max();
            for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
                const double mid = 0.5 * (lo + hi);
                (psi(mid) > target ? lo : hi) = mid;
            }
            t = lo;
        }
    }

    // The probe band uses delta, Newton needs psi(t0) > C delta.
    while (!(psi(t) > target)) {
        t /= 3.0;
        ++out.target_shrinks;
        if (out.target_shrinks > 2000) {
            t = 0.0;
            break;
        }
    }
    out.t0 = t;
    return out;
}

SolveReport solve(const NoisyProblem& p, const StoppingRule& rule) {
    validate(rule);
    SolveReport report;
    report.rule_used = rule;

    if (const auto* a = std::get_if<APriori>(&rule)) {
        report.t_delta = a->c / std::pow(p.delta(), a->gamma);
    } else {
        const double c = std::get<Discrepancy>(rule).c;
        if (discrepancy(p, 0.0) <= c * p.delta()) {
            report.started_within_target = true;
            report.t_delta = 0.0;
            report.solution = p.u0();
            report.residual_norm = discrepancy(p, 0.0);
            return report;
        }
        require_attainable(p, c * p.delta());
        const T0Choice start = choose_t0(p, c);
        report.t0 = start.t0;
        report.t0_probes = start.probes;
        report.probe_budget_exhausted = start.budget_exhausted;

        NewtonResult newton = newton_solve_t(p, c, start.t0);
        report.t_delta = newton.t_delta;
        report.newton_iterations = newton.iterations;
        report.newton_trace = std::move(newton.trace);
        report.newton_safeguard_steps = newton.safeguard_steps;
    }
    report.solution = solution_at(p, report.t_delta);
    report.residual_norm = discrepancy(p, report.t_delta);
    return report;
}

Vector landweber_integrate(const NoisyProblem& p, double step, long long n_steps) {
    const auto& f = p.factorization();
    if (n_steps < 0) raise(ErrorKind::DomainError, "n_steps must be nonnegative");
    if (!(step > 0.0) || !(step * f.max_eigenvalue() < 2.0)) {
        std::ostringstream os;
        os << "step " << step << " outside (0, 2/max(lambda)) = (0, " << 2.0 / f.max_eigenvalue() << ")";
        raise(ErrorKind::UnstableStep, os.str());
    }
    if (n_steps == 0) return p.u0();

    const DenseMatrix a = f.dense();
    const Index n = f.cols();

    if (a.imag().isZero(0.0) && p.f_delta().imag().isZero(0.0) && p.u0().imag().isZero(0.0)) {
        const RealMatrix ar = a.real();
        const RealMatrix iteration = RealMatrix::Identity(n, n) - step * (ar.transpose() * ar);
        const RealVector shift = step * (ar.transpose() * p.f_delta().real());
        RealVector u = p.u0().real();
        RealVector next(n);
        for (long long s = 0; s < n_steps; ++s) {
            next.noalias() = iteration * u;
            u = next + shift;
        }
        return to_complex(u);
    }

    const kernels::RowMajorMatrix iteration =
        DenseMatrix::Identity(n, n) - step * (a.adjoint() * a);
    const Vector shift = step * (a.adjoint() * p.f_delta());

    Vector u = p.u0();
    Vector next(n);
    for (long long s = 0; s < n_steps; ++s) {
        kernels::gemv(iteration, span_of(u), {next.data(), static_cast<std::size_t>(n)});
        u = next + shift;
    }
    return u;
}

}  // namespace dsmg
