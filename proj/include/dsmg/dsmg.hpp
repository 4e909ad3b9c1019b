#pragma once

// DSM gradient method for A u = f_delta.
//
// The flow  u' = -A*(A u - f_delta),  u(0) = u0  has the closed form
//
//   u(t) = V [ exp(-t Lambda) V* u0 + g(Lambda, t) conj(S) U* f_delta ],
//   g(lambda, t) = (1 - exp(-t lambda)) / lambda,
//
// and its residual in the U basis is exp(-t Lambda) r0 with r0 = U*(A u0 - f_delta).
// The stopping time solves psi(t) = ||A u(t) - f_delta|| = C delta by Newton's
// method; psi is decreasing and strictly convex, so Newton started left of the
// root climbs monotonically to it.

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "dsmg/spectral.hpp"

namespace dsmg {

/// Factorization + noisy data + noise bound + starting point.
/// The factorization is shared so many noise realizations can reuse one SVD.
class NoisyProblem {
public:
    NoisyProblem(std::shared_ptr<const SpectralFactorization> factorization, Vector f_delta, double delta,
                 std::optional<Vector> u0 = std::nullopt);

    const SpectralFactorization& factorization() const noexcept { return *factorization_; }
    const std::shared_ptr<const SpectralFactorization>& shared_factorization() const noexcept {
        return factorization_;
    }
    const Vector& f_delta() const noexcept { return f_delta_; }
    double delta() const noexcept { return delta_; }
    const Vector& u0() const noexcept { return u0_; }

    /// h = U* f_delta
    const Vector& projected_data() const noexcept { return h_; }
    /// V* u0
    const Vector& projected_start() const noexcept { return v0_; }
    /// r0 = U*(A u0 - f_delta), length m
    const Vector& initial_residual() const noexcept { return r0_; }
    /// |r0_i|^2 over the first rank_dim() components
    const RealVector& residual_weights() const noexcept { return weights_; }
    /// ||r0_i|| over components beyond rank_dim(); the evolution never touches them
    double orthogonal_residual() const noexcept { return r_perp_; }
    /// inf_t psi(t): components with lambda = 0 or beyond rank_dim() never decay
    double residual_floor() const noexcept { return floor_; }

private:
    std::shared_ptr<const SpectralFactorization> factorization_;
    Vector f_delta_;
    double delta_;
    Vector u0_;
    Vector h_;
    Vector v0_;
    Vector r0_;
    RealVector weights_;
    double r_perp_ = 0.0;
    double floor_ = 0.0;
};

inline constexpr double kDefaultDiscrepancyC = 1.1;
inline constexpr double kDefaultAPrioriC = 1.0;
inline constexpr double kDefaultAPrioriGamma = 0.5;

/// Stop where ||A u(t) - f_delta|| = c * delta, 1 < c < 2.
struct Discrepancy {
    double c = kDefaultDiscrepancyC;
};

/// Stop at t = c / delta^gamma, c > 0, 0 < gamma < 1.
struct APriori {
    double c = kDefaultAPrioriC;
    double gamma = kDefaultAPrioriGamma;
};

using StoppingRule = std::variant<Discrepancy, APriori>;

/// Throws DomainError if the rule's constants are outside their admissible ranges.
void validate(const StoppingRule& rule);

struct SolveReport {
    double t_delta = 0.0;
    Vector solution;
    double residual_norm = 0.0;
    int newton_iterations = 0;
    int t0_probes = 0;
    StoppingRule rule_used;

    // diagnostics
    double t0 = 0.0;
    std::vector<double> newton_trace;  // t_0, t_1, ..., accepted iterates
    int newton_safeguard_steps = 0;
    bool started_within_target = false;  // psi(0) <= C delta; u0 returned unchanged
    bool probe_budget_exhausted = false;
};

inline constexpr int kMaxNewtonIterations = 100;
inline constexpr int kMaxT0Probes = 200;
inline constexpr double kNewtonRelTol = 1e-8;

/// (1 - e^{-t lambda}) / lambda, or t at lambda = 0. DomainError for negative arguments.
double evolution_filter(double lambda, double t);

/// u_delta(t). DomainError for t < 0.
Vector solution_at(const NoisyProblem& p, double t);

/// psi(t) = ||A u_delta(t) - f_delta||, evaluated spectrally.
double discrepancy(const NoisyProblem& p, double t);

/// psi'(t). DegenerateResidual if psi(t) = 0.
double discrepancy_derivative(const NoisyProblem& p, double t);

/// psi''(t) = (2 sum lambda^2 e^{-2t lambda}|r|^2 - psi'^2) / psi.
double discrepancy_second_derivative(const NoisyProblem& p, double t);

struct NewtonResult {
    double t_delta = 0.0;
    int iterations = 0;
    std::vector<double> trace;
    int safeguard_steps = 0;
};

/// Newton iteration for psi(t) = c * delta from a start with psi(t0) > c * delta.
/// Errors: UnattainableDiscrepancy (residual_floor() >= c delta), PreconditionViolated
/// (psi(t0) <= c delta), IterationBudgetExceeded.
NewtonResult newton_solve_t(const NoisyProblem& p, double c, double t0);

struct T0Choice {
    double t0 = 0.0;
    int probes = 0;
    bool budget_exhausted = false;
    int target_shrinks = 0;  // divisions by 3 needed to get psi(t0) > c delta
};

/// Starting point for newton_solve_t: start at 10 ||r0|| / delta and move by
/// factors of 10 and 3 until delta < psi(t0) <= 2 delta, then shrink by 3 until
/// psi(t0) > c delta. If the probe budget runs out, falls back to bisection on
/// [0, t_current] and sets budget_exhausted.
T0Choice choose_t0(const NoisyProblem& p, double c);

/// Stopping time from the rule, then u_delta(t_delta).
SolveReport solve(const NoisyProblem& p, const StoppingRule& rule);

/// n_steps of u <- u - step * A*(A u - f_delta) from u0 (explicit Euler on the flow).
/// UnstableStep unless 0 < step < 2 / max(lambda).
Vector landweber_integrate(const NoisyProblem& p, double step, long long n_steps);

}  // namespace dsmg
