#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dsmg/dsmg.hpp"
#include "dsmg/errors.hpp"
#include "support.hpp"

using namespace dsmg;

namespace {

std::shared_ptr<const SpectralFactorization> diag_factorization(std::initializer_list<double> d) {
    Vector v(static_cast<Index>(d.size()));
    Index i = 0;
    for (double x : d) v[i++] = x;
    return std::make_shared<const SpectralFactorization>(from_diagonal(v));
}

Vector vec(std::initializer_list<double> d) {
    Vector v(static_cast<Index>(d.size()));
    Index i = 0;
    for (double x : d) v[i++] = x;
    return v;
}

NoisyProblem scalar_problem(double s, double f, double delta) {
    return NoisyProblem(diag_factorization({s}), vec({f}), delta);
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no dsmg::Error thrown";
    return ErrorKind::DomainError;
}

}  // namespace

TEST(EvolutionFilter, ClosedFormCases) {
    EXPECT_EQ(evolution_filter(0.0, 7.0), 7.0);
    EXPECT_EQ(evolution_filter(2.0, 0.0), 0.0);
    EXPECT_NEAR(evolution_filter(1.0, 1.0), 1.0 - std::exp(-1.0), 1e-16);
}

TEST(EvolutionFilter, SmallLambdaMatchesSeries) {
    const long double lambda = 1e-9L;
    const long double t = 1.0L;
    long double sum = 0.0L;
    long double term = t;  // t^{k+1} (-lambda)^k / (k+1)!
    for (int k = 0; k < 200; ++k) {
        sum += term;
        term *= -lambda * t / (k + 2);
    }
    EXPECT_NEAR(evolution_filter(1e-9, 1.0), static_cast<double>(sum), 1e-15);
}

TEST(EvolutionFilter, RejectsNegativeArguments) {
    EXPECT_EQ(kind_of([] { evolution_filter(-1.0, 1.0); }), ErrorKind::DomainError);
    EXPECT_EQ(kind_of([] { evolution_filter(1.0, -1.0); }), ErrorKind::DomainError);
}

TEST(Discrepancy, ScalarClosedForm) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    EXPECT_NEAR(discrepancy(p, std::log(10.0)), 0.1, 1e-15);
    EXPECT_NEAR(discrepancy_derivative(p, std::log(10.0)), -0.1, 1e-15);
    EXPECT_NEAR(discrepancy_second_derivative(p, std::log(10.0)), 0.1, 1e-14);
}

TEST(Discrepancy, ScalarStoppingTime) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    const auto r = solve(p, Discrepancy{1.5});
    EXPECT_NEAR(r.t_delta, std::log(1.0 / 0.015), 1e-8 * std::log(1.0 / 0.015));
    EXPECT_LE(r.newton_iterations, 30);
    EXPECT_NEAR(r.solution[0].real(), 1.0 - 0.015, 1e-9);
}

TEST(Discrepancy, TwoByTwoMatchesBisectionOracle) {
    const NoisyProblem p(diag_factorization({1.0, 0.1}), vec({1.0, 0.5}), 0.02);
    const double target = 1.1 * 0.02;
    auto psi = [](double t) {
        const double a = std::exp(-t);
        const double b = 0.5 * std::exp(-0.01 * t);
        return std::sqrt(a * a + b * b);
    };
    double lo = 0.0, hi = 1e4;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (psi(mid) > target ? lo : hi) = mid;
    }
    const auto r = solve(p, Discrepancy{1.1});
    EXPECT_NEAR(r.t_delta, lo, 1e-7 * lo);
    EXPECT_NEAR(r.residual_norm, target, 1e-8 * target);
    for (double t : {0.0, 1.0, 10.0, 300.0}) EXPECT_NEAR(discrepancy(p, t), psi(t), 1e-15);
}

TEST(Discrepancy, DerivativesMatchFiniteDifferences) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = dsmg::testing::random_instance(6, 0.05, 1.0, 0.05, rng);
        const auto& p = *inst.problem;
        for (double t : {0.5, 3.0, 20.0}) {
            const double h = 1e-4 * t;
            const double fd1 = (discrepancy(p, t + h) - discrepancy(p, t - h)) / (2 * h);
            const double fd2 = (discrepancy(p, t + h) - 2 * discrepancy(p, t) + discrepancy(p, t - h)) / (h * h);
            EXPECT_NEAR(discrepancy_derivative(p, t), fd1, 1e-6 * std::abs(fd1) + 1e-12);
            EXPECT_NEAR(discrepancy_second_derivative(p, t), fd2, 1e-3 * std::abs(fd2) + 1e-9);
            EXPECT_GT(discrepancy_second_derivative(p, t), 0.0);
        }
    }
}

TEST(Discrepancy, DerivativeOfZeroResidualIsDegenerate) {
    const auto p = scalar_problem(1.0, 0.0, 0.01);
    EXPECT_EQ(kind_of([&] { discrepancy_derivative(p, 1.0); }), ErrorKind::DegenerateResidual);
}

TEST(Newton, TraceIsNondecreasingAndHitsTarget) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = dsmg::testing::random_instance(8, 1e-3, 1.0, 0.02, rng);
        const auto r = solve(*inst.problem, Discrepancy{1.2});
        const double target = 1.2 * inst.problem->delta();
        EXPECT_NEAR(r.residual_norm, target, 1e-8 * target);
        for (std::size_t i = 1; i < r.newton_trace.size(); ++i) EXPECT_GE(r.newton_trace[i], r.newton_trace[i - 1]);
    }
}

TEST(Newton, StartRightOfRootIsRejected) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    EXPECT_EQ(kind_of([&] { newton_solve_t(p, 1.5, 10.0); }), ErrorKind::PreconditionViolated);
}

TEST(Newton, UnattainableTargetIsReported) {
    // the second component lies outside the range of A and never decays
    const NoisyProblem p(diag_factorization({1.0, 0.0}), vec({1.0, 0.5}), 0.1);
    EXPECT_EQ(kind_of([&] { solve(p, Discrepancy{1.5}); }), ErrorKind::UnattainableDiscrepancy);
    EXPECT_DOUBLE_EQ(p.residual_floor(), 0.5);
}

TEST(ChooseT0, StartsInsideBand) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    const auto choice = choose_t0(p, 1.5);
    EXPECT_GT(discrepancy(p, choice.t0), 1.5 * 0.01);
    EXPECT_FALSE(choice.budget_exhausted);
}

TEST(ChooseT0, ImmediateAcceptanceUsesOneProbe) {
    // psi(10/delta) = exp(-s^2 * 10/delta) = 1.5 delta
    const double delta = 0.01;
    const double s = std::sqrt(-std::log(1.5 * delta) * delta / 10.0);
    const auto p = scalar_problem(s, 1.0, delta);
    const auto choice = choose_t0(p, 1.2);
    EXPECT_EQ(choice.probes, 1);
    EXPECT_NEAR(choice.t0, 10.0 / delta, 1e-9);
}

TEST(Solve, ResidualAlreadyWithinTargetReturnsStart) {
    const auto p = scalar_problem(1.0, 0.005, 0.01);
    const auto r = solve(p, Discrepancy{1.1});
    EXPECT_TRUE(r.started_within_target);
    EXPECT_EQ(r.t_delta, 0.0);
    EXPECT_EQ(r.solution[0], Scalar(0.0));
}

TEST(Solve, DataOrthogonalToRange) {
    // A* f = 0: psi is constant and equal to ||f||
    const NoisyProblem inside(diag_factorization({1.0, 0.0}), vec({0.0, 1.0}), 1.0);
    EXPECT_TRUE(solve(inside, Discrepancy{1.1}).started_within_target);
    const NoisyProblem outside(diag_factorization({1.0, 0.0}), vec({0.0, 1.0}), 0.5);
    EXPECT_EQ(kind_of([&] { solve(outside, Discrepancy{1.1}); }), ErrorKind::UnattainableDiscrepancy);
}

TEST(Solve, APrioriTime) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    const auto r = solve(p, APriori{1.0, 0.5});
    EXPECT_DOUBLE_EQ(r.t_delta, 10.0);
    EXPECT_NEAR(r.solution[0].real(), 1.0 - std::exp(-10.0), 1e-15);
}

TEST(Solve, RuleValidation) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    EXPECT_EQ(kind_of([&] { solve(p, Discrepancy{1.0}); }), ErrorKind::DomainError);
    EXPECT_EQ(kind_of([&] { solve(p, Discrepancy{2.0}); }), ErrorKind::DomainError);
    EXPECT_EQ(kind_of([&] { solve(p, APriori{1.0, 1.0}); }), ErrorKind::DomainError);
    EXPECT_EQ(kind_of([&] { solve(p, APriori{0.0, 0.5}); }), ErrorKind::DomainError);
}

TEST(Solve, NonzeroStartEntersClosedForm) {
    const NoisyProblem p(diag_factorization({2.0}), vec({1.0}), 0.01, vec({3.0}));
    const double t = 0.3;
    const double expected = std::exp(-4.0 * t) * 3.0 + evolution_filter(4.0, t) * 2.0;
    EXPECT_NEAR(solution_at(p, t)[0].real(), expected, 1e-15);
}

TEST(Problem, RejectsBadInput) {
    const auto f = diag_factorization({1.0, 1.0});
    EXPECT_EQ(kind_of([&] { NoisyProblem(f, vec({1.0}), 0.1); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { NoisyProblem(f, vec({1.0, 1.0}), 0.0); }), ErrorKind::DomainError);
    EXPECT_EQ(kind_of([&] { NoisyProblem(f, vec({1.0, 1.0}), 0.1, vec({1.0})); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { NoisyProblem(f, vec({1.0, std::nan("")}), 0.1); }), ErrorKind::DomainError);
}

TEST(Landweber, ScalarMatchesExponential) {
    const auto p = scalar_problem(1.0, 1.0, 0.01);
    const Vector u = landweber_integrate(p, 1e-4, 10000);
    EXPECT_NEAR(u[0].real(), 1.0 - std::exp(-1.0), 1e-4);
    EXPECT_NEAR(u[0].real(), 1.0 - std::pow(1.0 - 1e-4, 10000), 1e-12);
}

TEST(Landweber, RandomMatrixMatchesClosedForm) {
    std::mt19937_64 rng(8);
    const auto inst = dsmg::testing::random_instance(6, 0.3, 1.0, 0.01, rng);
    const auto& p = *inst.problem;
    const double step = 1e-4 / p.factorization().max_eigenvalue();
    const long long n = 20000;
    const Vector u = landweber_integrate(p, step, n);
    EXPECT_LT(dsmg::testing::rel_diff(u, solution_at(p, step * n)), 1e-3);
}

TEST(Landweber, UnstableStepIsRejected) {
    const auto p = scalar_problem(2.0, 1.0, 0.01);
    EXPECT_EQ(kind_of([&] { landweber_integrate(p, 0.5, 10); }), ErrorKind::UnstableStep);
    EXPECT_EQ(landweber_integrate(p, 0.1, 0)[0], Scalar(0.0));
}

TEST(Flow, ErrorDecreasesWithExactData) {
    std::mt19937_64 rng(9);
    const RealMatrix a = dsmg::testing::random_matrix(6, 1e-3, 1.0, rng);
    const RealVector y = dsmg::testing::random_vector(6, rng);
    auto fact = std::make_shared<const SpectralFactorization>(factorize_svd(a));
    const NoisyProblem p(fact, to_complex(a * y), 1e-12);
    double prev = std::numeric_limits<double>::infinity();
    for (double t : {0.0, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e8}) {
        const double err = (solution_at(p, t) - to_complex(y)).norm();
        EXPECT_LE(err, prev * (1 + 1e-12));
        prev = err;
    }
    EXPECT_LT(prev / y.norm(), 1e-6);
}

TEST(Flow, APrioriConvergesAsNoiseVanishes) {
    std::mt19937_64 rng(10);
    const RealMatrix a = dsmg::testing::random_matrix(6, 1e-2, 1.0, rng);
    const RealVector y = dsmg::testing::random_vector(6, rng);
    const RealVector f = a * y;
    const RealVector e = dsmg::testing::random_vector(6, rng).normalized();
    auto fact = std::make_shared<const SpectralFactorization>(factorize_svd(a));
    double prev = std::numeric_limits<double>::infinity();
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const NoisyProblem p(fact, to_complex(f + delta * e), delta);
        const double err = (solve(p, APriori{1.0, 0.5}).solution - to_complex(y)).norm();
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(Discrepancy, TwoByTwoUnitDataMatchesBisectionOracle) {
    const NoisyProblem p(diag_factorization({1.0, 0.1}), vec({1.0, 1.0}), 0.05);
    const double target = 1.1 * 0.05;
    auto phi = [&](double t) { return std::exp(-2.0 * t) + std::exp(-0.02 * t) - target * target; };
    double lo = 0.0, hi = 1e3;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) > 0 ? lo : hi) = mid;
    }
    const auto r = newton_solve_t(p, 1.1, choose_t0(p, 1.1).t0);
    EXPECT_NEAR(r.t_delta, lo, 1e-7);
}

TEST(Discrepancy, EqualsRecomputedResidualOnRectangularSystem) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> nd;
    RealMatrix a(5, 3);
    for (auto& v : a.reshaped()) v = nd(rng);
    const RealVector f = dsmg::testing::random_vector(5, rng);
    const RealVector u0 = dsmg::testing::random_vector(3, rng);
    auto fact = std::make_shared<const SpectralFactorization>(factorize_svd(a));
    const NoisyProblem p(fact, to_complex(f), 0.1, to_complex(u0));
    for (double t : {0.0, 0.1, 1.0, 10.0}) {
        const double direct = (dsmg::apply(*fact, solution_at(p, t)) - to_complex(f)).norm();
        EXPECT_NEAR(discrepancy(p, t), direct, 1e-10 * direct);
    }
    EXPECT_LT((solution_at(p, 0.0) - to_complex(u0)).norm(), 1e-14);
}

TEST(Flow, ExactDataConvergesToMinimalNormSolution) {
    std::mt19937_64 rng(13);
    const RealMatrix a = dsmg::testing::random_matrix(6, 1e-2, 1.0, rng);
    const RealVector y = dsmg::testing::random_vector(6, rng);
    auto fact = std::make_shared<const SpectralFactorization>(factorize_svd(a));
    const NoisyProblem p(fact, to_complex(a * y), 1e-12);
    const Vector ref = minimal_norm_solution(*fact, p.f_delta());
    const double lambda_min = fact->eigenvalues().minCoeff();
    double prev = std::numeric_limits<double>::infinity();
    // beyond t ~ 30 / lambda_min the error is at roundoff level
    for (int k = -1; k <= 1; ++k) {
        const double err = (solution_at(p, std::pow(10.0, k) / lambda_min) - ref).norm();
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(Landweber, ComplexOperatorMatchesClosedForm) {
    Vector d(2);
    d << Scalar(0.0, 1.0), Scalar(0.5, 0.5);
    auto fact = std::make_shared<const SpectralFactorization>(from_diagonal(d));
    Vector f(2);
    f << Scalar(1.0, -1.0), Scalar(0.3, 0.2);
    const NoisyProblem p(fact, f, 0.01);
    const Vector u = landweber_integrate(p, 1e-4, 20000);
    EXPECT_LT(dsmg::testing::rel_diff(u, solution_at(p, 2.0)), 1e-3);
}
