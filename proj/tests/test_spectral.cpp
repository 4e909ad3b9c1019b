#include <gtest/gtest.h>

#include <random>

#include "dsmg/errors.hpp"
#include "dsmg/spectral.hpp"
#include "support.hpp"

using namespace dsmg;

TEST(Spectral, IdentityFactorization) {
    const auto f = factorize_svd(RealMatrix(RealMatrix::Identity(4, 4)));
    EXPECT_NEAR((f.dense() - DenseMatrix::Identity(4, 4)).norm(), 0.0, 1e-14);
    EXPECT_NEAR(condition_number(f), 1.0, 1e-14);
}

TEST(Spectral, DiagonalAppliesEntrywise) {
    Vector d(2);
    d << 3.0, 2.0;
    const auto f = from_diagonal(d);
    EXPECT_TRUE(f.has_identity_bases());
    Vector x(2);
    x << 1.0, -1.0;
    const Vector y = dsmg::apply(f, x);
    EXPECT_EQ(y[0], Scalar(3.0));
    EXPECT_EQ(y[1], Scalar(-2.0));
    EXPECT_EQ(f.eigenvalues()[0], 9.0);
}

TEST(Spectral, AdjointConjugatesDiagonal) {
    Vector d(1);
    d << Scalar(0.0, 2.0);
    const auto f = from_diagonal(d);
    Vector y(1);
    y << 1.0;
    EXPECT_EQ(adjoint_apply(f, y)[0], Scalar(0.0, -2.0));
}

TEST(Spectral, RandomRectangularMatchesDense) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    DenseMatrix a(5, 4);
    for (Index j = 0; j < 4; ++j)
        for (Index i = 0; i < 5; ++i) a(i, j) = {nd(rng), nd(rng)};
    const auto f = factorize_svd(a);
    EXPECT_EQ(f.rows(), 5);
    EXPECT_EQ(f.cols(), 4);
    EXPECT_LT((f.dense() - a).norm(), 1e-12 * a.norm());
    EXPECT_LT(unitarity_residual(f.u_basis()), 1e-12);
    EXPECT_LT(unitarity_residual(f.v_basis()), 1e-12);

    Vector x(4);
    for (auto& v : x) v = {nd(rng), nd(rng)};
    EXPECT_LT((dsmg::apply(f, x) - a * x).norm(), 1e-12 * (a * x).norm());
    Vector y(5);
    for (auto& v : y) v = {nd(rng), nd(rng)};
    EXPECT_LT((adjoint_apply(f, y) - a.adjoint() * y).norm(), 1e-12 * y.norm() * a.norm());
}

TEST(Spectral, MinimalNormIgnoresNullSpace) {
    Vector d(2);
    d << 2.0, 0.0;
    const auto f = from_diagonal(d);
    Vector rhs(2);
    rhs << 4.0, 1.0;
    const Vector u = minimal_norm_solution(f, rhs);
    EXPECT_EQ(u[0], Scalar(2.0));
    EXPECT_EQ(u[1], Scalar(0.0));
}

TEST(Spectral, MinimalNormAgreesWithPseudoInverse) {
    std::mt19937_64 rng(4);
    const RealMatrix a = dsmg::testing::random_matrix(6, 0.1, 1.0, rng);
    const RealVector b = dsmg::testing::random_vector(6, rng);
    const auto f = factorize_svd(a);
    const RealVector ref = a.completeOrthogonalDecomposition().pseudoInverse() * b;
    EXPECT_LT((minimal_norm_solution(f, to_complex(b)) - to_complex(ref)).norm(), 1e-10 * ref.norm());
}

TEST(Spectral, ComposedBasesReproduceOperator) {
    std::mt19937_64 rng(6);
    const RealMatrix a = dsmg::testing::random_matrix(5, 0.01, 1.0, rng);
    const auto f = factorize_svd(a);
    const Vector x = to_complex(dsmg::testing::random_vector(5, rng));
    Vector coeff = f.v_adjoint_times(x);
    coeff = coeff.cwiseProduct(f.diag());
    EXPECT_LT((f.u_times(coeff) - a * x).norm(), 1e-12);
}

TEST(Spectral, RejectsMismatchedShapes) {
    Vector d(2);
    d << 1.0, 1.0;
    EXPECT_THROW(SpectralFactorization(DenseMatrix::Identity(3, 3), d, DenseMatrix::Identity(3, 3)), Error);
    const auto f = from_diagonal(d);
    EXPECT_THROW(dsmg::apply(f, Vector::Ones(3)), Error);
}

TEST(Spectral, RejectsNonFiniteMatrix) {
    RealMatrix a = RealMatrix::Identity(2, 2);
    a(0, 1) = std::nan("");
    try {
        factorize_svd(a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::DomainError || e.kind() == ErrorKind::FactorizationFailure);
    }
}
