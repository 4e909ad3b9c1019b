#pragma once

#include <optional>

#include "dsmg/types.hpp"

namespace dsmg {

/// A = U S V* with unitary U (m x m), V (n x n) and diagonal S holding
/// min(m, n) possibly complex entries.
///
/// Identity bases are stored implicitly so that DFT-diagonalized problems of
/// size W*H never materialize a (W*H)^2 matrix.
class SpectralFactorization {
public:
    /// Dense bases. Throws DimensionMismatch unless u is m x m, v is n x n,
    /// diag has min(m, n) entries.
    SpectralFactorization(DenseMatrix u, Vector diag, DenseMatrix v);

    /// U = V = I, square.
    static SpectralFactorization identity_bases(Vector diag);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    /// min(rows, cols), the length of diag().
    Index rank_dim() const noexcept { return diag_.size(); }

    const Vector& diag() const noexcept { return diag_; }
    /// lambda_i = |s_i|^2, the spectrum of A*A restricted to the first rank_dim() directions.
    const RealVector& eigenvalues() const noexcept { return lambda_; }
    double max_eigenvalue() const noexcept { return max_lambda_; }

    bool has_identity_bases() const noexcept { return !u_.has_value(); }

    DenseMatrix u_basis() const;
    DenseMatrix v_basis() const;

    Vector u_times(const Vector& x) const;          // U x
    Vector u_adjoint_times(const Vector& y) const;  // U* y
    Vector v_times(const Vector& x) const;          // V x
    Vector v_adjoint_times(const Vector& y) const;  // V* y

    /// U S V* as a dense matrix.
    DenseMatrix dense() const;

private:
    SpectralFactorization(std::optional<DenseMatrix> u, Vector diag, std::optional<DenseMatrix> v, Index rows,
                          Index cols);

    std::optional<DenseMatrix> u_;
    std::optional<DenseMatrix> v_;
    Vector diag_;
    RealVector lambda_;
    double max_lambda_ = 0.0;
    Index rows_ = 0;
    Index cols_ = 0;
};

/// SVD of a dense matrix. diag is real, nonnegative and nonincreasing.
/// Throws FactorizationFailure if the SVD fails or its unitarity/reconstruction
/// checks do not hold, DomainError for non-finite input.
SpectralFactorization factorize_svd(const DenseMatrix& a);
SpectralFactorization factorize_svd(const RealMatrix& a);

/// U = V = I, diag = d kept in its given (unsorted, complex) order.
SpectralFactorization from_diagonal(Vector d);

/// A x
Vector apply(const SpectralFactorization& f, const Vector& x);
/// A* y = V conj(S) U* y
Vector adjoint_apply(const SpectralFactorization& f, const Vector& y);

inline constexpr double kDefaultRankTol = 1e-12;

/// Minimal-norm least-squares solution V diag(g) U* f with g_i = conj(s_i)/lambda_i
/// for lambda_i > rank_tol * max(lambda) and 0 otherwise.
Vector minimal_norm_solution(const SpectralFactorization& f, const Vector& rhs, double rank_tol = kDefaultRankTol);

/// Frobenius norm of Q*Q - I.
double unitarity_residual(const DenseMatrix& q);

/// sigma_max / sigma_min over the diagonal magnitudes (infinity if any is zero).
double condition_number(const SpectralFactorization& f);

}  // namespace dsmg
