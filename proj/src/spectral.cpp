#include "dsmg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dsmg/errors.hpp"

namespace dsmg {

bool all_finite(const Vector& x) { return x.allFinite(); }
bool all_finite(const DenseMatrix& a) { return a.allFinite(); }

namespace {

void require_size(Index got, Index want, const char* what) {
    if (got != want) {
        std::ostringstream os;
        os << what << ": expected length " << want << ", got " << got;
        raise(ErrorKind::DimensionMismatch, os.str());
    }
}

template <typename Svd>
SpectralFactorization checked_factorization(const Svd& svd, const DenseMatrix& a) {
    if (svd.info() != Eigen::Success)
        raise(ErrorKind::FactorizationFailure, "SVD iteration did not converge");

    DenseMatrix u = svd.matrixU().template cast<Scalar>();
    DenseMatrix v = svd.matrixV().template cast<Scalar>();
    Vector s = svd.singularValues().template cast<Scalar>();
    if (!u.allFinite() || !v.allFinite() || !s.allFinite())
        raise(ErrorKind::FactorizationFailure, "SVD produced non-finite factors");

    const double m = static_cast<double>(a.rows());
    const double n = static_cast<double>(a.cols());
    if (unitarity_residual(u) > 1e-10 * m || unitarity_residual(v) > 1e-10 * n)
        raise(ErrorKind::FactorizationFailure, "SVD bases are not unitary to tolerance");

    SpectralFactorization f(std::move(u), std::move(s), std::move(v));
    const double scale = a.norm();
    if (scale > 0.0 && (f.dense() - a).norm() > 1e-10 * std::min(m, n) * scale)
        raise(ErrorKind::FactorizationFailure, "SVD reconstruction error exceeds tolerance");
    return f;
}

}  // namespace

SpectralFactorization::SpectralFactorization(DenseMatrix u, Vector diag, DenseMatrix v)
    : SpectralFactorization(std::optional<DenseMatrix>(std::move(u)), std::move(diag),
                            std::optional<DenseMatrix>(std::move(v)), -1, -1) {}

SpectralFactorization::SpectralFactorization(std::optional<DenseMatrix> u, Vector diag,
                                             std::optional<DenseMatrix> v, Index rows, Index cols)
    : u_(std::move(u)), v_(std::move(v)), diag_(std::move(diag)), rows_(rows), cols_(cols) {
    if (u_) {
        if (u_->rows() != u_->cols() || v_->rows() != v_->cols())
            raise(ErrorKind::DimensionMismatch, "bases must be square");
        rows_ = u_->rows();
        cols_ = v_->rows();
    }
    if (rows_ < 1 || cols_ < 1) raise(ErrorKind::DimensionMismatch, "factorization must be at least 1x1");
    require_size(diag_.size(), std::min(rows_, cols_), "diagonal");
    if (!diag_.allFinite()) raise(ErrorKind::DomainError, "diagonal has non-finite entries");

    lambda_ = diag_.cwiseAbs2();
    max_lambda_ = lambda_.size() > 0 ? lambda_.maxCoeff() : 0.0;
}

SpectralFactorization SpectralFactorization::identity_bases(Vector diag) {
    const Index n = diag.size();
    return SpectralFactorization(std::nullopt, std::move(diag), std::nullopt, n, n);
}

DenseMatrix SpectralFactorization::u_basis() const {
    return u_ ? *u_ : DenseMatrix::Identity(rows_, rows_);
}

DenseMatrix SpectralFactorization::v_basis() const {
    return v_ ? *v_ : DenseMatrix::Identity(cols_, cols_);
}

Vector SpectralFactorization::u_times(const Vector& x) const { return u_ ? Vector(*u_ * x) : x; }
Vector SpectralFactorization::u_adjoint_times(const Vector& y) const {
    return u_ ? Vector(u_->adjoint() * y) : y;
}
Vector SpectralFactorization::v_times(const Vector& x) const { return v_ ? Vector(*v_ * x) : x; }
Vector SpectralFactorization::v_adjoint_times(const Vector& y) const {
    return v_ ? Vector(v_->adjoint() * y) : y;
}

DenseMatrix SpectralFactorization::dense() const {
    const Index k = rank_dim();
    DenseMatrix s = DenseMatrix::Zero(rows_, cols_);
    s.diagonal().head(k) = diag_;
    return u_basis() * s * v_basis().adjoint();
}

SpectralFactorization factorize_svd(const DenseMatrix& a) {
    if (a.rows() < 1 || a.cols() < 1) raise(ErrorKind::DimensionMismatch, "matrix must be at least 1x1");
    if (!a.allFinite()) raise(ErrorKind::DomainError, "matrix has non-finite entries");
    if (a.imag().isZero(0.0)) return factorize_svd(RealMatrix(a.real()));
    Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return checked_factorization(svd, a);
}

SpectralFactorization factorize_svd(const RealMatrix& a) {
    if (a.rows() < 1 || a.cols() < 1) raise(ErrorKind::DimensionMismatch, "matrix must be at least 1x1");
    if (!a.allFinite()) raise(ErrorKind::DomainError, "matrix has non-finite entries");
    Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return checked_factorization(svd, a.cast<Scalar>());
}

SpectralFactorization from_diagonal(Vector d) {
    if (d.size() < 1) raise(ErrorKind::DimensionMismatch, "diagonal must be nonempty");
    return SpectralFactorization::identity_bases(std::move(d));
}

Vector apply(const SpectralFactorization& f, const Vector& x) {
    require_size(x.size(), f.cols(), "apply: x");
    const Index k = f.rank_dim();
    const Vector vx = f.v_adjoint_times(x);
    Vector sv = Vector::Zero(f.rows());
    sv.head(k) = f.diag().cwiseProduct(vx.head(k));
    return f.u_times(sv);
}

Vector adjoint_apply(const SpectralFactorization& f, const Vector& y) {
    require_size(y.size(), f.rows(), "adjoint_apply: y");
    const Index k = f.rank_dim();
    const Vector uy = f.u_adjoint_times(y);
    Vector su = Vector::Zero(f.cols());
    su.head(k) = f.diag().conjugate().cwiseProduct(uy.head(k));
    return f.v_times(su);
}

Vector minimal_norm_solution(const SpectralFactorization& f, const Vector& rhs, double rank_tol) {
    require_size(rhs.size(), f.rows(), "minimal_norm_solution: rhs");
    if (!(rank_tol > 0.0)) raise(ErrorKind::DomainError, "rank_tol must be positive");
    const Index k = f.rank_dim();
    const Vector h = f.u_adjoint_times(rhs);
    const double cutoff = rank_tol * f.max_eigenvalue();
    Vector coeff = Vector::Zero(f.cols());
    for (Index i = 0; i < k; ++i) {
        const double lam = f.eigenvalues()[i];
        if (lam > cutoff) coeff[i] = std::conj(f.diag()[i]) / lam * h[i];
    }
    return f.v_times(coeff);
}

double unitarity_residual(const DenseMatrix& q) {
    return (q.adjoint() * q - DenseMatrix::Identity(q.cols(), q.cols())).norm();
}

double condition_number(const SpectralFactorization& f) {
    const RealVector mags = f.diag().cwiseAbs();
    const double lo = mags.minCoeff();
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return mags.maxCoeff() / lo;
}

}  // namespace dsmg
