#include "dsmg/kernels.hpp"

#include <cassert>
#include <vector>

namespace dsmg::kernels {

namespace {

// Below these sizes the fork/join cost dominates.
constexpr Index kParallelElements = 4096;
constexpr Index kParallelMatrixEntries = 16384;

DecayMoments chunk_moments(const double* lambda, const double* weight, Index begin, Index end, double t) {
    DecayMoments m;
    for (Index i = begin; i < end; ++i) {
        const double lam = lambda[i];
        const double w = std::exp(-2.0 * t * lam) * weight[i];
        m.m0 += w;
        m.m1 += lam * w;
        m.m2 += lam * lam * w;
    }
    return m;
}

}  // namespace

DecayMoments decay_moments(std::span<const double> lambda, std::span<const double> weight, double t) {
    assert(lambda.size() == weight.size());
    const auto n = static_cast<Index>(lambda.size());
    const Index chunks = (n + kReductionChunk - 1) / kReductionChunk;
    if (chunks <= 1) return chunk_moments(lambda.data(), weight.data(), 0, n, t);

    std::vector<DecayMoments> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) if (n >= kParallelElements)
    for (Index c = 0; c < chunks; ++c) {
        const Index begin = c * kReductionChunk;
        const Index end = std::min(n, begin + kReductionChunk);
        partial[static_cast<std::size_t>(c)] = chunk_moments(lambda.data(), weight.data(), begin, end, t);
    }
    DecayMoments total;
    for (const auto& p : partial) {
        total.m0 += p.m0;
        total.m1 += p.m1;
        total.m2 += p.m2;
    }
    return total;
}

void filter_combine(std::span<const double> lambda, std::span<const Scalar> a, std::span<const Scalar> b,
                    double t, std::span<Scalar> out) {
    const auto n = static_cast<Index>(lambda.size());
#pragma omp parallel for schedule(static) if (n >= kParallelElements)
    for (Index i = 0; i < n; ++i) {
        const double lam = lambda[i];
        out[i] = std::exp(-t * lam) * a[i] + decay_filter(lam, t) * b[i];
    }
}

void gemv(const RowMajorMatrix& m, std::span<const Scalar> x, std::span<Scalar> y) {
    const Index rows = m.rows();
    const Index cols = m.cols();
    const Scalar* data = m.data();
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelMatrixEntries)
    for (Index i = 0; i < rows; ++i) {
        const Scalar* row = data + i * cols;
        Scalar acc{0.0, 0.0};
        for (Index j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void circular_convolve(std::span<const double> h, std::span<const double> f, std::span<double> g) {
    const auto n = static_cast<Index>(h.size());
#pragma omp parallel for schedule(static) if (n * n >= kParallelMatrixEntries)
    for (Index i = 0; i < n; ++i) {
        double acc = 0.0;
        // j <= i: f index i-j; j > i: wraps to i-j+n
        for (Index j = 0; j <= i; ++j) acc += h[j] * f[i - j];
        for (Index j = i + 1; j < n; ++j) acc += h[j] * f[i - j + n];
        g[i] = acc;
    }
}

namespace serial {

DecayMoments decay_moments(std::span<const double> lambda, std::span<const double> weight, double t) {
    DecayMoments m;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double w = std::exp(-2.0 * t * lambda[i]) * weight[i];
        m.m0 += w;
        m.m1 += lambda[i] * w;
        m.m2 += lambda[i] * lambda[i] * w;
    }
    return m;
}

void filter_combine(std::span<const double> lambda, std::span<const Scalar> a, std::span<const Scalar> b,
                    double t, std::span<Scalar> out) {
    for (std::size_t i = 0; i < lambda.size(); ++i)
        out[i] = std::exp(-t * lambda[i]) * a[i] + decay_filter(lambda[i], t) * b[i];
}

void gemv(const RowMajorMatrix& m, std::span<const Scalar> x, std::span<Scalar> y) {
    for (Index i = 0; i < m.rows(); ++i) {
        Scalar acc{0.0, 0.0};
        for (Index j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
}

void circular_convolve(std::span<const double> h, std::span<const double> f, std::span<double> g) {
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += h[j] * f[(i + n - j) % n];
        g[i] = acc;
    }
}

}  // namespace serial

}  // namespace dsmg::kernels
