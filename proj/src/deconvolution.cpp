#include "dsmg/deconvolution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "dsmg/errors.hpp"
#include "dsmg/fourier.hpp"
#include "dsmg/kernels.hpp"

namespace dsmg {

namespace {

struct FlatSolve {
    RealVector restored;
    SolveReport report;
    double fourier_delta = 0.0;
    double imaginary_residue = 0.0;
};

// Shared 1-D / 2-D path: width = N, height = 1 gives the 1-D transform.
FlatSolve solve_diagonalized(const RealVector& kernel, const RealVector& observed, Index width, Index height,
                             double delta, const StoppingRule& rule) {
    if (kernel.size() != observed.size())
        raise(ErrorKind::DimensionMismatch, "kernel and observed data must have the same size");
    if (kernel.size() < 1) raise(ErrorKind::DimensionMismatch, "empty signal");
    if (!kernel.allFinite() || !observed.allFinite()) raise(ErrorKind::DomainError, "non-finite samples");
    const bool one_d = height == 1;

    Vector kernel_hat = one_d ? dft(kernel) : dft2(kernel, width, height);
    if (kernel_hat.cwiseAbs().maxCoeff() == 0.0) raise(ErrorKind::DomainError, "kernel spectrum is identically zero");
    Vector observed_hat = one_d ? dft(observed) : dft2(observed, width, height);

    FlatSolve out;
    out.fourier_delta = std::sqrt(static_cast<double>(observed.size())) * delta;
    auto factorization = std::make_shared<const SpectralFactorization>(from_diagonal(std::move(kernel_hat)));
    const NoisyProblem problem(factorization, std::move(observed_hat), out.fourier_delta);
    out.report = solve(problem, rule);

    const Vector x = one_d ? idft(out.report.solution) : idft2(out.report.solution, width, height);
    const double norm = x.norm();
    out.imaginary_residue = norm > 0.0 ? x.imag().norm() / norm : 0.0;
    if (out.imaginary_residue > kMaxImaginaryResidue) {
        std::ostringstream os;
        os << "restored signal has imaginary residue " << out.imaginary_residue << " of its norm";
        raise(ErrorKind::ComplexResidue, os.str());
    }
    out.restored = x.real();
    return out;
}

void require_same_shape(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height) {
        std::ostringstream os;
        os << "image is " << a.width << "x" << a.height << " but psf is " << b.width << "x" << b.height;
        raise(ErrorKind::DimensionMismatch, os.str());
    }
    if (a.width < 1 || a.height < 1) raise(ErrorKind::DimensionMismatch, "empty image");
}

}  // namespace

PeriodicSignal circular_convolve(const PeriodicSignal& h, const PeriodicSignal& f) {
    if (h.size() != f.size()) raise(ErrorKind::DimensionMismatch, "convolution operands differ in length");
    PeriodicSignal g(h.size());
    const auto n = static_cast<std::size_t>(h.size());
    kernels::circular_convolve({h.data(), n}, {f.data(), n}, {g.data(), n});
    return g;
}

DeconvolutionResult deconvolve_1d(const CirculantProblem& p, const StoppingRule& rule) {
    auto flat = solve_diagonalized(p.kernel, p.observed, p.kernel.size(), 1, p.delta, rule);
    DeconvolutionResult out;
    out.restored = std::move(flat.restored);
    out.report = std::move(flat.report);
    out.fourier_delta = flat.fourier_delta;
    out.imaginary_residue = flat.imaginary_residue;
    return out;
}

GrayImage::GrayImage(int w, int h, double fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

RealVector GrayImage::flat() const {
    return Eigen::Map<const RealVector>(pixels.data(), static_cast<Index>(pixels.size()));
}

GrayImage GrayImage::from_flat(const RealVector& v, int w, int h) {
    if (v.size() != static_cast<Index>(w) * h) raise(ErrorKind::DimensionMismatch, "pixel count != width*height");
    GrayImage img(w, h);
    std::copy(v.data(), v.data() + v.size(), img.pixels.begin());
    return img;
}

ImageDeconvolutionResult deconvolve_2d(const GrayImage& observed, const GrayImage& psf, double delta_rel,
                                       const StoppingRule& rule) {
    if (!(delta_rel > 0.0)) raise(ErrorKind::DomainError, "delta_rel must be positive");
    return deconvolve_2d_absolute(observed, psf, delta_rel * observed.flat().norm(), rule);
}

ImageDeconvolutionResult deconvolve_2d_absolute(const GrayImage& observed, const GrayImage& psf, double delta_abs,
                                                const StoppingRule& rule) {
    require_same_shape(observed, psf);
    auto flat = solve_diagonalized(psf.flat(), observed.flat(), observed.width, observed.height, delta_abs, rule);

    ImageDeconvolutionResult out;
    out.restored = GrayImage::from_flat(flat.restored.cwiseMax(0.0).cwiseMin(1.0), observed.width, observed.height);
    out.unclamped = std::move(flat.restored);
    out.report = std::move(flat.report);
    out.fourier_delta = flat.fourier_delta;
    out.imaginary_residue = flat.imaginary_residue;
    return out;
}

GrayImage gaussian_psf(int width, int height, double sigma) {
    if (width < 1 || height < 1) raise(ErrorKind::DimensionMismatch, "empty psf");
    if (!(sigma > 0.0)) raise(ErrorKind::DomainError, "sigma must be positive");
    GrayImage psf(width, height);
    double sum = 0.0;
    for (int y = 0; y < height; ++y) {
        const double dy = std::min(y, height - y);
        for (int x = 0; x < width; ++x) {
            const double dx = std::min(x, width - x);
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            psf.at(x, y) = v;
            sum += v;
        }
    }
    for (auto& v : psf.pixels) v /= sum;
    return psf;
}

GrayImage psf_to_origin(const GrayImage& centered_psf) {
    const int w = centered_psf.width;
    const int h = centered_psf.height;
    double sum = 0.0;
    for (double v : centered_psf.pixels) sum += v;
    if (!(sum > 0.0)) raise(ErrorKind::DomainError, "psf has no positive mass");

    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(((x - w / 2) % w + w) % w, ((y - h / 2) % h + h) % h) = centered_psf.at(x, y) / sum;
    return out;
}

GrayImage periodic_blur(const GrayImage& image, const GrayImage& psf) {
    require_same_shape(image, psf);
    const Vector product = dft2(image.flat(), image.width, image.height)
                               .cwiseProduct(dft2(psf.flat(), psf.width, psf.height));
    return GrayImage::from_flat(idft2(product, image.width, image.height).real(), image.width, image.height);
}

GrayImage synthetic_target(int width, int height) {
    if (width < 8 || height < 8) raise(ErrorKind::DimensionMismatch, "synthetic target needs at least 8x8 pixels");
    GrayImage img(width, height, 0.0);
    const double w = width;
    const double h = height;
    auto fill_rect = [&](double x0, double y0, double x1, double y1, double value) {
        for (int y = static_cast<int>(y0 * h); y < static_cast<int>(y1 * h); ++y)
            for (int x = static_cast<int>(x0 * w); x < static_cast<int>(x1 * w); ++x) img.at(x, y) = value;
    };

    // solar panels with darker cell seams
    fill_rect(0.12, 0.45, 0.40, 0.55, 0.5);
    fill_rect(0.60, 0.45, 0.88, 0.55, 0.5);
    for (double x = 0.19; x < 0.40; x += 0.07) fill_rect(x, 0.45, x + 0.015, 0.55, 0.3);
    for (double x = 0.67; x < 0.88; x += 0.07) fill_rect(x, 0.45, x + 0.015, 0.55, 0.3);
    // body and boom
    fill_rect(0.42, 0.36, 0.58, 0.64, 0.8);
    fill_rect(0.49, 0.30, 0.51, 0.36, 0.7);
    // dish
    const double cx = 0.5 * w, cy = 0.26 * h, r = 0.07 * w;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if ((x + 0.5 - cx) * (x + 0.5 - cx) + (y + 0.5 - cy) * (y + 0.5 - cy) < r * r) img.at(x, y) = 0.95;
    // point sources
    constexpr double kStars[][2] = {{0.10, 0.12}, {0.83, 0.20}, {0.25, 0.80}, {0.70, 0.86}, {0.92, 0.70}, {0.06, 0.60}};
    for (const auto& s : kStars) img.at(static_cast<int>(s[0] * w), static_cast<int>(s[1] * h)) = 1.0;
    return img;
}

double relative_error(const RealVector& estimate, const RealVector& truth) {
    if (estimate.size() != truth.size()) raise(ErrorKind::DimensionMismatch, "relative_error: size mismatch");
    const double denom = truth.norm();
    if (!(denom > 0.0)) raise(ErrorKind::DomainError, "relative_error: zero reference");
    return (estimate - truth).norm() / denom;
}

}  // namespace dsmg
