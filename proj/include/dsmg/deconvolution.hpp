#pragma once

// Periodic deconvolution. Circular convolution with a kernel h is diagonal in
// the Fourier basis, A = diag(dft(h)), so the DSMG solver runs on the
// transformed data with U = V = I. The unnormalized DFT scales norms by
// sqrt(N), and the noise bound is scaled the same way before solving.

#include <iosfwd>
#include <string>
#include <vector>

#include "dsmg/dsmg.hpp"

namespace dsmg {

/// Samples f_0..f_{N-1} of an N-periodic signal.
using PeriodicSignal = RealVector;

struct CirculantProblem {
    PeriodicSignal kernel;    // h
    PeriodicSignal observed;  // g_delta
    double delta = 0.0;       // bound on ||g_delta - h*f|| in the signal domain
};

/// g_i = sum_j h_j f_{(i-j) mod N}. DimensionMismatch unless lengths agree.
PeriodicSignal circular_convolve(const PeriodicSignal& h, const PeriodicSignal& f);

inline constexpr double kMaxImaginaryResidue = 1e-6;

struct DeconvolutionResult {
    PeriodicSignal restored;
    /// report.solution and report.residual_norm are in the (unnormalized) Fourier domain.
    SolveReport report;
    double fourier_delta = 0.0;      // sqrt(N) * delta
    double imaginary_residue = 0.0;  // ||Im x|| / ||x|| before it was discarded
};

/// Solve diag(dft(h)) fhat = dft(g_delta) with the given rule and transform back.
/// DomainError if dft(h) vanishes identically; ComplexResidue if the inverse
/// transform has an imaginary part above 1e-6 of its norm.
DeconvolutionResult deconvolve_1d(const CirculantProblem& p, const StoppingRule& rule);

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // row-major

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0);

    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const noexcept { return pixels.size(); }

    RealVector flat() const;
    static GrayImage from_flat(const RealVector& v, int w, int h);
};

struct ImageDeconvolutionResult {
    GrayImage restored;       // clamped to [0, 1]
    RealVector unclamped;     // row-major solver output
    SolveReport report;
    double fourier_delta = 0.0;
    double imaginary_residue = 0.0;
};

/// 2-D periodic deblurring. The psf must have the observed image's size with its
/// center at pixel (0, 0). The noise bound is delta_rel * ||observed||.
ImageDeconvolutionResult deconvolve_2d(const GrayImage& observed, const GrayImage& psf, double delta_rel,
                                       const StoppingRule& rule);
/// Same with an absolute pixel-domain noise bound.
ImageDeconvolutionResult deconvolve_2d_absolute(const GrayImage& observed, const GrayImage& psf, double delta_abs,
                                                const StoppingRule& rule);

/// Periodic Gaussian centered at (0, 0), normalized to unit sum.
GrayImage gaussian_psf(int width, int height, double sigma);

/// Circularly shift so that pixel (width/2, height/2) lands on (0, 0) and
/// normalize to unit sum. DomainError if the sum is not positive.
GrayImage psf_to_origin(const GrayImage& centered_psf);

/// Circular 2-D convolution of image with psf (origin at (0, 0)), via the DFT.
GrayImage periodic_blur(const GrayImage& image, const GrayImage& psf);

/// Synthetic test target: a satellite-like body with panels and a dish on a dark
/// background, plus a few point sources. Deterministic; values in [0, 1].
GrayImage synthetic_target(int width, int height);

double relative_error(const RealVector& estimate, const RealVector& truth);

enum class PgmFormat { Ascii, Binary };  // P2, P5

/// MalformedFile (with byte offset) on parse errors; 8-bit maxval only.
GrayImage read_pgm(const std::string& path);
GrayImage read_pgm(std::istream& in, const std::string& name = "<stream>");
/// Pixels are clamped to [0, 1] and quantized to maxval 255.
void write_pgm(const GrayImage& image, const std::string& path, PgmFormat format = PgmFormat::Binary);
void write_pgm(const GrayImage& image, std::ostream& out, PgmFormat format = PgmFormat::Binary);

}  // namespace dsmg
