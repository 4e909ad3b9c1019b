#include "dsmg/fourier.hpp"

#include <fftw3.h>

#include <mutex>

#include "dsmg/errors.hpp"

namespace dsmg {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class FftwBuffer {
public:
    explicit FftwBuffer(Index n) : data_(fftw_alloc_complex(static_cast<std::size_t>(n))) {
        if (!data_) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data_); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* get() const noexcept { return data_; }
    Scalar* as_scalar() const noexcept { return reinterpret_cast<Scalar*>(data_); }

private:
    fftw_complex* data_;
};

// Plans are made per call with FFTW_ESTIMATE on freshly allocated (and so
// identically aligned) buffers, which keeps results bit-reproducible.
Vector transform(const Vector& x, Index n0, Index n1, int sign) {
    const Index n = x.size();
    FftwBuffer in(n);
    FftwBuffer out(n);
    std::copy(x.data(), x.data() + n, in.as_scalar());

    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = n1 == 0 ? fftw_plan_dft_1d(static_cast<int>(n0), in.get(), out.get(), sign, FFTW_ESTIMATE)
                       : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), in.get(), out.get(), sign,
                                          FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return Eigen::Map<const Vector>(out.as_scalar(), n);
}

void require_grid(Index size, Index width, Index height) {
    if (width < 1 || height < 1 || size != width * height)
        raise(ErrorKind::DimensionMismatch, "2-D transform size does not match width*height");
}

}  // namespace

Vector dft(const Vector& x) {
    if (x.size() < 1) raise(ErrorKind::DimensionMismatch, "DFT of an empty sequence");
    return transform(x, x.size(), 0, FFTW_FORWARD);
}

Vector dft(const RealVector& x) { return dft(Vector(x.cast<Scalar>())); }

Vector idft(const Vector& x) {
    if (x.size() < 1) raise(ErrorKind::DimensionMismatch, "DFT of an empty sequence");
    return transform(x, x.size(), 0, FFTW_BACKWARD) / static_cast<double>(x.size());
}

Vector dft2(const Vector& x, Index width, Index height) {
    require_grid(x.size(), width, height);
    return transform(x, height, width, FFTW_FORWARD);
}

Vector dft2(const RealVector& x, Index width, Index height) { return dft2(Vector(x.cast<Scalar>()), width, height); }

Vector idft2(const Vector& x, Index width, Index height) {
    require_grid(x.size(), width, height);
    return transform(x, height, width, FFTW_BACKWARD) / static_cast<double>(x.size());
}

}  // namespace dsmg
