#pragma once

#include "dsmg/types.hpp"

namespace dsmg {

/// Unnormalized forward DFT: X_k = sum_j x_j exp(-2 pi i jk/N). O(N log N).
Vector dft(const Vector& x);
Vector dft(const RealVector& x);
/// Inverse of dft(); divides by N.
Vector idft(const Vector& x);

/// 2-D transforms of a row-major height x width array (index y*width + x).
Vector dft2(const Vector& x, Index width, Index height);
Vector dft2(const RealVector& x, Index width, Index height);
Vector idft2(const Vector& x, Index width, Index height);

}  // namespace dsmg
