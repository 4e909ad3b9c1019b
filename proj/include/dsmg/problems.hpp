#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dsmg/types.hpp"

namespace dsmg {

/// Green's function of -u'' on [0, 1] with zero boundary values:
/// s(t-1) for s < t, t(s-1) otherwise. DomainError outside [0,1]^2.
double greens_kernel(double s, double t);

/// Where the exact solution u is sampled.
enum class SampleGrid {
    CellMidpoint,   // t_i = (i - 1/2)/N, the nodes of the Galerkin cells
    RightEndpoint,  // t_i = i/N
};

struct TestProblem {
    RealMatrix matrix;
    RealVector exact_solution;
    RealVector exact_rhs;
    std::string label;
};

/// Galerkin discretization of the second-derivative integral equation with
/// piecewise-constant basis functions on N cells of width h = 1/N:
/// off-diagonal entries h*K(midpoints), diagonal entries the exact cell integral.
/// kappa(A_100) = 1.2158e4.
TestProblem second_derivative_problem(int n, const std::function<double(double)>& u,
                                      SampleGrid grid = SampleGrid::CellMidpoint);

struct NoiseSpec {
    double delta_rel = 0.01;
    std::uint64_t seed = 0;
};

/// Standard normal samples: Box-Muller over std::mt19937_64, consuming the
/// 53 high bits of each draw. Both are fully specified, so the sequence is
/// reproducible across platforms up to libm rounding of log/sin/cos.
RealVector standard_normal(Index n, std::uint64_t seed);

struct NoisyRhs {
    RealVector b_delta;
    double delta_abs = 0.0;
};

/// b + e with e Gaussian, rescaled so that ||e|| = delta_rel * ||b||.
/// DomainError if ||b|| = 0 or delta_rel is not in (0, 1).
NoisyRhs add_noise(const RealVector& b, const NoiseSpec& spec);

}  // namespace dsmg
