#include "dsmg/problems.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dsmg/errors.hpp"

namespace dsmg {

double greens_kernel(double s, double t) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << "kernel arguments must lie in [0,1], got (" << s << ", " << t << ")";
        raise(ErrorKind::DomainError, os.str());
    }
    return s < t ? s * (t - 1.0) : t * (s - 1.0);
}

TestProblem second_derivative_problem(int n, const std::function<double(double)>& u, SampleGrid grid) {
    if (n < 2) raise(ErrorKind::DomainError, "N must be at least 2");
    const double h = 1.0 / n;

    TestProblem p;
    p.matrix.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const double mid_i = (i + 0.5) * h;
        for (int j = 0; j < i; ++j) {
            const double v = h * greens_kernel(mid_i, (j + 0.5) * h);
            p.matrix(i, j) = v;
            p.matrix(j, i) = v;
        }
        // Cell integral of K over [ih, (i+1)h]^2 divided by h; K is not
        // bilinear across the diagonal, so the midpoint value is off by h^2/6.
        const double k = i + 1.0;
        p.matrix(i, i) = h * h * ((k * k - k + 0.25) * h - (k - 2.0 / 3.0));
    }

    p.exact_solution.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = grid == SampleGrid::CellMidpoint ? (i + 0.5) * h : (i + 1.0) * h;
        p.exact_solution[i] = u(t);
    }
    p.exact_rhs = p.matrix * p.exact_solution;

    std::ostringstream label;
    label << "deriv2 N=" << n << (grid == SampleGrid::CellMidpoint ? " grid=midpoint" : " grid=endpoint");
    p.label = label.str();
    return p;
}

RealVector standard_normal(Index n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    constexpr double kScale = 0x1.0p-53;
    RealVector z(n);
    for (Index i = 0; i < n; i += 2) {
        const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * kScale;  // (0, 1]
        const double u2 = static_cast<double>(gen() >> 11) * kScale;          // [0, 1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        z[i] = r * std::cos(theta);
        if (i + 1 < n) z[i + 1] = r * std::sin(theta);
    }
    return z;
}

NoisyRhs add_noise(const RealVector& b, const NoiseSpec& spec) {
    if (!(spec.delta_rel > 0.0 && spec.delta_rel < 1.0)) raise(ErrorKind::DomainError, "delta_rel must lie in (0, 1)");
    const double b_norm = b.norm();
    if (!(b_norm > 0.0)) raise(ErrorKind::DomainError, "cannot scale noise relative to a zero right-hand side");

    RealVector e = standard_normal(b.size(), spec.seed);
    NoisyRhs out;
    out.delta_abs = spec.delta_rel * b_norm;
    e *= out.delta_abs / e.norm();
    out.b_delta = b + e;
    return out;
}

}  // namespace dsmg
