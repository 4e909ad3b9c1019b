#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "derivative_bench.hpp"

namespace dsmg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSolver = 3;

struct RuleOptions {
    std::string rule = "discrepancy";  // discrepancy | apriori
    std::optional<double> c;           // default 1.1 (discrepancy) or 1 (apriori)
    double gamma = 0.5;
};

struct SolveOptions {
    std::string matrix_file;
    std::string rhs_file;
    double delta = 0.0;
    RuleOptions rule;
    std::string u0 = "zero";  // zero | <path>
    std::string out_file;     // solution vector; empty = after the report on stdout
};

struct DeblurOptions {
    std::string input_file;
    std::string psf_file;
    double delta_rel = 0.01;
    RuleOptions rule;
    std::string out_file = "restored.pgm";
    std::string truth_file;
    std::string report_file;            // empty = stdout
    std::string psf_origin = "center";  // center | corner
    bool ascii = false;
};

struct SynthOptions {
    int size = 64;
    double sigma = 2.0;
    double delta_rel = 0.01;
    std::uint64_t seed = 1;
    std::string prefix = "synthetic";
};

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int run_derivative_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);
int run_deblur(const DeblurOptions& opts, std::ostream& out, std::ostream& err);
/// Writes <prefix>_target.pgm, <prefix>_psf.pgm (centered) and <prefix>_blurred.pgm.
int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace dsmg::cli
