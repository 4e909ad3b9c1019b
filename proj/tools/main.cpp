#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dsmg/errors.hpp"

namespace {

void add_rule_options(CLI::App* cmd, dsmg::cli::RuleOptions& rule) {
    cmd->add_option("--rule", rule.rule, "Stopping rule")->check(CLI::IsMember({"discrepancy", "apriori"}));
    cmd->add_option("--C", rule.c, "Rule constant (default 1.1 for discrepancy, 1 for apriori)");
    cmd->add_option("--gamma", rule.gamma, "A priori exponent in (0, 1)");
}

void apply_thread_env() {
    if (const char* env = std::getenv("DSMG_NUM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"Dynamical systems method (gradient flow) for ill-posed linear systems"};
    app.require_subcommand(1);

    dsmg::cli::SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve A u = f_delta read from text files");
    solve_cmd->add_option("matrix", solve.matrix_file, "Matrix file (\"m n\" header, then rows)")->required();
    solve_cmd->add_option("rhs", solve.rhs_file, "Right-hand side file (\"m 1\" header)")->required();
    solve_cmd->add_option("--delta", solve.delta, "Absolute noise bound ||f_delta - f||")->required();
    solve_cmd->add_option("--u0", solve.u0, "Initial guess: zero or a vector file");
    solve_cmd->add_option("--out", solve.out_file, "Write the solution vector here");
    add_rule_options(solve_cmd, solve.rule);

    dsmg::cli::BenchConfig bench;
    std::string bench_u = "sin_2pi";
    std::string bench_seeds = "0-9";
    std::string bench_grid = "midpoint";
    auto* bench_cmd = app.add_subcommand("derivative-bench", "DSMG vs variational regularization on the derivative problem");
    bench_cmd->add_option("--N", bench.sizes, "Problem sizes")->delimiter(',');
    bench_cmd->add_option("--u", bench_u, "Exact solution")->check(CLI::IsMember({"sin_pi", "sin_2pi"}));
    bench_cmd->add_option("--delta-rel", bench.delta_rel, "Relative noise level");
    bench_cmd->add_option("--seeds", bench_seeds, "Seed list, e.g. 0-9 or 1,4,7");
    bench_cmd->add_option("--C", bench.c, "Discrepancy constant in (1, 2)");
    bench_cmd->add_option("--grid", bench_grid, "Kernel sampling")->check(CLI::IsMember({"midpoint", "endpoint"}));

    dsmg::cli::DeblurOptions deblur;
    auto* deblur_cmd = app.add_subcommand("deblur", "Periodic deblurring of a PGM image");
    deblur_cmd->add_option("input", deblur.input_file, "Blurred noisy image (P2/P5)")->required();
    deblur_cmd->add_option("psf", deblur.psf_file, "Point spread function image of the same size")->required();
    deblur_cmd->add_option("--delta-rel", deblur.delta_rel, "Noise bound relative to ||input||");
    deblur_cmd->add_option("--out", deblur.out_file, "Output PGM");
    deblur_cmd->add_option("--truth", deblur.truth_file, "Ground truth PGM for error reporting");
    deblur_cmd->add_option("--report", deblur.report_file, "Write the report here instead of stdout");
    deblur_cmd->add_option("--psf-origin", deblur.psf_origin, "Where the psf peak sits")
        ->check(CLI::IsMember({"center", "corner"}));
    deblur_cmd->add_flag("--ascii", deblur.ascii, "Write P2 instead of P5");
    add_rule_options(deblur_cmd, deblur.rule);

    dsmg::cli::SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic target, psf and blurred noisy image");
    synth_cmd->add_option("--size", synth.size, "Image side length")->check(CLI::Range(8, 4096));
    synth_cmd->add_option("--sigma", synth.sigma, "Gaussian psf width in pixels");
    synth_cmd->add_option("--delta-rel", synth.delta_rel, "Relative noise level");
    synth_cmd->add_option("--seed", synth.seed, "Noise seed");
    synth_cmd->add_option("--prefix", synth.prefix, "Output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dsmg::cli::kExitParse;
    }

    if (solve_cmd->parsed()) return dsmg::cli::run_solve(solve, std::cout, std::cerr);
    if (deblur_cmd->parsed()) return dsmg::cli::run_deblur(deblur, std::cout, std::cerr);
    if (synth_cmd->parsed()) return dsmg::cli::run_synth(synth, std::cout, std::cerr);
    try {
        bench.solution = dsmg::cli::parse_exact_solution(bench_u);
        bench.seeds = dsmg::cli::parse_seed_list(bench_seeds);
        bench.grid = bench_grid == "midpoint" ? dsmg::SampleGrid::CellMidpoint : dsmg::SampleGrid::RightEndpoint;
    } catch (const dsmg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dsmg::cli::kExitParse;
    }
    return dsmg::cli::run_derivative_bench(bench, std::cout, std::cerr);
}
