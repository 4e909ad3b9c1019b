#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>

#include "dsmg/deconvolution.hpp"
#include "dsmg/errors.hpp"
#include "textio.hpp"

namespace dsmg::cli {

namespace {

StoppingRule make_rule(const RuleOptions& o) {
    if (o.rule == "discrepancy") return Discrepancy{o.c.value_or(kDefaultDiscrepancyC)};
    if (o.rule == "apriori") return APriori{o.c.value_or(kDefaultAPrioriC), o.gamma};
    raise(ErrorKind::DomainError, "unknown rule '" + o.rule + "' (expected discrepancy or apriori)");
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_rule(std::ostream& out, const StoppingRule& rule) {
    if (const auto* d = std::get_if<Discrepancy>(&rule)) {
        out << "rule = discrepancy\nC = " << num(d->c) << '\n';
    } else {
        const auto& a = std::get<APriori>(rule);
        out << "rule = apriori\nC = " << num(a.c) << "\ngamma = " << num(a.gamma) << '\n';
    }
}

void write_report(std::ostream& out, const SolveReport& r, double residual_scale = 1.0) {
    write_rule(out, r.rule_used);
    out << "t_delta = " << num(r.t_delta) << '\n'
        << "newton_iterations = " << r.newton_iterations << '\n'
        << "t0 = " << num(r.t0) << '\n'
        << "t0_probes = " << r.t0_probes << '\n'
        << "residual_norm = " << num(r.residual_norm * residual_scale) << '\n'
        << "started_within_target = " << (r.started_within_target ? "true" : "false") << '\n'
        << "probe_budget_exhausted = " << (r.probe_budget_exhausted ? "true" : "false") << '\n';
}

int report_error(std::ostream& err, const Error& e, int code) {
    err << "error: " << e.what() << '\n';
    return code;
}

}  // namespace

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
    RealMatrix a;
    RealVector rhs;
    std::optional<Vector> u0;
    StoppingRule rule;
    try {
        a = read_text_matrix(opts.matrix_file);
        rhs = read_text_vector(opts.rhs_file);
        if (rhs.size() != a.rows())
            raise(ErrorKind::DimensionMismatch, "rhs has " + std::to_string(rhs.size()) + " entries but the matrix has " +
                                                    std::to_string(a.rows()) + " rows");
        if (opts.u0 != "zero") {
            const RealVector start = read_text_vector(opts.u0);
            if (start.size() != a.cols()) raise(ErrorKind::DimensionMismatch, "u0 length does not match matrix columns");
            u0 = to_complex(start);
        }
        rule = make_rule(opts.rule);
        validate(rule);
        if (!(opts.delta > 0.0)) raise(ErrorKind::DomainError, "--delta must be positive");
    } catch (const Error& e) {
        return report_error(err, e, kExitParse);
    }

    try {
        auto factorization = std::make_shared<const SpectralFactorization>(factorize_svd(a));
        const NoisyProblem problem(factorization, to_complex(rhs), opts.delta, u0);
        const SolveReport report = solve(problem, rule);
        write_report(out, report);
        const RealVector solution = report.solution.real();
        if (opts.out_file.empty()) {
            out << "solution:\n";
            write_text_vector(out, solution);
        } else {
            std::ofstream file(opts.out_file);
            if (!file) raise(ErrorKind::MalformedFile, opts.out_file + ": cannot open for writing");
            write_text_vector(file, solution);
        }
    } catch (const Error& e) {
        return report_error(err, e, kExitSolver);
    }
    return kExitOk;
}

int run_derivative_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
    if (!(config.delta_rel > 0.0 && config.delta_rel < 1.0) || !(config.c > 1.0 && config.c < 2.0)) {
        err << "error: --delta-rel must lie in (0, 1) and --C in (1, 2)\n";
        return kExitParse;
    }
    for (int n : config.sizes) {
        if (n < 2) {
            err << "error: every N must be at least 2\n";
            return kExitParse;
        }
    }
    const BenchOutcome outcome = run_derivative_bench(config);
    write_bench_csv(out, config, outcome.rows);
    if (outcome.any_failed) {
        err << "error: one or more cells failed; see the status column\n";
        return kExitSolver;
    }
    return kExitOk;
}

int run_deblur(const DeblurOptions& opts, std::ostream& out, std::ostream& err) {
    GrayImage observed;
    GrayImage psf;
    std::optional<GrayImage> truth;
    StoppingRule rule;
    try {
        observed = read_pgm(opts.input_file);
        psf = read_pgm(opts.psf_file);
        if (psf.width != observed.width || psf.height != observed.height)
            raise(ErrorKind::DimensionMismatch, opts.psf_file + ": psf size differs from the input image");
        if (opts.psf_origin == "center") {
            psf = psf_to_origin(psf);
        } else if (opts.psf_origin == "corner") {
            double sum = 0.0;
            for (double v : psf.pixels) sum += v;
            if (!(sum > 0.0)) raise(ErrorKind::DomainError, opts.psf_file + ": psf has no positive mass");
            for (double& v : psf.pixels) v /= sum;
        } else {
            raise(ErrorKind::DomainError, "--psf-origin must be center or corner");
        }
        if (!opts.truth_file.empty()) {
            truth = read_pgm(opts.truth_file);
            if (truth->width != observed.width || truth->height != observed.height)
                raise(ErrorKind::DimensionMismatch, opts.truth_file + ": truth size differs from the input image");
        }
        rule = make_rule(opts.rule);
        validate(rule);
        if (!(opts.delta_rel > 0.0)) raise(ErrorKind::DomainError, "--delta-rel must be positive");
    } catch (const Error& e) {
        return report_error(err, e, kExitParse);
    }

    try {
        const ImageDeconvolutionResult result = deconvolve_2d(observed, psf, opts.delta_rel, rule);
        write_pgm(result.restored, opts.out_file, opts.ascii ? PgmFormat::Ascii : PgmFormat::Binary);

        std::ofstream report_file;
        if (!opts.report_file.empty()) {
            report_file.open(opts.report_file);
            if (!report_file) raise(ErrorKind::MalformedFile, opts.report_file + ": cannot open for writing");
        }
        std::ostream& rep = opts.report_file.empty() ? out : report_file;
        const double scale = 1.0 / std::sqrt(static_cast<double>(observed.size()));
        rep << "input = " << opts.input_file << '\n' << "output = " << opts.out_file << '\n';
        write_report(rep, result.report, scale);
        rep << "delta_pixel = " << num(result.fourier_delta * scale) << '\n'
            << "delta_fourier = " << num(result.fourier_delta) << '\n'
            << "imaginary_residue = " << num(result.imaginary_residue) << '\n';
        if (truth) {
            const double before = relative_error(observed.flat(), truth->flat());
            const double after = relative_error(result.restored.flat(), truth->flat());
            rep << "observed_relative_error = " << num(before) << '\n'
                << "restored_relative_error = " << num(after) << '\n'
                << "improvement_factor = " << num(before / after) << '\n';
        }
    } catch (const Error& e) {
        return report_error(err, e, kExitSolver);
    }
    return kExitOk;
}

int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const GrayImage target = synthetic_target(opts.size, opts.size);
        const GrayImage psf = gaussian_psf(opts.size, opts.size, opts.sigma);
        const GrayImage blurred = periodic_blur(target, psf);
        const NoisyRhs noisy = add_noise(blurred.flat(), {opts.delta_rel, opts.seed});
        const GrayImage observed = GrayImage::from_flat(noisy.b_delta, opts.size, opts.size);

        // Stored centered so that it displays as a blob; scaled to peak 1.
        GrayImage centered(opts.size, opts.size);
        const double peak = psf.at(0, 0);
        for (int y = 0; y < opts.size; ++y)
            for (int x = 0; x < opts.size; ++x)
                centered.at((x + opts.size / 2) % opts.size, (y + opts.size / 2) % opts.size) = psf.at(x, y) / peak;

        write_pgm(target, opts.prefix + "_target.pgm");
        write_pgm(centered, opts.prefix + "_psf.pgm");
        write_pgm(observed, opts.prefix + "_blurred.pgm");
        out << "wrote " << opts.prefix << "_target.pgm, " << opts.prefix << "_psf.pgm, " << opts.prefix
            << "_blurred.pgm\n";
    } catch (const Error& e) {
        return report_error(err, e, kExitSolver);
    }
    return kExitOk;
}

}  // namespace dsmg::cli
