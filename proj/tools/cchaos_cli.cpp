#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cchaos/chaos_io.hpp"
#include "cchaos/diagnostics.hpp"
#include "cchaos/fbm.hpp"
#include "cchaos/kernel_io.hpp"
#include "cchaos/moments.hpp"
#include "cchaos/multivariate.hpp"
#include "cchaos/ou.hpp"
#include "cchaos/ou_sim.hpp"
#include "cchaos/reports.hpp"
#include "cchaos/sampling.hpp"

namespace {

using namespace cchaos;
using nlohmann::json;

constexpr int exit_validation = 2;
constexpr int exit_assertion = 3;

struct assertion_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_text(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) {
        throw std::invalid_argument("cannot open output file " + out);
    }
    f << text;
}

void emit(const json& j, const std::string& out) { emit_text(j.dump(2) + "\n", out); }

Kernel single_kernel(const std::string& path)
{
    const ChaosVariable F = chaos_from_json(read_json_file(path));
    if (!F.is_single_order()) {
        throw std::invalid_argument("input must hold exactly one chaos order and no constant");
    }
    return F.terms().begin()->second;
}

bool is_vector_file(const json& j) { return j.is_object() && j.contains("components"); }

QuadratureRule parse_rule(const std::string& s)
{
    if (s == "midpoint") {
        return QuadratureRule::midpoint;
    }
    if (s == "gauss-legendre" || s == "gl") {
        return QuadratureRule::gauss_legendre;
    }
    throw std::invalid_argument("unknown quadrature rule '" + s + "'");
}

std::string csv_fmt_table(const std::vector<ContractionNorm>& t)
{
    std::string s = "i,j,norm\n";
    char buf[96];
    for (const auto& e : t) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", e.i, e.j, e.norm);
        s += buf;
    }
    return s;
}

void check_window(const char* name, double value, const std::vector<double>& window)
{
    if (value < window[0] || value > window[1]) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s = %.6f outside [%.6f, %.6f]", name, value, window[0],
                      window[1]);
        throw assertion_failure(buf);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Complex Wiener chaos calculus, fourth-moment diagnostics and OU rate sweeps"};
    app.require_subcommand(1);

    std::string input, output = "-", format = "json";
    double tol = 1e-9, circ_tol = 1e-8;
    bool circular_only = false;

    auto* moments = app.add_subcommand("moments", "Exact moments and fourth-moment gap routes");
    moments->add_option("input", input, "Kernel or single-order chaos JSON")->required();
    moments->add_option("-o,--output", output, "Output path");
    moments->add_option("--tol", tol, "Route agreement tolerance (relative)");

    auto* bound = app.add_subcommand("bound", "Berry-Esseen upper bounds and their inputs");
    bound->add_option("input", input, "Kernel, chaos or vector JSON")->required();
    bound->add_option("-o,--output", output, "Output path");
    bound->add_option("--circ-tol", circ_tol, "Circularity tolerance relative to sigma^2");
    bound->add_flag("--circular", circular_only, "Fail unless the circular bound applies");

    double fmt_max = -1.0;
    auto* fmt = app.add_subcommand("fmt-check", "Contraction norms ||f (x)_{i,j} h||");
    fmt->add_option("input", input, "Kernel or single-order chaos JSON")->required();
    fmt->add_option("-o,--output", output, "Output path");
    fmt->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    fmt->add_option("--assert-max", fmt_max, "Exit 3 if any norm exceeds this value");

    int truncation = 8;
    auto* clt = app.add_subcommand("clt-check", "Chaotic CLT condition table");
    clt->add_option("input", input, "Chaos JSON")->required();
    clt->add_option("-o,--output", output, "Output path");
    clt->add_option("-M,--truncation", truncation, "Degree above which mass counts as tail");

    std::size_t N = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string gaussian;
    double sigma_sq = 1.0, ga = 0.0, gb = 0.0;
    auto* sample = app.add_subcommand("sample", "Monte Carlo batch as CSV");
    sample->add_option("input", input, "Chaos JSON (omit with --gaussian)");
    sample->add_option("-o,--output", output, "Output CSV path")->required();
    sample->add_option("-N,--count", N, "Number of samples")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Seed (default 1)");
    sample->add_option("--threads", threads, "Worker threads (0 = hardware)");
    sample->add_option("--gaussian", gaussian, "Reference law instead of a chaos input")
        ->check(CLI::IsMember({"circular", "bivariate"}));
    sample->add_option("--sigma-sq", sigma_sq, "Gaussian E|N|^2");
    sample->add_option("--a", ga, "Gaussian Re E[N^2]");
    sample->add_option("--b", gb, "Gaussian Im E[N^2]");

    OUParams ou;
    std::vector<double> T_list{50, 100, 200, 400, 800};
    double spacing = 0.05;
    std::string rule = "midpoint", rate_format = "csv";
    bool do_assert = false;
    std::vector<double> gap_window{-1.1, -0.9}, e21_window{-0.6, -0.4};
    double e3_coef = 1e-3;
    auto* rate = app.add_subcommand("ou-rate", "Rate sweep of the normalized OU statistic");
    rate->add_option("--lambda", ou.lambda, "Re gamma");
    rate->add_option("--omega", ou.omega, "gamma = lambda - i omega");
    rate->add_option("--H", ou.H, "Hurst parameter in [1/2, 3/4)");
    rate->add_option("--T", T_list, "Comma-separated horizons")->delimiter(',');
    rate->add_option("--spacing", spacing, "Grid spacing Delta");
    rate->add_option("--rule", rule, "midpoint or gauss-legendre");
    rate->add_option("--threads", threads, "Worker threads (0 = hardware)");
    rate->add_option("-o,--output", output, "Output path");
    rate->add_option("--format", rate_format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
    rate->add_flag("--assert", do_assert, "Exit 3 if a slope leaves its window");
    rate->add_option("--gap-window", gap_window, "lo,hi for the gap slope")
        ->delimiter(',')
        ->expected(2);
    rate->add_option("--e3-mixed-window", e21_window, "lo,hi for the |E F^2 conj F| slope")
        ->delimiter(',')
        ->expected(2);
    rate->add_option("--e3-coef", e3_coef, "Require |E F^3| <= coef / sqrt(T)");

    std::size_t paths = 100, steps = 0;
    double verify_T = 5.0, verify_dt = 0.01;
    auto* verify = app.add_subcommand("ou-verify", "Pathwise check of the occupation identity");
    verify->add_option("--lambda", ou.lambda, "Re gamma");
    verify->add_option("--omega", ou.omega, "gamma = lambda - i omega");
    verify->add_option("--T", verify_T, "Horizon");
    verify->add_option("--spacing", verify_dt, "Step size (ignored if --steps is set)");
    verify->add_option("--steps", steps, "Number of steps");
    verify->add_option("--paths", paths, "Number of paths");
    verify->add_option("--seed", seed, "Seed (default 1)");
    verify->add_option("--threads", threads, "Worker threads (0 = hardware)");
    verify->add_option("-o,--output", output, "Output path");
    bool per_path = false, verify_assert = false;
    verify->add_flag("--per-path", per_path, "Include per-path values");
    verify->add_flag("--assert", verify_assert,
                     "Exit 3 unless both means agree within 5 standard errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    try {
        if (moments->parsed()) {
            const MomentReport r = moment_report(single_kernel(input));
            emit(to_json(r), output);
            if (r.route_disagreement() > tol) {
                throw assertion_failure("gap routes disagree by " +
                                        std::to_string(r.route_disagreement()));
            }
        } else if (bound->parsed()) {
            const json in = read_json_file(input);
            if (is_vector_file(in)) {
                const ChaosVector F = vector_from_json(in);
                emit(to_json(be_upper_multivariate(F, circ_tol)), output);
            } else {
                const ChaosVariable F = chaos_from_json(in);
                if (!F.is_single_order()) {
                    throw std::invalid_argument(
                        "univariate bound needs exactly one chaos order and no constant");
                }
                const Kernel& f = F.terms().begin()->second;
                if (circular_only) {
                    be_upper_circular(f, variance_closed(f), circ_tol);
                }
                emit(univariate_bound_report(f, circ_tol), output);
            }
        } else if (fmt->parsed()) {
            const auto table = fmt_norms(single_kernel(input));
            if (format == "csv") {
                emit_text(csv_fmt_table(table), output);
            } else {
                emit(to_json(table), output);
            }
            for (const auto& e : table) {
                if (fmt_max >= 0.0 && e.norm > fmt_max) {
                    throw assertion_failure("contraction norm (" + std::to_string(e.i) + "," +
                                            std::to_string(e.j) + ") exceeds the limit");
                }
            }
        } else if (clt->parsed()) {
            emit(to_json(clt_conditions(chaos_from_json(read_json_file(input)), truncation)),
                 output);
        } else if (sample->parsed()) {
            SampleBatch batch;
            if (!gaussian.empty()) {
                const GaussianTarget target = gaussian == "circular"
                                                  ? GaussianTarget::circular(sigma_sq)
                                                  : GaussianTarget::bivariate(ga, gb, sigma_sq);
                batch = sample_gaussian(target, N, seed, threads);
            } else if (!input.empty()) {
                batch = sample_chaos(chaos_from_json(read_json_file(input)), N, seed, threads);
            } else {
                throw std::invalid_argument("sample needs an input file or --gaussian");
            }
            write_batch_csv(output, batch);
        } else if (rate->parsed()) {
            if (ou.H == 0.5) {
                const RateTable t = rate_sweep(ou, T_list, spacing, parse_rule(rule), threads);
                emit_text(rate_format == "json" ? to_json(t).dump(2) + "\n" : rate_table_csv(t),
                          output);
                if (do_assert) {
                    check_window("slope_gap", t.slope_gap, gap_window);
                    check_window("slope_e3_mixed", t.slope_e3_mixed, e21_window);
                    for (const auto& r : t.rows) {
                        if (r.e3 > e3_coef / std::sqrt(r.T)) {
                            throw assertion_failure("|E F^3| above the structural-zero limit");
                        }
                    }
                }
            } else {
                const FractionalSweep s = fbm_gap_sweep(ou, T_list, spacing);
                json rows = json::array();
                for (std::size_t k = 0; k < s.T.size(); ++k) {
                    rows.push_back({{"T", s.T[k]},
                                    {"sigma_sq", s.stats[k].sigma_sq},
                                    {"pseudo", complex_json(s.stats[k].pseudo)},
                                    {"gap", s.stats[k].gap},
                                    {"gap_normalized", s.gap_normalized[k]},
                                    {"e3_mixed", std::abs(s.stats[k].e3_mixed)},
                                    {"e3", std::abs(s.stats[k].e3)}});
                }
                const json j = {{"H", ou.H}, {"rows", rows}, {"slope_gap", s.slope_gap}};
                emit(j, output);
                if (do_assert) {
                    check_window("slope_gap", s.slope_gap, gap_window);
                }
            }
        } else if (verify->parsed()) {
            ou.T = verify_T;
            const std::size_t m =
                steps > 0 ? steps
                          : static_cast<std::size_t>(std::llround(verify_T / verify_dt));
            const DenominatorReport r = verify_denominator_identity(ou, m, seed, paths, threads);
            emit(to_json(r, per_path), output);
            if (verify_assert) {
                const double se = std::hypot(r.se_lhs, r.se_rhs);
                if (std::abs(r.mean_lhs - r.mean_rhs) > 5.0 * se) {
                    throw assertion_failure("means of the two sides differ beyond 5 standard errors");
                }
            }
        }
    } catch (const assertion_failure& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return exit_assertion;
    } catch (const degree_cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
