#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "opconvex/families.hpp"
#include "opconvex/functionals.hpp"
#include "opconvex/inequality.hpp"
#include "opconvex/report.hpp"
#include "opconvex/sweep.hpp"
#include "opconvex/values.hpp"

namespace {

using namespace opconvex;

int emit_with_exit_code(const std::vector<CheckReport>& reports,
                        const std::string& output, const std::string& format) {
    const auto kind = parse_report_format(format);
    if (output.empty()) {
        emit_reports(reports, kind, std::cout);
    } else {
        std::ofstream out(output);
        if (!out)
            throw std::invalid_argument("cannot open output file '" + output + "'");
        emit_reports(reports, kind, out);
    }
    return any_fail(reports) ? 1 : 0;
}

int auto_order_points(const OperatorFamily& fam, int n, std::vector<double> pts,
                      int order, double tail_target) {
    if (order > 0) return order;
    int N = 1;
    for (double p : pts) N = std::max(N, fam.pick_order(n, p, tail_target));
    return N;
}

void print_classification(const SignClassification& c, double residual) {
    std::cout << "verdict=" << to_string(c.verdict) << " witness_positive="
              << (c.witness_positive ? std::to_string(*c.witness_positive) : "-")
              << " witness_negative="
              << (c.witness_negative ? std::to_string(*c.witness_negative) : "-")
              << " tolerance=" << format_real(c.tolerance)
              << " residual=" << format_real(residual) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for convexity-type inequalities of "
                 "positive linear operators built from generating functions"};
    app.require_subcommand(1);

    std::string family;
    std::string functional = "dirac";
    std::string fname = "e2";
    std::string output;
    std::string format = "csv";
    std::string config_path;
    std::string claim;
    int n = 1;
    int m = 2;
    int order = 0;
    int power = 2;
    int jobs = 0;
    double x = 0.0;
    double y = 0.0;
    double tol = 1e-12;
    double tail_target = 1e-10;
    double tail_budget = 1e-6;
    std::uint64_t seed = 1729;
    std::vector<double> xs;

    const auto add_report_opts = [&](CLI::App* sub) {
        sub->add_option("--functional", functional, "functional family (dirac|avg:h=<w>)");
        sub->add_option("--f", fname, "test function name");
        sub->add_option("--order", order, "truncation order (0 = auto)");
        sub->add_option("--tol", tol, "verdict tolerance");
        sub->add_option("--tail-target", tail_target, "auto-order tail target");
        sub->add_option("--tail-budget", tail_budget, "largest acceptable tail bound");
        sub->add_option("--output", output, "report file (default stdout)");
        sub->add_option("--format", format, "csv|jsonl");
    };

    auto* coeffs = app.add_subcommand("coeffs", "print operator coefficients a_{n,k}(x)");
    coeffs->add_option("--family", family)->required();
    coeffs->add_option("--n", n)->required();
    coeffs->add_option("--x", x)->required();
    coeffs->add_option("--order", order, "truncation order (0 = auto)");
    coeffs->add_option("--tail-target", tail_target);

    auto* beta = app.add_subcommand("beta", "difference-quotient coefficients and their sign");
    beta->add_option("--family", family)->required();
    beta->add_option("--n", n)->required();
    beta->add_option("--x", x)->required();
    beta->add_option("--y", y)->required();
    beta->add_option("--order", order, "truncation order (0 = auto)");
    beta->add_option("--tail-target", tail_target);

    auto* em = app.add_subcommand("em", "error-series quotient coefficients and their sign");
    em->add_option("--family", family)->required();
    em->add_option("--n", n)->required();
    em->add_option("--m", m)->required();
    em->add_option("--xs", xs, "comma-separated points")->required()->delimiter(',');
    em->add_option("--order", order, "truncation order (0 = auto)");
    em->add_option("--power", power, "quotient power (1 or 2)");
    em->add_option("--tail-target", tail_target);

    auto* check_a = app.add_subcommand("check-a", "pairwise positivity check");
    check_a->add_option("--family", family)->required();
    check_a->add_option("--n", n)->required();
    check_a->add_option("--x", x)->required();
    check_a->add_option("--y", y)->required();
    add_report_opts(check_a);

    auto* check_cm = app.add_subcommand("check-cm", "m-point positivity check");
    check_cm->add_option("--family", family)->required();
    check_cm->add_option("--n", n)->required();
    check_cm->add_option("--m", m)->required();
    check_cm->add_option("--xs", xs, "comma-separated points")->required()->delimiter(',');
    add_report_opts(check_cm);

    auto* check_bm = app.add_subcommand("check-bm", "mean-vs-product functional check");
    check_bm->add_option("--family", family)->required();
    check_bm->add_option("--n", n)->required();
    check_bm->add_option("--m", m)->required();
    check_bm->add_option("--xs", xs, "comma-separated points")->required()->delimiter(',');
    add_report_opts(check_bm);

    auto* jensen = app.add_subcommand("jensen", "Jensen gap check");
    jensen->add_option("--family", family)->required();
    jensen->add_option("--n", n)->required();
    jensen->add_option("--m", m)->required();
    jensen->add_option("--xs", xs, "comma-separated points")->required()->delimiter(',');
    add_report_opts(jensen);

    auto* sweep = app.add_subcommand("sweep", "run a JSON-configured batch sweep");
    sweep->add_option("--config", config_path, "JSON sweep config")->required();
    auto* sweep_output = sweep->add_option("--output", output, "override config output");
    auto* sweep_format = sweep->add_option("--format", format, "override config format");
    auto* sweep_seed = sweep->add_option("--seed", seed, "override config seed");
    auto* sweep_jobs = sweep->add_option("--jobs", jobs, "override worker count");

    auto* repro = app.add_subcommand("repro", "run a canned claim scenario");
    repro->add_option("--claim", claim,
                      "rasa|miro|abel-rasa|szasz-zero|baskakov-reverse|gusic")
        ->required();
    repro->add_option("--seed", seed, "sample seed");
    repro->add_option("--output", output, "report file (default stdout)");
    repro->add_option("--format", format, "csv|jsonl");

    try {
        app.parse(argc, argv);

        if (coeffs->parsed()) {
            const auto fam = parse_family(family);
            const int N = auto_order_points(fam, n, {x}, order, tail_target);
            const auto a = fam.coefficients(n, x, N);
            std::cout << "k,coefficient\n";
            for (int k = 0; k <= N; ++k)
                std::cout << k << ',' << format_real(a[static_cast<std::size_t>(k)])
                          << '\n';
            std::cout << "# order=" << N
                      << " tail_mass=" << format_real(fam.tail_mass(n, x, N)) << '\n';
            return 0;
        }

        if (beta->parsed()) {
            const auto fam = parse_family(family);
            const int N = auto_order_points(fam, n, {x, y}, order, tail_target);
            const auto b = beta_series(fam, n, x, y, N);
            std::cout << "k,coefficient\n";
            for (int k = 0; k <= b.series.order(); ++k)
                std::cout << k << ',' << format_real(b.series.coeff(k)) << '\n';
            print_classification(
                classify_signs(b.series.coeffs(), default_sign_tolerance(fam)),
                b.residual);
            return 0;
        }

        if (em->parsed()) {
            const auto fam = parse_family(family);
            std::vector<double> pts = xs;
            pts.push_back(std::accumulate(xs.begin(), xs.end(), 0.0) /
                          static_cast<double>(xs.size()));
            int N = order > 0 ? order : 2;
            if (order == 0) {
                N = auto_order_points(fam, n, xs, 0, tail_target);
                N = std::max(N, fam.pick_order(m * n, pts.back(), tail_target));
            }
            try {
                const auto quot = em_quotient(fam, n, m, xs, N, power);
                const auto raw = em_series(fam, n, m, xs, N);
                double first_moment = 0.0;
                for (int k = 0; k <= raw.order(); ++k)
                    first_moment += static_cast<double>(k) * raw.coeff(k);
                std::cout << "k,coefficient\n";
                for (int k = 0; k <= quot.series.order(); ++k)
                    std::cout << k << ',' << format_real(quot.series.coeff(k)) << '\n';
                std::cout << "# order=" << N
                          << " em_at_1=" << format_real(eval_real(raw, 1.0))
                          << " first_moment=" << format_real(first_moment) << '\n';
                print_classification(quot.classification, quot.residual);
            } catch (const PreconditionError& e) {
                std::cout << "verdict=REJECTED(" << e.what() << ")\n";
            }
            return 0;
        }

        const CheckOptions opts{order, tail_target, tol, tail_budget};
        if (check_a->parsed()) {
            const auto rep = run_check_a(parse_family(family),
                                         parse_functional(functional), n,
                                         parse_test_function(fname), x, y, opts);
            return emit_with_exit_code({rep}, output, format);
        }
        if (check_cm->parsed()) {
            const auto rep = run_check_cm(parse_family(family),
                                          parse_functional(functional), n, m,
                                          parse_test_function(fname), xs, opts);
            return emit_with_exit_code({rep}, output, format);
        }
        if (check_bm->parsed()) {
            const auto rep = run_check_bm(parse_family(family),
                                          parse_functional(functional), n, m,
                                          parse_test_function(fname), xs, opts);
            return emit_with_exit_code({rep}, output, format);
        }
        if (jensen->parsed()) {
            const auto rep = run_check_jensen(parse_family(family),
                                              parse_functional(functional), n, m,
                                              parse_test_function(fname), xs, opts);
            return emit_with_exit_code({rep}, output, format);
        }

        if (sweep->parsed()) {
            auto cfg = load_sweep_config(config_path);
            if (sweep_output->count() > 0) cfg.output = output;
            if (sweep_format->count() > 0) cfg.format = format;
            if (sweep_seed->count() > 0) cfg.x_random.seed = seed;
            if (sweep_jobs->count() > 0) cfg.jobs = jobs;
            const auto reports = run_sweep(cfg);
            std::cerr << sweep_summary(reports);
            return emit_with_exit_code(reports, cfg.output, cfg.format);
        }

        if (repro->parsed()) {
            const auto reports = repro_claim(claim, seed);
            std::cerr << sweep_summary(reports);
            return emit_with_exit_code(reports, output, format);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
