#ifndef OPCONVEX_SWEEP_HPP
#define OPCONVEX_SWEEP_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opconvex/families.hpp"
#include "opconvex/functionals.hpp"
#include "opconvex/report.hpp"

namespace opconvex {

struct CheckOptions {
    int order = 0;              // 0 = auto-pick until tail_target is met
    double tail_target = 1e-10;
    double tolerance = 1e-12;
    double tail_budget = 1e-6;  // tail bounds above this give REJECTED
};

/// Pairwise-positivity check. Guard: the second divided differences
/// of A_t(f) must be nonnegative on the 2n grid (else REJECTED).
/// PASS means value >= -(tolerance + tail_bound).
CheckReport run_check_a(const OperatorFamily& fam, const FunctionalFamily& A, int n,
                        const TestFunction& f, double x, double y,
                        const CheckOptions& opts);

/// m-point generalization; PASS means value >= -(tolerance + tail_bound).
CheckReport run_check_cm(const OperatorFamily& fam, const FunctionalFamily& A,
                         int n, int m, const TestFunction& f,
                         std::span<const double> xs, const CheckOptions& opts);

/// Mean-vs-product functional. The moment guard and the sign of the
/// (z-1)^2 quotient decide the expected direction: nonnegative
/// quotients expect value >= -(tol+tail), nonpositive expect
/// value <= +(tol+tail), all-zero expects |value| inside the budget,
/// and mixed quotients give REJECTED.
CheckReport run_check_bm(const OperatorFamily& fam, const FunctionalFamily& A,
                         int n, int m, const TestFunction& f,
                         std::span<const double> xs, const CheckOptions& opts);

/// Jensen gap; PASS means value >= -(tolerance + tail_bound).
CheckReport run_check_jensen(const OperatorFamily& fam, const FunctionalFamily& A,
                             int n, int m, const TestFunction& f,
                             std::span<const double> xs, const CheckOptions& opts);

struct SweepConfig {
    std::string check; // check-a | check-cm | check-bm | jensen
    std::vector<std::string> families;
    std::vector<std::string> functionals{"dirac"};
    int n_from = 1;
    int n_to = 1;
    std::vector<int> ms; // used by check-cm / check-bm / jensen

    struct GridSpec {
        bool present = false;
        double start = 0.0;
        double stop = 1.0;
        double step = 0.1;
    } x_grid;
    struct RandomSpec {
        bool present = false;
        int count = 0;
        std::uint64_t seed = 0;
    } x_random;

    std::vector<std::string> functions;
    int order = 0; // 0 = auto
    double tail_target = 1e-10;
    double tolerance = 1e-12;
    double tail_budget = 1e-6;
    std::string output; // empty = stdout
    std::string format = "csv";
    int jobs = 1;
};

/// Reads a JSON config file; throws std::invalid_argument on invalid
/// fields (before any computation).
SweepConfig load_sweep_config(const std::string& path);

/// Runs every instance of the configured check, serially or on
/// `jobs` threads; the sorted result is identical either way.
std::vector<CheckReport> run_sweep(const SweepConfig& config);

/// Minimum observed value per quantity, one line per quantity.
std::string sweep_summary(std::span<const CheckReport> reports);

/// Canned scenarios: rasa | miro | abel-rasa | szasz-zero |
/// baskakov-reverse | gusic.
std::vector<CheckReport> repro_claim(std::string_view claim, std::uint64_t seed);

} // namespace opconvex

#endif
