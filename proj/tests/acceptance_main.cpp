// Acceptance gate: every shipped guarantee at its stated tolerance, one
// verdict line per criterion. Exit code 0 only when all criteria hold.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "opconvex/families.hpp"
#include "opconvex/functionals.hpp"
#include "opconvex/inequality.hpp"
#include "opconvex/random.hpp"
#include "opconvex/report.hpp"
#include "opconvex/sweep.hpp"
#include "opconvex/values.hpp"

using namespace opconvex;

namespace {

struct Criterion {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void note(const std::string& what) {
        if (ok) detail = what;
    }
};

constexpr std::uint64_t kSeed = 1729;

// 1. Pairwise positivity over the convex registry on a full grid.
Criterion criterion_1() {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    const auto fam = OperatorFamily::bernstein();
    const auto dirac = FunctionalFamily::dirac();
    const auto fns = convex_test_functions();

    double min_value = 0.0;
    long count = 0;
    for (int n = 1; n <= 8 && c.ok; ++n) {
        for (int i = 0; i <= 20 && c.ok; ++i) {
            for (int j = 0; j <= 20 && c.ok; ++j) {
                const double x = 0.05 * i;
                const double y = 0.05 * j;
                for (const auto& f : fns) {
                    const auto v = rasa_functional(fam, dirac, n, f.eval, x, y, n);
                    min_value = std::min(min_value, v.value);
                    ++count;
                    c.require(v.value >= -1e-12,
                              fmt::format("rasa({},{},{},{}) = {:.3e} < -1e-12",
                                          f.name, n, x, y, v.value));
                }
            }
        }
    }

    const auto golden = rasa_functional(
        fam, dirac, 1, [](double t) { return t * t; }, 0.0, 1.0, 1);
    c.require(std::abs(golden.value - 0.5) <= 1e-12,
              fmt::format("golden rasa = {} off 0.5", golden.value));

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    c.require(secs < 10.0, fmt::format("runtime {:.1f}s exceeds 10s", secs));
    c.note(fmt::format("{} instances, min {:.2e}, golden defect {:.1e}, {:.2f}s",
                       count, min_value, std::abs(golden.value - 0.5), secs));
    return c;
}

// 2. Three-point positivity plus the literal triple-sum oracle.
Criterion criterion_2() {
    Criterion c;
    const auto fam = OperatorFamily::bernstein();
    const auto dirac = FunctionalFamily::dirac();
    const auto fns = convex_test_functions();
    Rng rng(kSeed + 2);

    std::vector<std::vector<double>> triples;
    for (int i = 0; i < 100; ++i)
        triples.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                           rng.uniform(0.0, 1.0)});

    double min_value = 0.0;
    for (int n = 1; n <= 4 && c.ok; ++n) {
        for (const auto& xs : triples) {
            for (const auto& f : fns) {
                const auto v = cm_value(fam, dirac, n, 3, f.eval, xs, n);
                min_value = std::min(min_value, v.value);
                c.require(v.value >= -1e-12,
                          fmt::format("cm({},{}) = {:.3e} < -1e-12", f.name, n,
                                      v.value));
                if (!c.ok) break;
            }
            if (!c.ok) break;
        }
    }

    double max_disagreement = 0.0;
    for (int n = 1; n <= 3 && c.ok; ++n) {
        for (int i = 0; i < 10; ++i) {
            const auto& xs = triples[static_cast<std::size_t>(i)];
            const int N = std::min(12, 20);
            const auto fast = cm_value(fam, dirac, n, 3,
                                       [](double t) { return t * t; }, xs, N);
            const auto slow = cm_value_brute(fam, dirac, n, 3,
                                             [](double t) { return t * t; }, xs, N);
            max_disagreement =
                std::max(max_disagreement, std::abs(fast.value - slow.value));
        }
    }
    c.require(max_disagreement <= 1e-11,
              fmt::format("convolution vs brute disagree by {:.3e}",
                          max_disagreement));
    c.note(fmt::format("4800 instances, min {:.2e}, oracle defect {:.1e}",
                       min_value, max_disagreement));
    return c;
}

struct BmInstance {
    int n;
    int m;
    std::vector<double> xs;
};

std::vector<BmInstance> bernstein_bm_instances() {
    Rng rng(kSeed + 3);
    std::vector<BmInstance> out;
    for (int m : {2, 3})
        for (int n = 1; n <= 5; ++n)
            for (int rep = 0; rep < 20; ++rep) {
                BmInstance inst{n, m, {}};
                for (int nu = 0; nu < m; ++nu)
                    inst.xs.push_back(rng.uniform(0.0, 1.0));
                out.push_back(std::move(inst));
            }
    return out;
}

// 3. Mean-vs-product positivity for the finite-support family.
Criterion criterion_3() {
    Criterion c;
    const auto fam = OperatorFamily::bernstein();
    const auto dirac = FunctionalFamily::dirac();
    const auto fns = convex_test_functions();

    double min_value = 0.0;
    long count = 0;
    for (const auto& inst : bernstein_bm_instances()) {
        for (const auto& f : fns) {
            const auto v = bm_value(fam, dirac, inst.n, inst.m, f.eval, inst.xs,
                                    inst.m * inst.n);
            min_value = std::min(min_value, v.value);
            ++count;
            c.require(v.value >= -1e-12,
                      fmt::format("bm({},n={},m={}) = {:.3e} < -1e-12", f.name,
                                  inst.n, inst.m, v.value));
            if (!c.ok) return c;
        }
    }

    const std::vector<double> endpoints{0.0, 1.0};
    const auto golden = bm_value(fam, dirac, 1, 2,
                                 [](double t) { return t * t; }, endpoints, 2);
    c.require(std::abs(golden.value - 0.125) <= 1e-12,
              fmt::format("golden bm = {} off 0.125", golden.value));
    c.note(fmt::format("{} instances, min {:.2e}, golden defect {:.1e}", count,
                       min_value, std::abs(golden.value - 0.125)));
    return c;
}

// 4. Exponential-family degeneration: the error series vanishes.
Criterion criterion_4() {
    Criterion c;
    const auto fam = OperatorFamily::szasz();
    const auto dirac = FunctionalFamily::dirac();
    const auto e2 = [](double t) { return t * t; };
    Rng rng(kSeed + 4);

    double max_coeff = 0.0;
    double max_bm = 0.0;
    for (int i = 0; i < 50 && c.ok; ++i) {
        const int n = rng.uniform_int(1, 4);
        const std::vector<double> xs{rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)};
        const auto e = em_series(fam, n, 2, xs, 48);
        for (double coeff : e.coeffs())
            max_coeff = std::max(max_coeff, std::abs(coeff));
        c.require(max_coeff <= 1e-12,
                  fmt::format("|E2| = {:.3e} > 1e-12 at n={} xs=({:.3f},{:.3f})",
                              max_coeff, n, xs[0], xs[1]));

        const double mean = 0.5 * (xs[0] + xs[1]);
        const int N = std::max(fam.pick_order(2 * n, mean),
                               std::max(fam.pick_order(n, xs[0]),
                                        fam.pick_order(n, xs[1])));
        const auto bm = bm_value(fam, dirac, n, 2, e2, xs, N);
        max_bm = std::max(max_bm, std::abs(bm.value));
        c.require(std::abs(bm.value) <= 1e-6,
                  fmt::format("|bm| = {:.3e} above the tail budget", bm.value));
    }

    // remark-style discrepancy: the mean-vs-product functional vanishes
    // while the m-point functional stays strictly positive
    const std::vector<double> pair{1.0, 2.0};
    const int N = fam.pick_order(2, 2.0);
    const auto bm = bm_value(fam, dirac, 1, 2, e2, pair, N);
    const auto cm = cm_value(fam, dirac, 1, 2, e2, pair, N);
    c.require(std::abs(bm.value) <= 1e-12 + bm.tail_bound,
              fmt::format("discrepancy bm = {:.3e} not ~0", bm.value));
    c.require(cm.value > 0.1, fmt::format("discrepancy cm = {:.3e}", cm.value));
    c.note(fmt::format(
        "max|E2| {:.1e}, max|bm| {:.1e}; discrepancy bm {:.2e} vs cm {:.6f}",
        max_coeff, max_bm, bm.value, cm.value));
    return c;
}

std::vector<BmInstance> baskakov_pair_instances() {
    Rng rng(kSeed + 5);
    std::vector<BmInstance> out;
    for (int i = 0; i < 50; ++i) {
        BmInstance inst{rng.uniform_int(1, 3), 2, {}};
        inst.xs = {rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)};
        out.push_back(std::move(inst));
    }
    return out;
}

// 5. Reversal for the reciprocal-power family.
Criterion criterion_5() {
    Criterion c;
    const auto fam = OperatorFamily::baskakov();
    const auto dirac = FunctionalFamily::dirac();

    int classified = 0;
    for (const auto& inst : baskakov_pair_instances()) {
        const double mean = 0.5 * (inst.xs[0] + inst.xs[1]);
        const int N = std::max({fam.pick_order(inst.n, inst.xs[0], 1e-12),
                                fam.pick_order(inst.n, inst.xs[1], 1e-12),
                                fam.pick_order(2 * inst.n, mean, 1e-12)});
        const auto q = em_quotient(fam, inst.n, 2, inst.xs, N, 2);
        c.require(q.classification.tolerance == 1e-9, "tolerance drifted");
        c.require(q.classification.verdict == SignVerdict::all_non_positive,
                  fmt::format("verdict {} at n={} xs=({:.3f},{:.3f})",
                              to_string(q.classification.verdict), inst.n,
                              inst.xs[0], inst.xs[1]));
        if (!c.ok) return c;
        ++classified;
    }

    const std::vector<double> endpoints{0.0, 1.0};
    const auto golden = bm_value(fam, dirac, 1, 2,
                                 [](double t) { return t * t; }, endpoints, 96);
    c.require(std::abs(golden.value + 0.125) <= 1e-8,
              fmt::format("golden bm = {} off -0.125", golden.value));

    const auto q1 = em_quotient(fam, 1, 2, endpoints, 32, 1);
    c.require(q1.classification.verdict == SignVerdict::mixed,
              fmt::format("power-1 verdict {}",
                          to_string(q1.classification.verdict)));
    const double heads[3] = {1.0 / 18.0, 1.0 / 108.0, -1.0 / 72.0};
    double head_defect = 0.0;
    for (int k = 0; k < 3; ++k)
        head_defect = std::max(head_defect,
                               std::abs(q1.series.coeff(k) - heads[k]));
    c.require(head_defect <= 1e-10,
              fmt::format("power-1 head defect {:.3e}", head_defect));
    c.note(fmt::format(
        "{} AllNonPositive verdicts, golden defect {:.1e}, power-1 Mixed head "
        "defect {:.1e}",
        classified, std::abs(golden.value + 0.125), head_defect));
    return c;
}

// 6. Direct evaluation agrees with the divided-difference form.
Criterion criterion_6() {
    Criterion c;
    const auto dirac = FunctionalFamily::dirac();
    const auto e2 = [](double t) { return t * t; };

    const auto bern = OperatorFamily::bernstein();
    const auto fns = convex_test_functions();
    double bern_defect = 0.0;
    for (const auto& inst : bernstein_bm_instances()) {
        for (const auto& f : fns) {
            const int N = inst.m * inst.n;
            const auto direct =
                bm_value(bern, dirac, inst.n, inst.m, f.eval, inst.xs, N);
            const auto repr = bm_value_via_representation(
                bern, dirac, inst.n, inst.m, f.eval, inst.xs, N);
            bern_defect =
                std::max(bern_defect, std::abs(direct.value - repr.value));
        }
        if (bern_defect > 1e-10) break;
    }
    c.require(bern_defect <= 1e-10,
              fmt::format("finite-support paths disagree by {:.3e}", bern_defect));

    const auto bask = OperatorFamily::baskakov();
    double bask_defect = 0.0;
    // Fixed high order: the boundary term of the summation-by-parts step
    // scales with the retained tail, and the auto order leaves ~1e-6.
    const int N = OperatorFamily::kMaxAutoOrder;
    for (const auto& inst : baskakov_pair_instances()) {
        const auto direct =
            bm_value(bask, dirac, inst.n, inst.m, e2, inst.xs, N);
        const auto repr = bm_value_via_representation(bask, dirac, inst.n,
                                                      inst.m, e2, inst.xs, N);
        bask_defect = std::max(bask_defect, std::abs(direct.value - repr.value));
        if (bask_defect > 1e-7) break;
    }
    c.require(bask_defect <= 1e-7,
              fmt::format("infinite-support paths disagree by {:.3e}", bask_defect));
    c.note(fmt::format("path defects: finite {:.1e}, infinite {:.1e}",
                       bern_defect, bask_defect));
    return c;
}

// 7. One-signedness of the difference quotient, with closed-form oracle.
Criterion criterion_7() {
    Criterion c;
    const std::vector<OperatorFamily> fams{OperatorFamily::bernstein(),
                                           OperatorFamily::szasz(),
                                           OperatorFamily::baskakov()};
    double max_oracle_defect = 0.0;
    for (const auto& fam : fams) {
        Rng rng(kSeed + 7);
        const double hi = fam.finite_support() ? 1.0 : 2.0;
        const double agree_tol = fam.finite_support() ? 1e-12 : 1e-9;
        const double sign_tol = default_sign_tolerance(fam);
        for (int i = 0; i < 200; ++i) {
            const int n = rng.uniform_int(1, 6);
            double x = rng.uniform(0.0, hi);
            double y = rng.uniform(0.0, hi);
            if (x == y) continue;
            const int N = 32;
            const auto b = beta_series(fam, n, x, y, N);
            const auto cls = classify_signs(b.series.coeffs(), sign_tol);
            const bool nonneg = cls.verdict == SignVerdict::all_non_negative;
            c.require(nonneg == (x > y),
                      fmt::format("{} n={} x={:.4f} y={:.4f}: verdict {}",
                                  fam.name(), n, x, y, to_string(cls.verdict)));
            if (x < y)
                c.require(cls.verdict == SignVerdict::all_non_positive,
                          fmt::format("{} reversed pair verdict {}", fam.name(),
                                      to_string(cls.verdict)));
            const auto closed = beta_closed_form(fam, n, x, y, N);
            for (int k = 0; k <= N; ++k)
                max_oracle_defect = std::max(
                    max_oracle_defect,
                    std::abs(b.series.coeff(k) -
                             closed[static_cast<std::size_t>(k)]));
            c.require(max_oracle_defect <= agree_tol,
                      fmt::format("{} closed-form defect {:.3e}", fam.name(),
                                  max_oracle_defect));
            if (!c.ok) return c;
        }
    }

    const auto golden = beta_series(OperatorFamily::baskakov(), 1, 1.0, 0.0, 16);
    double golden_defect = 0.0;
    for (int k = 0; k <= 16; ++k)
        golden_defect = std::max(golden_defect, std::abs(golden.series.coeff(k) -
                                                         std::ldexp(1.0, -(k + 1))));
    c.require(golden_defect <= 1e-12,
              fmt::format("dyadic golden defect {:.3e}", golden_defect));
    c.note(fmt::format("600 sign verdicts, oracle defect {:.1e}, golden defect "
                       "{:.1e}",
                       max_oracle_defect, golden_defect));
    return c;
}

// 8. Power-mean gap identity and positivity.
Criterion criterion_8() {
    Criterion c;
    Rng rng(kSeed + 8);
    double max_rel = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> a{rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)};
        const double gap = gusic_gap(2, a);
        const double square = (a[0] - a[1]) * (a[0] - a[1]);
        if (square == 0.0) continue;
        max_rel = std::max(max_rel, std::abs(gap - square) / square);
    }
    c.require(max_rel <= 1e-14,
              fmt::format("pair identity rel defect {:.3e}", max_rel));

    double min_gap = 0.0;
    for (int m = 3; m <= 6 && c.ok; ++m) {
        for (int i = 0; i < 1000; ++i) {
            std::vector<double> a(static_cast<std::size_t>(m));
            for (auto& v : a) v = rng.uniform(0.0, 4.0);
            const double gap = gusic_gap(m, a);
            min_gap = std::min(min_gap, gap);
            c.require(gap >= -1e-12,
                      fmt::format("m={} gap {:.3e} negative", m, gap));
            if (!c.ok) break;
        }
    }

    const std::vector<double> triple{1.0, 2.0, 3.0};
    const double golden = gusic_gap(3, triple);
    c.require(std::abs(golden - 54.0) <= 1e-12,
              fmt::format("golden gap = {} off 54", golden));
    c.note(fmt::format("pair rel defect {:.1e}, min tuple gap {:.1e}, golden "
                       "defect {:.1e}",
                       max_rel, min_gap, std::abs(golden - 54.0)));
    return c;
}

// 9. Guards reject out-of-hypothesis inputs with a named witness.
Criterion criterion_9() {
    Criterion c;
    const CheckOptions opts;
    const std::vector<double> endpoints{0.0, 1.0};
    const auto guard_report =
        run_check_bm(parse_family("schurer:p=1"), parse_functional("dirac"), 1,
                     2, parse_test_function("e2"), endpoints, opts);
    c.require(guard_report.verdict.kind == VerdictKind::rejected,
              "shifted-rate family not rejected");
    c.require(guard_report.verdict.reason.find("|Bm(e1)|=") != std::string::npos,
              fmt::format("reason lacks the moment: {}",
                          guard_report.verdict.reason));
    double reported = 0.0;
    if (const auto pos = guard_report.verdict.reason.find("|Bm(e1)|=");
        pos != std::string::npos)
        reported = std::stod(guard_report.verdict.reason.substr(pos + 9));
    c.require(reported > 1e-8,
              fmt::format("reported moment {:.3e} not above 1e-8", reported));

    const auto guard = bm_moment_guard(OperatorFamily::szasz_schurer(1),
                                       FunctionalFamily::dirac(), 1, 2,
                                       endpoints, 64);
    c.require(!guard.ok && std::abs(guard.bm_e1) > 1e-8,
              fmt::format("direct guard bm_e1 = {:.3e}", guard.bm_e1));

    const auto sin_report =
        run_check_a(parse_family("bernstein"), parse_functional("dirac"), 4,
                    parse_test_function("sin"), 0.25, 0.75, opts);
    c.require(sin_report.verdict.kind == VerdictKind::rejected,
              "concave input not rejected");
    c.require(sin_report.verdict.reason.find("precondition") != std::string::npos &&
                  sin_report.verdict.reason.find("negative") != std::string::npos,
              fmt::format("reason lacks the witness: {}",
                          sin_report.verdict.reason));
    c.note(fmt::format("moment witness {:.2e}; curvature witness \"{}\"",
                       reported, sin_report.verdict.reason));
    return c;
}

// 10. Boundary-circle coefficient recovery agrees with the recurrences.
Criterion criterion_10() {
    Criterion c;
    const std::vector<OperatorFamily> fams{
        OperatorFamily::bernstein(), OperatorFamily::szasz(),
        OperatorFamily::baskakov(), OperatorFamily::szasz_schurer(2)};
    double max_defect = 0.0;
    for (const auto& fam : fams) {
        const std::vector<double> points =
            fam.finite_support() ? std::vector<double>{0.25, 0.5, 0.75, 1.0}
                                 : std::vector<double>{0.5, 1.0, 2.0, 4.0};
        for (int n = 1; n <= 4 && c.ok; ++n) {
            for (double x : points) {
                const int N = std::min(48, fam.pick_order(n, x));
                const auto direct = fam.coefficients(n, x, N);
                const auto recovered = contour_coefficients(
                    [&](double theta) { return fam.boundary_value(n, x, theta); },
                    N, 4 * (N + 1));
                for (int k = 0; k <= N; ++k)
                    max_defect = std::max(
                        max_defect,
                        std::abs(recovered[static_cast<std::size_t>(k)] -
                                 direct[static_cast<std::size_t>(k)]));
                c.require(max_defect <= 1e-8,
                          fmt::format("{} n={} x={} defect {:.3e}", fam.name(),
                                      n, x, max_defect));
                if (!c.ok) break;
            }
        }
    }
    c.note(fmt::format("64 recoveries, max defect {:.1e}", max_defect));
    return c;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Criterion()>>> gates{
        {"pairwise positivity on the convex registry", criterion_1},
        {"three-point positivity with brute oracle", criterion_2},
        {"mean-vs-product positivity", criterion_3},
        {"exponential-family degeneration", criterion_4},
        {"reciprocal-power reversal", criterion_5},
        {"representation equivalence", criterion_6},
        {"difference-quotient sign law", criterion_7},
        {"power-mean gap identity", criterion_8},
        {"precondition guards", criterion_9},
        {"contour coefficient recovery", criterion_10},
    };

    int failures = 0;
    int id = 0;
    for (const auto& [name, gate] : gates) {
        ++id;
        Criterion result;
        try {
            result = gate();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = fmt::format("unexpected exception: {}", e.what());
        }
        failures += result.ok ? 0 : 1;
        fmt::print("criterion-{:02d} {} {} ({})\n", id,
                   result.ok ? "PASS" : "FAIL", name, result.detail);
    }
    if (failures > 0) fmt::print("{} criteria failed\n", failures);
    return failures > 0 ? 1 : 0;
}
