#include "opconvex/inequality.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace opconvex {

namespace {

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

void check_em_args(const OperatorFamily& fam, int m, std::span<const double> xs) {
    if (m < 2) throw std::invalid_argument("fold count m must be >= 2");
    if (static_cast<int>(xs.size()) != m)
        throw std::invalid_argument("xs must list exactly m points");
    if (!fam.power_form())
        throw PreconditionError("power-form hypothesis unavailable for family " +
                                fam.name());
}

} // namespace

const char* to_string(SignVerdict v) {
    switch (v) {
    case SignVerdict::all_non_negative: return "AllNonNegative";
    case SignVerdict::all_non_positive: return "AllNonPositive";
    case SignVerdict::all_zero: return "AllZero";
    case SignVerdict::mixed: return "Mixed";
    }
    return "?";
}

SignClassification classify_signs(std::span<const double> seq, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("sign tolerance must be positive");
    SignClassification c;
    c.tolerance = tol;
    for (int k = 0; k < static_cast<int>(seq.size()); ++k) {
        const double v = seq[static_cast<std::size_t>(k)];
        if (v > tol && !c.witness_positive) c.witness_positive = k;
        if (v < -tol && !c.witness_negative) c.witness_negative = k;
    }
    if (c.witness_positive && c.witness_negative)
        c.verdict = SignVerdict::mixed;
    else if (c.witness_positive)
        c.verdict = SignVerdict::all_non_negative;
    else if (c.witness_negative)
        c.verdict = SignVerdict::all_non_positive;
    else
        c.verdict = SignVerdict::all_zero;
    return c;
}

double default_sign_tolerance(const OperatorFamily& fam) {
    return fam.finite_support() ? 1e-12 : 1e-9;
}

BetaResult beta_series(const OperatorFamily& fam, int n, double x, double y, int N) {
    if (N < 0) throw std::invalid_argument("series order must be >= 0");
    const auto gx = fam.generating_series(n, x, N + 1);
    const auto gy = fam.generating_series(n, y, N + 1);
    const auto diff = linear_combine(1.0, gx, -1.0, gy);
    auto [quotient, residual] = divide_by_z_minus_1(diff, 1);
    return BetaResult{std::move(quotient), residual};
}

std::vector<double> beta_closed_form(const OperatorFamily& fam, int n, double x,
                                     double y, int N) {
    const auto ax = fam.coefficients(n, x, N);
    const auto ay = fam.coefficients(n, y, N);
    std::vector<double> beta(static_cast<std::size_t>(N) + 1);
    double hx = 0.0;
    double hy = 0.0;
    for (int k = 0; k <= N; ++k) {
        hx -= ax[static_cast<std::size_t>(k)];
        hy -= ay[static_cast<std::size_t>(k)];
        beta[static_cast<std::size_t>(k)] = hx - hy;
    }
    return beta;
}

std::vector<double> squared_quotient_coefficients(const OperatorFamily& fam, int n,
                                                  double x, double y, int N) {
    const auto q = beta_series(fam, n, x, y, N).series;
    return multiply(q, q).coeffs();
}

TruncatedSeries em_series(const OperatorFamily& fam, int n, int m,
                          std::span<const double> xs, int N) {
    check_em_args(fam, m, xs);
    if (N < 0) throw std::invalid_argument("series order must be >= 0");
    auto product = fam.generating_series(n, xs[0], N);
    for (int nu = 1; nu < m; ++nu)
        product = multiply(product, fam.generating_series(n, xs[static_cast<std::size_t>(nu)], N));
    const auto lumped = fam.generating_series(m * n, mean_of(xs), N);
    return linear_combine(1.0, lumped, -1.0, product);
}

EmQuotient em_quotient(const OperatorFamily& fam, int n, int m,
                       std::span<const double> xs, int N, int power) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("quotient power must be 1 or 2");
    // Build E at order N + power so the retained quotient carries
    // coefficients 0..N.
    const auto em = em_series(fam, n, m, xs, N + power);
    auto [quotient, residual] = divide_by_z_minus_1(em, power);
    EmQuotient out{std::move(quotient), {}, residual};
    out.classification =
        classify_signs(out.series.coeffs(), default_sign_tolerance(fam));
    return out;
}

double gusic_gap(int m, std::span<const double> a) {
    if (m < 2) throw std::invalid_argument("fold count m must be >= 2");
    if (static_cast<int>(a.size()) != m)
        throw std::invalid_argument("input must list exactly m values");
    for (double v : a) {
        if (!(v >= 0.0))
            throw std::invalid_argument("gap identity requires nonnegative inputs");
    }
    // The two terms cancel almost completely near the AM-GM equality
    // case; extended precision keeps the m=2 identity exact to double.
    __float128 sum = 0;
    __float128 prod = 1;
    for (double v : a) {
        sum += static_cast<__float128>(v);
        prod *= static_cast<__float128>(v);
    }
    __float128 sum_pow = 1;
    __float128 mm = 1;
    for (int i = 0; i < m; ++i) {
        sum_pow *= sum;
        mm *= static_cast<__float128>(m);
    }
    return static_cast<double>(sum_pow - mm * prod);
}

double gusic_decomposition(std::span<const double> a) {
    if (a.size() == 2) {
        const double d = a[0] - a[1];
        return d * d;
    }
    if (a.size() == 3) {
        double total = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const int k = 3 - i - j;
                const double d = a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(j)];
                const double p = 0.5 * (a[static_cast<std::size_t>(i)] +
                                        a[static_cast<std::size_t>(j)]) +
                                 3.5 * a[static_cast<std::size_t>(k)];
                total += d * d * p;
            }
        }
        return total;
    }
    throw std::invalid_argument("pairwise weights are materialized only for m = 2 or 3");
}

} // namespace opconvex
