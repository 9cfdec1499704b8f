#include "opconvex/values.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

namespace opconvex {

namespace {

constexpr int kProbe = 16; // extra indices sampled for the tail bound

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// A_{k/grid}(f) for k = 0..kmax.
std::vector<double> functional_table(const FunctionalFamily& A, const RealFunction& f,
                                     int grid, int kmax) {
    std::vector<double> c(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k)
        c[static_cast<std::size_t>(k)] =
            A.apply(static_cast<double>(k) / static_cast<double>(grid), f);
    return c;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Largest |A_{k/grid}(f)| over the table plus a probe beyond it.
double probe_bound(const FunctionalFamily& A, const RealFunction& f, int grid,
                   std::span<const double> table, int table_top) {
    double m = max_abs(table);
    for (int k = table_top + 1; k <= table_top + kProbe; ++k)
        m = std::max(m, std::abs(A.apply(static_cast<double>(k) / grid, f)));
    return m;
}

struct EmWeights {
    std::vector<double> e; // a_{mn,k}(mean) - c_k(prod g_n(x_nu)), k <= N
    double tail_lumped = 0.0;
    double tail_product = 0.0;
};

/// Shared core of the mean-vs-product paths. Built directly from
/// coefficients so the moment guard also runs for families outside
/// the power-form hypothesis.
EmWeights em_weights(const OperatorFamily& fam, int n, int m,
                     std::span<const double> xs, int N) {
    if (m < 2) throw std::invalid_argument("fold count m must be >= 2");
    if (static_cast<int>(xs.size()) != m)
        throw std::invalid_argument("xs must list exactly m points");
    auto product = fam.generating_series(n, xs[0], N);
    for (int nu = 1; nu < m; ++nu)
        product = multiply(product,
                           fam.generating_series(n, xs[static_cast<std::size_t>(nu)], N));
    const double mean = mean_of(xs);
    const auto lumped = fam.coefficients(m * n, mean, N);

    EmWeights w;
    w.e.resize(static_cast<std::size_t>(N) + 1);
    double product_mass = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double pk = product.coeff(k);
        product_mass += pk;
        w.e[static_cast<std::size_t>(k)] = lumped[static_cast<std::size_t>(k)] - pk;
    }
    w.tail_lumped = fam.tail_mass(m * n, mean, N);
    w.tail_product = std::max(0.0, 1.0 - product_mass);
    return w;
}

MomentGuard guard_from_weights(const EmWeights& w, const FunctionalFamily& A, int m,
                               int n) {
    MomentGuard g;
    double zeroth = 0.0;
    double first = 0.0;
    for (int k = 0; k < static_cast<int>(w.e.size()); ++k) {
        zeroth += w.e[static_cast<std::size_t>(k)];
        first += static_cast<double>(k) * w.e[static_cast<std::size_t>(k)];
    }
    g.bm_e0 = zeroth;
    g.bm_e1 = A.affine_a() * first / static_cast<double>(m * n) + A.affine_b() * zeroth;
    g.ok = std::abs(g.bm_e0) < MomentGuard::kThreshold &&
           std::abs(g.bm_e1) < MomentGuard::kThreshold;
    return g;
}

void enforce_guard(const MomentGuard& g) {
    if (g.ok) return;
    const char* which = std::abs(g.bm_e1) >= MomentGuard::kThreshold ? "e1" : "e0";
    const double value = std::abs(g.bm_e1) >= MomentGuard::kThreshold
                             ? std::abs(g.bm_e1)
                             : std::abs(g.bm_e0);
    throw PreconditionError(fmt::format(
        "moment-guard |Bm({})|={:.6e} exceeds {:.0e}", which, value,
        MomentGuard::kThreshold));
}

} // namespace

const char* to_string(Method m) {
    switch (m) {
    case Method::direct: return "direct";
    case Method::series_convolution: return "series-convolution";
    case Method::divided_difference_representation: return "dd-representation";
    case Method::brute_force: return "brute-force";
    }
    return "?";
}

FunctionalValue operator_value(const OperatorFamily& fam, const FunctionalFamily& A,
                               int n, const RealFunction& f, double x, int N) {
    const auto a = fam.coefficients(n, x, N);
    const auto c = functional_table(A, f, n, N);
    double value = 0.0;
    for (int k = 0; k <= N; ++k)
        value += a[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];

    FunctionalValue out{value, N, 0.0, Method::direct};
    const double tail = fam.tail_mass(n, x, N);
    if (tail > 0.0) out.tail_bound = tail * probe_bound(A, f, n, c, N);
    return out;
}

FunctionalValue rasa_functional(const OperatorFamily& fam, const FunctionalFamily& A,
                                int n, const RealFunction& f, double x, double y,
                                int N) {
    const auto gx = fam.generating_series(n, x, N).resized(2 * N);
    const auto gy = fam.generating_series(n, y, N).resized(2 * N);
    const auto gxx = multiply(gx, gx);
    const auto gyy = multiply(gy, gy);
    const auto gxy = multiply(gx, gy);
    const auto c = functional_table(A, f, 2 * n, 2 * N);

    double value = 0.0;
    for (int k = 0; k <= 2 * N; ++k)
        value += (gxx.coeff(k) + gyy.coeff(k) - 2.0 * gxy.coeff(k)) *
                 c[static_cast<std::size_t>(k)];

    FunctionalValue out{value, N, 0.0, Method::series_convolution};
    const double tx = fam.tail_mass(n, x, N);
    const double ty = fam.tail_mass(n, y, N);
    if (tx > 0.0 || ty > 0.0) {
        const double missing = (1.0 - (1.0 - tx) * (1.0 - tx)) +
                               (1.0 - (1.0 - ty) * (1.0 - ty)) +
                               2.0 * (1.0 - (1.0 - tx) * (1.0 - ty));
        out.tail_bound = missing * probe_bound(A, f, 2 * n, c, 2 * N);
    }
    return out;
}

FunctionalValue rasa_functional_brute(const OperatorFamily& fam,
                                      const FunctionalFamily& A, int n,
                                      const RealFunction& f, double x, double y,
                                      int N) {
    const auto ax = fam.coefficients(n, x, N);
    const auto ay = fam.coefficients(n, y, N);
    const auto c = functional_table(A, f, 2 * n, 2 * N);

    double value = 0.0;
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            const double w = ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(j)] +
                             ay[static_cast<std::size_t>(i)] * ay[static_cast<std::size_t>(j)] -
                             2.0 * ax[static_cast<std::size_t>(i)] * ay[static_cast<std::size_t>(j)];
            value += w * c[static_cast<std::size_t>(i + j)];
        }
    }

    FunctionalValue out{value, N, 0.0, Method::brute_force};
    const double tx = fam.tail_mass(n, x, N);
    const double ty = fam.tail_mass(n, y, N);
    if (tx > 0.0 || ty > 0.0) {
        const double missing = (1.0 - (1.0 - tx) * (1.0 - tx)) +
                               (1.0 - (1.0 - ty) * (1.0 - ty)) +
                               2.0 * (1.0 - (1.0 - tx) * (1.0 - ty));
        out.tail_bound = missing * probe_bound(A, f, 2 * n, c, 2 * N);
    }
    return out;
}

FunctionalValue cm_value(const OperatorFamily& fam, const FunctionalFamily& A,
                         int n, int m, const RealFunction& f,
                         std::span<const double> xs, int N) {
    if (m < 2) throw std::invalid_argument("fold count m must be >= 2");
    if (static_cast<int>(xs.size()) != m)
        throw std::invalid_argument("xs must list exactly m points");
    const int K = m * N;

    std::vector<double> weights(static_cast<std::size_t>(K) + 1, 0.0);
    TruncatedSeries product = TruncatedSeries::one(K);
    double tail_powers = 0.0;
    double prod_retained = 1.0;
    for (int nu = 0; nu < m; ++nu) {
        const auto g = fam.generating_series(n, xs[static_cast<std::size_t>(nu)], N)
                           .resized(K);
        product = multiply(product, g);
        const auto gm = int_pow(g, m);
        for (int k = 0; k <= K; ++k)
            weights[static_cast<std::size_t>(k)] += gm.coeff(k);
        const double t = fam.tail_mass(n, xs[static_cast<std::size_t>(nu)], N);
        tail_powers += 1.0 - std::pow(1.0 - t, m);
        prod_retained *= 1.0 - t;
    }
    for (int k = 0; k <= K; ++k)
        weights[static_cast<std::size_t>(k)] -= static_cast<double>(m) * product.coeff(k);

    const auto c = functional_table(A, f, m * n, K);
    double value = 0.0;
    for (int k = 0; k <= K; ++k)
        value += weights[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];

    FunctionalValue out{value, N, 0.0, Method::series_convolution};
    const double missing = tail_powers + static_cast<double>(m) * (1.0 - prod_retained);
    if (missing > 0.0) out.tail_bound = missing * probe_bound(A, f, m * n, c, K);
    return out;
}

FunctionalValue cm_value_brute(const OperatorFamily& fam, const FunctionalFamily& A,
                               int n, int m, const RealFunction& f,
                               std::span<const double> xs, int N) {
    if (m != 2 && m != 3)
        throw std::invalid_argument("brute-force path is materialized for m = 2 or 3");
    if (static_cast<int>(xs.size()) != m)
        throw std::invalid_argument("xs must list exactly m points");
    std::vector<std::vector<double>> a;
    for (int nu = 0; nu < m; ++nu)
        a.push_back(fam.coefficients(n, xs[static_cast<std::size_t>(nu)], N));
    const auto c = functional_table(A, f, m * n, m * N);

    double value = 0.0;
    if (m == 2) {
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                double same = 0.0;
                for (int nu = 0; nu < 2; ++nu)
                    same += a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(i)] *
                            a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(j)];
                const double cross = a[0][static_cast<std::size_t>(i)] *
                                     a[1][static_cast<std::size_t>(j)];
                value += (same - 2.0 * cross) * c[static_cast<std::size_t>(i + j)];
            }
        }
    } else {
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                for (int k = 0; k <= N; ++k) {
                    double same = 0.0;
                    for (int nu = 0; nu < 3; ++nu)
                        same += a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(i)] *
                                a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(j)] *
                                a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(k)];
                    const double cross = a[0][static_cast<std::size_t>(i)] *
                                         a[1][static_cast<std::size_t>(j)] *
                                         a[2][static_cast<std::size_t>(k)];
                    value += (same - 3.0 * cross) * c[static_cast<std::size_t>(i + j + k)];
                }
            }
        }
    }
    return FunctionalValue{value, N, 0.0, Method::brute_force};
}

MomentGuard bm_moment_guard(const OperatorFamily& fam, const FunctionalFamily& A,
                            int n, int m, std::span<const double> xs, int N) {
    return guard_from_weights(em_weights(fam, n, m, xs, N), A, m, n);
}

FunctionalValue bm_value(const OperatorFamily& fam, const FunctionalFamily& A,
                         int n, int m, const RealFunction& f,
                         std::span<const double> xs, int N) {
    const auto w = em_weights(fam, n, m, xs, N);
    enforce_guard(guard_from_weights(w, A, m, n));

    const auto c = functional_table(A, f, m * n, N);
    double value = 0.0;
    for (int k = 0; k <= N; ++k)
        value += w.e[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];

    FunctionalValue out{value, N, 0.0, Method::series_convolution};
    const double missing = w.tail_lumped + w.tail_product;
    if (missing > 0.0) out.tail_bound = missing * probe_bound(A, f, m * n, c, N);
    return out;
}

FunctionalValue bm_value_via_representation(const OperatorFamily& fam,
                                            const FunctionalFamily& A, int n, int m,
                                            const RealFunction& f,
                                            std::span<const double> xs, int N) {
    if (N < 2) throw std::invalid_argument("representation path needs order >= 2");
    const auto w = em_weights(fam, n, m, xs, N);
    enforce_guard(guard_from_weights(w, A, m, n));

    // Quotient by (z-1)^2: q_k = sum of the double cumulative sums of e.
    std::vector<double> s(w.e.size());
    double run = 0.0;
    for (std::size_t k = 0; k < w.e.size(); ++k) {
        run -= w.e[k];
        s[k] = run;
    }
    std::vector<double> q(w.e.size() - 2);
    run = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        run -= s[k];
        q[k] = run;
    }

    const auto dd = second_divided_differences(
        A, f, m * n, static_cast<int>(q.size()) - 1);
    double value = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) value += q[k] * dd[k];
    const double grid = static_cast<double>(m * n);
    value *= 2.0 / (grid * grid);

    FunctionalValue out{value, N, 0.0, Method::divided_difference_representation};
    const double missing = w.tail_lumped + w.tail_product;
    if (missing > 0.0) {
        const auto c = functional_table(A, f, m * n, N);
        out.tail_bound = missing * probe_bound(A, f, m * n, c, N);
    }
    return out;
}

FunctionalValue jensen_gap_value(const OperatorFamily& fam,
                                 const FunctionalFamily& A, int n, int m,
                                 const RealFunction& f, std::span<const double> xs,
                                 int N) {
    if (m < 2) throw std::invalid_argument("fold count m must be >= 2");
    if (static_cast<int>(xs.size()) != m)
        throw std::invalid_argument("xs must list exactly m points");
    double value = 0.0;
    double tail = 0.0;
    for (double xv : xs) {
        const auto v = operator_value(fam, A, m * n, f, xv, N);
        value += v.value / static_cast<double>(m);
        tail += v.tail_bound / static_cast<double>(m);
    }
    const auto at_mean = operator_value(fam, A, m * n, f, mean_of(xs), N);
    value -= at_mean.value;
    tail += at_mean.tail_bound;
    return FunctionalValue{value, N, tail, Method::direct};
}

DecompositionCheck decomposition_check(const OperatorFamily& fam,
                                       const FunctionalFamily& A, int n, int m,
                                       const RealFunction& f,
                                       std::span<const double> xs, int N,
                                       double tolerance) {
    const auto cm = cm_value(fam, A, n, m, f, xs, N);
    const auto jg = jensen_gap_value(fam, A, n, m, f, xs, N);
    const auto bm = bm_value(fam, A, n, m, f, xs, N);

    DecompositionCheck out;
    out.cm = cm.value;
    out.jensen = jg.value;
    out.bm = bm.value;
    out.defect = std::abs(cm.value - static_cast<double>(m) * jg.value -
                          static_cast<double>(m) * bm.value);
    out.combined_bound = tolerance + cm.tail_bound +
                         static_cast<double>(m) * (jg.tail_bound + bm.tail_bound);
    out.ok = out.defect <= out.combined_bound;
    return out;
}

} // namespace opconvex
