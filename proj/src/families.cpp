#include "opconvex/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace opconvex {

namespace {

std::complex<double> cpow_int(std::complex<double> base, int m) {
    std::complex<double> acc{1.0, 0.0};
    while (m > 0) {
        if (m & 1) acc *= base;
        base *= base;
        m >>= 1;
    }
    return acc;
}

} // namespace

OperatorFamily OperatorFamily::bernstein() {
    OperatorFamily f;
    f.kind_ = FamilyKind::bernstein;
    f.name_ = "bernstein";
    f.domain_max_ = 1.0;
    f.finite_support_ = true;
    f.power_form_ = true;
    return f;
}

OperatorFamily OperatorFamily::szasz() {
    OperatorFamily f;
    f.kind_ = FamilyKind::szasz;
    f.name_ = "szasz";
    f.domain_max_ = std::numeric_limits<double>::infinity();
    f.power_form_ = true;
    return f;
}

OperatorFamily OperatorFamily::baskakov() {
    OperatorFamily f;
    f.kind_ = FamilyKind::baskakov;
    f.name_ = "baskakov";
    f.domain_max_ = std::numeric_limits<double>::infinity();
    f.power_form_ = true;
    return f;
}

OperatorFamily OperatorFamily::szasz_schurer(int p) {
    if (p < 0) throw std::invalid_argument("schurer parameter p must be >= 0");
    OperatorFamily f;
    f.kind_ = FamilyKind::szasz_schurer;
    f.name_ = "schurer:p=" + std::to_string(p);
    f.domain_max_ = std::numeric_limits<double>::infinity();
    f.power_form_ = (p == 0); // with p = 0 the weight is the plain exponential
    f.schurer_p_ = p;
    return f;
}

OperatorFamily OperatorFamily::mastroianni(PhiOracle oracle) {
    if (!oracle.eval_derivative)
        throw std::invalid_argument("mastroianni oracle has no derivative callback");
    OperatorFamily f;
    f.kind_ = FamilyKind::mastroianni_custom;
    f.name_ = oracle.name.empty() ? std::string("custom") : oracle.name;
    f.domain_max_ = std::numeric_limits<double>::infinity();
    f.phi_ = std::move(oracle);
    return f;
}

void OperatorFamily::check_args(int n, double x, int order) const {
    if (n < 1) throw std::invalid_argument("family index n must be >= 1");
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    if (!std::isfinite(x) || x < 0.0)
        throw std::invalid_argument("point x must be finite and >= 0");
    if (x > domain_max_)
        throw std::invalid_argument("point x exceeds the family domain [0," +
                                    std::to_string(domain_max_) + "]");
}

std::vector<double> OperatorFamily::coefficients(int n, double x, int order) const {
    check_args(n, x, order);
    std::vector<double> a(static_cast<std::size_t>(order) + 1, 0.0);

    switch (kind_) {
    case FamilyKind::bernstein: {
        // Degenerate endpoints would make the ratio x/(1-x) singular.
        if (x == 0.0) {
            a[0] = 1.0;
            return a;
        }
        if (x == 1.0) {
            if (n <= order) a[static_cast<std::size_t>(n)] = 1.0;
            return a;
        }
        const double ratio = x / (1.0 - x);
        double cur = std::pow(1.0 - x, n);
        const int top = std::min(order, n);
        for (int k = 0; k <= top; ++k) {
            a[static_cast<std::size_t>(k)] = cur;
            cur *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
        return a;
    }
    case FamilyKind::szasz: {
        const double lambda = static_cast<double>(n) * x;
        double cur = std::exp(-lambda);
        for (int k = 0; k <= order; ++k) {
            a[static_cast<std::size_t>(k)] = cur;
            cur *= lambda / static_cast<double>(k + 1);
        }
        return a;
    }
    case FamilyKind::baskakov: {
        const double ratio = x / (1.0 + x);
        double cur = std::pow(1.0 + x, -n);
        for (int k = 0; k <= order; ++k) {
            a[static_cast<std::size_t>(k)] = cur;
            cur *= ratio * static_cast<double>(n + k) / static_cast<double>(k + 1);
        }
        return a;
    }
    case FamilyKind::szasz_schurer: {
        const double lambda = static_cast<double>(n + schurer_p_) * x;
        double cur = std::exp(-lambda);
        for (int k = 0; k <= order; ++k) {
            a[static_cast<std::size_t>(k)] = cur;
            cur *= lambda / static_cast<double>(k + 1);
        }
        return a;
    }
    case FamilyKind::mastroianni_custom: {
        double t = 1.0; // x^k / k!
        for (int k = 0; k <= order; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            a[static_cast<std::size_t>(k)] = sign * t * phi_.eval_derivative(n, k, x);
            t *= x / static_cast<double>(k + 1);
        }
        return a;
    }
    }
    throw std::logic_error("unreachable family kind");
}

TruncatedSeries OperatorFamily::generating_series(int n, double x, int order) const {
    return TruncatedSeries(coefficients(n, x, order));
}

double OperatorFamily::tail_mass(int n, double x, int order) const {
    check_args(n, x, order);
    // Finite support discards nothing once every index is retained.
    if (finite_support_ && order >= n) return 0.0;
    const auto a = coefficients(n, x, order);
    const double total = std::accumulate(a.begin(), a.end(), 0.0);
    return std::max(0.0, 1.0 - total);
}

double OperatorFamily::first_moment(int n, double x, int order) const {
    const auto a = coefficients(n, x, order);
    double s = 0.0;
    for (int k = 0; k <= order; ++k)
        s += static_cast<double>(k) * a[static_cast<std::size_t>(k)];
    return s;
}

int OperatorFamily::pick_order(int n, double x, double tail_target) const {
    if (!(tail_target > 0.0))
        throw std::invalid_argument("tail target must be positive");
    const auto a = coefficients(n, x, kMaxAutoOrder);
    double partial = 0.0;
    for (int k = 0; k <= kMaxAutoOrder; ++k) {
        partial += a[static_cast<std::size_t>(k)];
        const bool covered = finite_support_ ? (k >= n) : (1.0 - partial <= tail_target);
        if (covered) return k;
    }
    return kMaxAutoOrder;
}

std::complex<double> OperatorFamily::boundary_value(int n, double x, double theta) const {
    check_args(n, x, 0);
    const std::complex<double> z = std::polar(1.0, theta);
    switch (kind_) {
    case FamilyKind::bernstein:
        return cpow_int(std::complex<double>(1.0 - x, 0.0) + x * z, n);
    case FamilyKind::szasz:
        return std::exp(static_cast<double>(n) * x * (z - 1.0));
    case FamilyKind::baskakov:
        return 1.0 / cpow_int(std::complex<double>(1.0 + x, 0.0) - x * z, n);
    case FamilyKind::szasz_schurer:
        return std::exp(static_cast<double>(n + schurer_p_) * x * (z - 1.0));
    case FamilyKind::mastroianni_custom:
        throw std::domain_error("boundary values need a closed-form family");
    }
    throw std::logic_error("unreachable family kind");
}

OperatorFamily parse_family(std::string_view text) {
    if (text == "bernstein") return OperatorFamily::bernstein();
    if (text == "szasz") return OperatorFamily::szasz();
    if (text == "baskakov") return OperatorFamily::baskakov();

    for (std::string_view prefix : {"schurer", "szasz-schurer"}) {
        if (!text.starts_with(prefix)) continue;
        std::string_view rest = text.substr(prefix.size());
        if (!rest.starts_with(":p="))
            throw std::invalid_argument(
                "schurer family needs an explicit parameter, e.g. schurer:p=1");
        rest.remove_prefix(3);
        int p = 0;
        const auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
        if (ec != std::errc{} || end != rest.data() + rest.size())
            throw std::invalid_argument("could not parse schurer parameter from '" +
                                        std::string(text) + "'");
        return OperatorFamily::szasz_schurer(p);
    }
    throw std::invalid_argument("unknown family '" + std::string(text) +
                                "' (expected bernstein|szasz|baskakov|schurer:p=<int>)");
}

PhiOracle bernstein_phi() {
    return PhiOracle{
        "bernstein-phi",
        [](int n, int k, double x) -> double {
            // d^k/dx^k (1-x)^n = (-1)^k n(n-1)...(n-k+1) (1-x)^(n-k)
            if (k > n) return 0.0;
            double falling = 1.0;
            for (int i = 0; i < k; ++i) falling *= static_cast<double>(n - i);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            return sign * falling * std::pow(1.0 - x, n - k);
        }};
}

PhiOracle szasz_phi() {
    return PhiOracle{
        "szasz-phi",
        [](int n, int k, double x) -> double {
            // d^k/dx^k e^(-nx) = (-n)^k e^(-nx); the log form keeps the
            // n^k factor from overflowing before it is damped.
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double magnitude =
                std::exp(static_cast<double>(k) * std::log(static_cast<double>(n)) -
                         static_cast<double>(n) * x);
            return sign * magnitude;
        }};
}

PhiOracle baskakov_phi() {
    return PhiOracle{
        "baskakov-phi",
        [](int n, int k, double x) -> double {
            // d^k/dx^k (1+x)^(-n) = (-1)^k n(n+1)...(n+k-1) (1+x)^(-n-k)
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double log_rising =
                std::lgamma(static_cast<double>(n + k)) - std::lgamma(static_cast<double>(n));
            return sign * std::exp(log_rising -
                                   static_cast<double>(n + k) * std::log1p(x));
        }};
}

PhiValidation validate_phi(const PhiOracle& oracle, int n, int max_k,
                           std::span<const double> sample_xs) {
    if (!oracle.eval_derivative)
        throw std::invalid_argument("phi oracle has no derivative callback");
    if (n < 1) throw std::invalid_argument("family index n must be >= 1");
    if (max_k < 0) throw std::invalid_argument("max derivative index must be >= 0");

    constexpr double kTol = 1e-12;
    PhiValidation report;
    report.phi_at_zero_defect = std::abs(oracle.eval_derivative(n, 0, 0.0) - 1.0);
    for (double x : sample_xs) {
        for (int k = 0; k <= max_k; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double v = sign * oracle.eval_derivative(n, k, x);
            if (v < -kTol) report.violations.push_back({k, x, v});
        }
    }
    report.passed = report.phi_at_zero_defect <= kTol && report.violations.empty();
    return report;
}

} // namespace opconvex
