#include "opconvex/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opconvex {

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("TruncatedSeries: empty coefficient vector");
    for (double c : coeffs_)
        if (!std::isfinite(c))
            throw std::invalid_argument("TruncatedSeries: non-finite coefficient");
}

TruncatedSeries TruncatedSeries::zero(int order) {
    if (order < 0) throw std::invalid_argument("TruncatedSeries::zero: negative order");
    return TruncatedSeries(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
}

TruncatedSeries TruncatedSeries::one(int order) {
    TruncatedSeries s = zero(order);
    s.coeffs_[0] = 1.0;
    return s;
}

TruncatedSeries TruncatedSeries::resized(int new_order) const {
    if (new_order < 0) throw std::invalid_argument("TruncatedSeries::resized: negative order");
    std::vector<double> c(static_cast<std::size_t>(new_order) + 1, 0.0);
    const std::size_t keep = std::min(c.size(), coeffs_.size());
    for (std::size_t k = 0; k < keep; ++k) c[k] = coeffs_[k];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries linear_combine(double alpha, const TruncatedSeries& s,
                               double beta, const TruncatedSeries& t) {
    const int n = std::max(s.order(), t.order());
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        c[static_cast<std::size_t>(k)] = alpha * s.coeff(k) + beta * t.coeff(k);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries multiply(const TruncatedSeries& s, const TruncatedSeries& t) {
    const int n = std::max(s.order(), t.order());
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double si = s.coeff(i);
        if (si == 0.0) continue;
        for (int j = 0; i + j <= n; ++j)
            c[static_cast<std::size_t>(i + j)] += si * t.coeff(j);
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries int_pow(const TruncatedSeries& s, int m) {
    if (m < 0) throw std::invalid_argument("int_pow: negative exponent");
    TruncatedSeries result = TruncatedSeries::one(s.order());
    TruncatedSeries base = s;
    // Truncation at a fixed order is a quotient ring, so squaring commutes
    // with repeated multiplication exactly.
    while (m > 0) {
        if (m & 1) result = multiply(result, base);
        m >>= 1;
        if (m > 0) base = multiply(base, base);
    }
    return result;
}

double eval_real(const TruncatedSeries& s, double z) {
    double acc = 0.0;
    const auto& c = s.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

namespace {

// One stage of division by (z-1): S = (z-1)*Q on indices 0..N-1.
std::pair<std::vector<double>, double> divide_once(const std::vector<double>& s) {
    std::vector<double> q(s.size() - 1);
    double running = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        running -= s[k];
        if (k + 1 < s.size()) q[k] = running;
    }
    return {std::move(q), std::abs(running)};
}

} // namespace

DivisionResult divide_by_z_minus_1(const TruncatedSeries& s, int power) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("divide_by_z_minus_1: power must be 1 or 2");
    if (s.order() < power)
        throw std::invalid_argument("divide_by_z_minus_1: series order below requested power");
    auto [q, defect] = divide_once(s.coeffs());
    if (power == 2) {
        auto [q2, defect2] = divide_once(q);
        return {TruncatedSeries(std::move(q2)), std::max(defect, defect2)};
    }
    return {TruncatedSeries(std::move(q)), defect};
}

double coeff_as_derivative(const TruncatedSeries& s, int k) {
    if (k < 0 || k > s.order())
        throw std::out_of_range("coeff_as_derivative: index outside truncation order");
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
    return factorial * s.coeff(k);
}

std::vector<double> contour_coefficients(
    const std::function<std::complex<double>(double)>& boundary_values,
    int order, int samples, double* imag_defect) {
    if (order < 0) throw std::invalid_argument("contour_coefficients: negative order");
    if (samples < 4 * (order + 1))
        throw std::invalid_argument("contour_coefficients: need samples >= 4*(order+1)");

    std::vector<std::complex<double>> f(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / samples;
        f[static_cast<std::size_t>(j)] = boundary_values(theta);
    }

    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double worst_imag = 0.0;
    for (int k = 0; k <= order; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < samples; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / samples;
            acc += f[static_cast<std::size_t>(j)] *
                   std::polar(1.0, -static_cast<double>(k) * theta);
        }
        acc /= static_cast<double>(samples);
        worst_imag = std::max(worst_imag, std::abs(acc.imag()));
        c[static_cast<std::size_t>(k)] = acc.real();
    }
    if (imag_defect) *imag_defect = worst_imag;
    return c;
}

} // namespace opconvex
