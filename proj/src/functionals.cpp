#include "opconvex/functionals.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace opconvex {

namespace {

constexpr double kQuadTol = 1e-11;
constexpr int kMaxDepth = 48;

double simpson_refine(const RealFunction& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    // Message is embedded in one-cell report reasons; keep it comma-free.
    if (depth <= 0)
        throw std::runtime_error("adaptive Simpson failed to converge on [" +
                                 std::to_string(a) + " .. " + std::to_string(b) + "]");
    return simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double format_suffix_real(std::string_view text, std::string_view prefix) {
    std::string_view rest = text.substr(prefix.size());
    double v = 0.0;
    const auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc{} || end != rest.data() + rest.size())
        throw std::invalid_argument("could not parse parameter from '" +
                                    std::string(text) + "'");
    return v;
}

std::string trim_real(double v) {
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

} // namespace

double integrate_adaptive_simpson(const RealFunction& f, double lo, double hi,
                                  double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (lo == hi) return 0.0;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_refine(f, lo, hi, fa, fm, fb, whole, abs_tol, kMaxDepth);
}

FunctionalFamily FunctionalFamily::dirac() {
    FunctionalFamily a;
    a.kind_ = FunctionalKind::dirac;
    a.name_ = "dirac";
    a.affine_a_ = 1.0;
    a.affine_b_ = 0.0;
    return a;
}

FunctionalFamily FunctionalFamily::sliding_average(double h) {
    if (!(h > 0.0)) throw std::invalid_argument("averaging width h must be positive");
    FunctionalFamily a;
    a.kind_ = FunctionalKind::sliding_average;
    a.name_ = "avg:h=" + trim_real(h);
    a.affine_a_ = 1.0;
    a.affine_b_ = 0.5 * h;
    a.window_ = h;
    return a;
}

FunctionalFamily FunctionalFamily::custom(
    std::string name, double affine_a, double affine_b,
    std::function<double(double, const RealFunction&)> apply) {
    if (!apply) throw std::invalid_argument("custom functional has no apply callback");
    FunctionalFamily a;
    a.kind_ = FunctionalKind::custom;
    a.name_ = std::move(name);
    a.affine_a_ = affine_a;
    a.affine_b_ = affine_b;
    a.apply_ = std::move(apply);
    return a;
}

double FunctionalFamily::apply(double t, const RealFunction& f) const {
    if (!(t >= 0.0)) throw std::invalid_argument("functional parameter t must be >= 0");
    switch (kind_) {
    case FunctionalKind::dirac:
        return f(t);
    case FunctionalKind::sliding_average:
        // Tolerance on the averaged value, so the raw integral gets h times it.
        return integrate_adaptive_simpson(f, t, t + window_, kQuadTol * window_) /
               window_;
    case FunctionalKind::custom:
        return apply_(t, f);
    }
    throw std::logic_error("unreachable functional kind");
}

FunctionalFamily parse_functional(std::string_view text) {
    if (text == "dirac") return FunctionalFamily::dirac();
    if (text.starts_with("avg:h="))
        return FunctionalFamily::sliding_average(format_suffix_real(text, "avg:h="));
    throw std::invalid_argument("unknown functional '" + std::string(text) +
                                "' (expected dirac|avg:h=<real>)");
}

const std::vector<TestFunction>& builtin_test_functions() {
    static const std::vector<TestFunction> registry = [] {
        std::vector<TestFunction> fns;
        fns.push_back({"e0", [](double) { return 1.0; }, true, "[0,inf)"});
        fns.push_back({"e1", [](double x) { return x; }, true, "[0,inf)"});
        fns.push_back({"e2", [](double x) { return x * x; }, true, "[0,inf)"});
        fns.push_back({"e3", [](double x) { return x * x * x; }, true, "[0,inf)"});
        fns.push_back({"exp", [](double x) { return std::exp(x); }, true, "[0,inf)"});
        fns.push_back({"exp-neg", [](double x) { return std::exp(-x); }, true, "[0,inf)"});
        for (double c : {0.25, 0.5, 1.0}) {
            fns.push_back({"abs:c=" + trim_real(c),
                           [c](double x) { return std::abs(x - c); }, true, "[0,inf)"});
        }
        for (double c : {0.25, 0.5, 1.0}) {
            fns.push_back({"hinge:c=" + trim_real(c),
                           [c](double x) { return std::max(0.0, x - c); }, true,
                           "[0,inf)"});
        }
        fns.push_back({"sin", [](double x) { return std::sin(x); }, false, "[0,pi]"});
        fns.push_back({"neg-e2", [](double x) { return -x * x; }, false, "[0,inf)"});
        return fns;
    }();
    return registry;
}

std::vector<TestFunction> convex_test_functions() {
    std::vector<TestFunction> out;
    for (const auto& f : builtin_test_functions())
        if (f.convex) out.push_back(f);
    return out;
}

TestFunction parse_test_function(std::string_view text) {
    for (const auto& f : builtin_test_functions())
        if (f.name == text) return f;
    if (text.starts_with("abs:c=")) {
        const double c = format_suffix_real(text, "abs:c=");
        return {std::string(text), [c](double x) { return std::abs(x - c); }, true,
                "[0,inf)"};
    }
    if (text.starts_with("hinge:c=")) {
        const double c = format_suffix_real(text, "hinge:c=");
        return {std::string(text), [c](double x) { return std::max(0.0, x - c); },
                true, "[0,inf)"};
    }
    throw std::invalid_argument("unknown test function '" + std::string(text) + "'");
}

std::vector<double> second_divided_differences(const FunctionalFamily& A,
                                               const RealFunction& f, int n,
                                               int K) {
    if (n < 1) throw std::invalid_argument("grid index n must be >= 1");
    if (K < 0) throw std::invalid_argument("difference count K must be >= 0");
    std::vector<double> g(static_cast<std::size_t>(K) + 3);
    for (int k = 0; k <= K + 2; ++k)
        g[static_cast<std::size_t>(k)] =
            A.apply(static_cast<double>(k) / static_cast<double>(n), f);
    std::vector<double> d(static_cast<std::size_t>(K) + 1);
    const double scale = 0.5 * static_cast<double>(n) * static_cast<double>(n);
    for (int k = 0; k <= K; ++k)
        d[static_cast<std::size_t>(k)] =
            (g[static_cast<std::size_t>(k)] - 2.0 * g[static_cast<std::size_t>(k) + 1] +
             g[static_cast<std::size_t>(k) + 2]) *
            scale;
    return d;
}

} // namespace opconvex
