#ifndef OPCONVEX_FUNCTIONALS_HPP
#define OPCONVEX_FUNCTIONALS_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace opconvex {

using RealFunction = std::function<double(double)>;

enum class FunctionalKind {
    dirac,
    sliding_average,
    custom,
};

/// A family {A_t} of positive linear functionals satisfying
///   i)  A_t(e_0) = 1
///   ii) A_t(e_1) = affine_a * t + affine_b.
/// Dirac evaluates at t; the sliding average integrates over
/// [t, t+h] with weight 1/h.
class FunctionalFamily {
public:
    static FunctionalFamily dirac();
    static FunctionalFamily sliding_average(double h);
    static FunctionalFamily custom(
        std::string name, double affine_a, double affine_b,
        std::function<double(double, const RealFunction&)> apply);

    FunctionalKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double affine_a() const { return affine_a_; }
    double affine_b() const { return affine_b_; }
    /// Averaging window width; 0 for Dirac and custom kinds.
    double window() const { return window_; }

    /// A_t(f). Sliding averages integrate by adaptive Simpson to an
    /// absolute tolerance of 1e-11 on the averaged value and throw
    /// std::runtime_error if the refinement budget is exhausted.
    double apply(double t, const RealFunction& f) const;

private:
    FunctionalFamily() = default;

    FunctionalKind kind_ = FunctionalKind::dirac;
    std::string name_;
    double affine_a_ = 1.0;
    double affine_b_ = 0.0;
    double window_ = 0.0;
    std::function<double(double, const RealFunction&)> apply_;
};

/// Parse a CLI functional name: "dirac" or "avg:h=0.1".
FunctionalFamily parse_functional(std::string_view text);

/// Adaptive Simpson quadrature of f over [lo, hi] to the given
/// absolute tolerance. Throws std::runtime_error when the recursion
/// depth limit is hit before the local error estimate falls below
/// the budget.
double integrate_adaptive_simpson(const RealFunction& f, double lo, double hi,
                                  double abs_tol);

struct TestFunction {
    std::string name;
    RealFunction eval;
    bool convex = false;
    std::string domain_hint;
};

/// The shipped registry: e0, e1, e2, e3, exp, exp-neg, abs:c and
/// hinge:c for c in {0.25, 0.5, 1}, plus the nonconvex controls sin
/// and neg-e2.
const std::vector<TestFunction>& builtin_test_functions();

/// The convex subset of the registry, in registry order.
std::vector<TestFunction> convex_test_functions();

/// Look up a registry name; "abs:c=<real>" and "hinge:c=<real>"
/// accept arbitrary kink locations. Throws std::invalid_argument on
/// unknown names.
TestFunction parse_test_function(std::string_view text);

/// Second divided differences of g(t) = A_t(f) on the uniform grid
/// t = k/n: d_k = (g(k/n) - 2 g((k+1)/n) + g((k+2)/n)) * n^2 / 2 for
/// k = 0..K. Each grid node is evaluated once.
std::vector<double> second_divided_differences(const FunctionalFamily& A,
                                               const RealFunction& f, int n,
                                               int K);

} // namespace opconvex

#endif
