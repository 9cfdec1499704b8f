#ifndef OPCONVEX_VALUES_HPP
#define OPCONVEX_VALUES_HPP

#include <span>

#include "opconvex/families.hpp"
#include "opconvex/functionals.hpp"
#include "opconvex/inequality.hpp"

namespace opconvex {

enum class Method {
    direct,
    series_convolution,
    divided_difference_representation,
    brute_force,
};

const char* to_string(Method m);

struct FunctionalValue {
    double value = 0.0;
    int truncation_order = 0;
    /// Bound on the neglected mass times the observed magnitude of
    /// A_t(f) over the probed index range; 0 when nothing is cut off.
    double tail_bound = 0.0;
    Method method = Method::direct;
};

/// L_{n,A}(f)(x) = sum_{k<=N} a_{n,k}(x) A_{k/n}(f).
FunctionalValue operator_value(const OperatorFamily& fam, const FunctionalFamily& A,
                               int n, const RealFunction& f, double x, int N);

/// The pairwise functional
///   sum_k [c_k(g_x^2) + c_k(g_y^2) - 2 c_k(g_x g_y)] A_{k/(2n)}(f)
/// with products extended to order 2N, matching the double sum over
/// i, j <= N term by term.
FunctionalValue rasa_functional(const OperatorFamily& fam, const FunctionalFamily& A,
                                int n, const RealFunction& f, double x, double y,
                                int N);

/// Independent double-loop oracle for rasa_functional.
FunctionalValue rasa_functional_brute(const OperatorFamily& fam,
                                      const FunctionalFamily& A, int n,
                                      const RealFunction& f, double x, double y,
                                      int N);

/// C_m(f) = sum_k [sum_nu c_k(g(x_nu)^m) - m c_k(prod_nu g(x_nu))] A_{k/(mn)}(f),
/// products extended to order mN over factors truncated at N.
FunctionalValue cm_value(const OperatorFamily& fam, const FunctionalFamily& A,
                         int n, int m, const RealFunction& f,
                         std::span<const double> xs, int N);

/// Literal m-fold loop oracle; materialized for m in {2, 3} only.
FunctionalValue cm_value_brute(const OperatorFamily& fam, const FunctionalFamily& A,
                               int n, int m, const RealFunction& f,
                               std::span<const double> xs, int N);

struct MomentGuard {
    double bm_e0 = 0.0;
    double bm_e1 = 0.0;
    bool ok = false;
    static constexpr double kThreshold = 1e-8;
};

/// Checks that the mean-vs-product functional annihilates e_0 and
/// e_1 (the framework hypothesis; Schurer with p > 0 fails on e_1).
MomentGuard bm_moment_guard(const OperatorFamily& fam, const FunctionalFamily& A,
                            int n, int m, std::span<const double> xs, int N);

/// B_m(f) = L_{mn,A}(f)(mean) - sum_k c_k(prod_nu g_n(x_nu)) A_{k/(mn)}(f).
/// Throws PreconditionError naming the failing moment when the guard
/// trips; the guard always runs first.
FunctionalValue bm_value(const OperatorFamily& fam, const FunctionalFamily& A,
                         int n, int m, const RealFunction& f,
                         std::span<const double> xs, int N);

/// Same value through the second-divided-difference representation:
/// (2/(mn)^2) sum_j q_j * [j/(mn), (j+1)/(mn), (j+2)/(mn); A_t(f)]
/// with q the (z-1)^2 quotient coefficients of the error series.
FunctionalValue bm_value_via_representation(const OperatorFamily& fam,
                                            const FunctionalFamily& A, int n, int m,
                                            const RealFunction& f,
                                            std::span<const double> xs, int N);

/// (1/m) sum_nu L_{mn,A}(f)(x_nu) - L_{mn,A}(f)(mean).
FunctionalValue jensen_gap_value(const OperatorFamily& fam,
                                 const FunctionalFamily& A, int n, int m,
                                 const RealFunction& f, std::span<const double> xs,
                                 int N);

struct DecompositionCheck {
    double cm = 0.0;
    double jensen = 0.0;
    double bm = 0.0;
    double defect = 0.0;        // |cm - m*jensen - m*bm|
    double combined_bound = 0.0; // tolerance plus propagated tail bounds
    bool ok = false;
};

/// Verifies C_m(f) = m * jensen_gap + m * B_m(f).
DecompositionCheck decomposition_check(const OperatorFamily& fam,
                                       const FunctionalFamily& A, int n, int m,
                                       const RealFunction& f,
                                       std::span<const double> xs, int N,
                                       double tolerance);

} // namespace opconvex

#endif
