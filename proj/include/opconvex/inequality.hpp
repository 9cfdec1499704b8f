#ifndef OPCONVEX_INEQUALITY_HPP
#define OPCONVEX_INEQUALITY_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "opconvex/families.hpp"
#include "opconvex/series.hpp"

namespace opconvex {

/// Violated guard or hypothesis. Harness layers convert this into a
/// REJECTED verdict rather than a failure.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SignVerdict {
    all_non_negative,
    all_non_positive,
    all_zero,
    mixed,
};

const char* to_string(SignVerdict v);

struct SignClassification {
    SignVerdict verdict = SignVerdict::all_zero;
    std::optional<int> witness_positive; // first index above +tol
    std::optional<int> witness_negative; // first index below -tol
    double tolerance = 0.0;
};

/// Entries within [-tol, tol] are sign-neutral; the verdict covers
/// the rest. Mixed holds exactly when both witnesses exist.
SignClassification classify_signs(std::span<const double> seq, double tol);

/// Default sign tolerance: exact-support families classify at 1e-12,
/// truncated infinite families at 1e-9.
double default_sign_tolerance(const OperatorFamily& fam);

struct BetaResult {
    TruncatedSeries series;    // beta_k for k = 0..N
    double residual = 0.0;     // divisibility defect of the (z-1) division
};

/// (g_n(x,.) - g_n(y,.)) / (z - 1) with coefficients 0..N. The
/// difference is built at order N+1 so every retained quotient
/// coefficient is a full partial sum.
BetaResult beta_series(const OperatorFamily& fam, int n, double x, double y, int N);

/// beta_k = h_{n,k}(x) - h_{n,k}(y) with h_{n,k}(t) = -sum_{p<=k} a_{n,p}(t),
/// for k = 0..N. Must agree with beta_series.
std::vector<double> beta_closed_form(const OperatorFamily& fam, int n, double x,
                                     double y, int N);

/// Coefficients of [ (g_n(x,.) - g_n(y,.)) / (z-1) ]^2; nonnegative
/// entries are the sufficient condition for the pairwise functional.
std::vector<double> squared_quotient_coefficients(const OperatorFamily& fam, int n,
                                                  double x, double y, int N);

/// E_m(z) = g_{mn}(mean, z) - prod_nu g_n(x_nu, z), truncated at N.
/// Every factor is built directly at order N, so each retained
/// coefficient is exact for the truncated inputs. Requires a
/// power-form family (throws PreconditionError otherwise) and m >= 2.
TruncatedSeries em_series(const OperatorFamily& fam, int n, int m,
                          std::span<const double> xs, int N);

struct EmQuotient {
    TruncatedSeries series;
    SignClassification classification;
    double residual = 0.0;
};

/// E_m / (z-1)^power with the sign classification of the quotient
/// coefficients. The power-2 classification decides the sign of the
/// mean-vs-product functional; power 1 is exposed for inspection only.
EmQuotient em_quotient(const OperatorFamily& fam, int n, int m,
                       std::span<const double> xs, int N, int power);

/// (sum a_nu)^m - m^m * prod a_nu, evaluated in extended precision so
/// the m=2 case keeps (a1-a2)^2 to full double accuracy. Negative
/// inputs are rejected.
double gusic_gap(int m, std::span<const double> a);

/// Right-hand side sum_{i<j} (a_i - a_j)^2 P_ij(a) of the gap
/// identity, with P materialized for m = 2 (P = 1) and m = 3
/// (P_ij = (a_i + a_j)/2 + (7/2) a_k, k the remaining index).
double gusic_decomposition(std::span<const double> a);

} // namespace opconvex

#endif
