#ifndef OPCONVEX_SERIES_HPP
#define OPCONVEX_SERIES_HPP

#include <complex>
#include <functional>
#include <vector>

namespace opconvex {

/// A real power series in z truncated at a fixed order N: coefficients
/// c_0..c_N, index = power of z. Immutable after construction; all
/// operations below are pure functions and safe to call concurrently.
class TruncatedSeries {
public:
    /// The zero series of order 0.
    TruncatedSeries() : coeffs_{0.0} {}

    /// Takes ownership of the coefficient vector (order = size - 1).
    /// Throws std::invalid_argument if empty or any entry is non-finite.
    explicit TruncatedSeries(std::vector<double> coeffs);

    static TruncatedSeries zero(int order);
    static TruncatedSeries one(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficient of z^k; zero beyond the truncation order.
    double coeff(int k) const {
        return (k >= 0 && k <= order()) ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
    }

    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Same series viewed at a different order (zero-padded or truncated).
    TruncatedSeries resized(int new_order) const;

private:
    std::vector<double> coeffs_;
};

/// alpha*S + beta*T, the shorter operand zero-padded to the longer order.
TruncatedSeries linear_combine(double alpha, const TruncatedSeries& s,
                               double beta, const TruncatedSeries& t);

/// Cauchy product truncated at max(order(S), order(T)); the shorter
/// operand is zero-padded first.
TruncatedSeries multiply(const TruncatedSeries& s, const TruncatedSeries& t);

/// S^m at the order of S, by binary exponentiation. m = 0 gives the
/// series 1; m < 0 is rejected.
TruncatedSeries int_pow(const TruncatedSeries& s, int m);

/// Horner evaluation of the truncated polynomial at a real point.
double eval_real(const TruncatedSeries& s, double z);

struct DivisionResult {
    TruncatedSeries quotient;
    /// Divisibility defect |sum of coefficients| of the dividend (per
    /// stage; the larger stage defect when power = 2). A clean division
    /// requires the dividend to vanish at z = 1; truncated tails of
    /// convergent series legitimately leave small residuals, so this is
    /// reported rather than enforced. Callers own the tolerance.
    double residual;
};

/// Divide S by (z-1)^power for power in {1, 2}. Stage recursion:
/// q_0 = -s_0, q_k = q_{k-1} - s_k, dropping the top coefficient.
/// Requires order(S) >= power.
DivisionResult divide_by_z_minus_1(const TruncatedSeries& s, int power);

/// k! * c_k, i.e. the k-th derivative at z = 0. Throws std::out_of_range
/// for k outside [0, order].
double coeff_as_derivative(const TruncatedSeries& s, int k);

/// Coefficients c_0..c_N recovered from boundary values on the unit
/// circle: c_k ~ (1/samples) * sum_j F(theta_j) e^{-ik theta_j} on a
/// uniform grid. Requires samples >= 4*(N+1). For real-coefficient
/// inputs the imaginary parts are a discretization defect; the largest
/// one observed is written to *imag_defect when given.
std::vector<double> contour_coefficients(
    const std::function<std::complex<double>(double)>& boundary_values,
    int order, int samples, double* imag_defect = nullptr);

} // namespace opconvex

#endif
