#ifndef OPCONVEX_FAMILIES_HPP
#define OPCONVEX_FAMILIES_HPP

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opconvex/series.hpp"

namespace opconvex {

enum class FamilyKind {
    bernstein,
    szasz,
    baskakov,
    szasz_schurer,
    mastroianni_custom,
};

/// Derivative oracle for a Mastroianni weight sequence: eval(n, k, x)
/// returns the k-th derivative of phi_n at x. Oracles must be safe for
/// concurrent calls.
struct PhiOracle {
    std::string name;
    std::function<double(int n, int k, double x)> eval_derivative;
};

/// Closed-form coefficient rules a_{n,k}(x) and generating series
/// g_n(x,z) = sum_k a_{n,k}(x) z^k for each built-in operator family,
/// plus the generic constructor from a phi derivative oracle. Family
/// descriptors are immutable values.
class OperatorFamily {
public:
    static OperatorFamily bernstein();
    static OperatorFamily szasz();
    static OperatorFamily baskakov();
    static OperatorFamily szasz_schurer(int p);
    static OperatorFamily mastroianni(PhiOracle oracle);

    FamilyKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    /// Upper end of the x-domain (1 for Bernstein, +inf otherwise).
    double domain_max() const { return domain_max_; }
    /// True only for Bernstein: a_{n,k} = 0 for k > n.
    bool finite_support() const { return finite_support_; }
    /// Whether g_n = g_1^n with an n-independent base. Holds for
    /// Bernstein, Szasz and Baskakov; fails for Schurer with p > 0.
    bool power_form() const { return power_form_; }
    int schurer_p() const { return schurer_p_; }

    /// a_{n,0}(x)..a_{n,order}(x), by multiplicative recurrence (no
    /// factorials or binomials are formed explicitly).
    std::vector<double> coefficients(int n, double x, int order) const;

    TruncatedSeries generating_series(int n, double x, int order) const;

    /// 1 - sum of the retained coefficients; the truncation-error
    /// currency of every infinite-family computation. Exactly 0 for
    /// Bernstein once order >= n.
    double tail_mass(int n, double x, int order) const;

    /// sum_{k<=order} k * a_{n,k}(x).
    double first_moment(int n, double x, int order) const;

    /// Smallest order with tail_mass below the target, capped at
    /// kMaxAutoOrder. The achieved tail is what callers should record.
    int pick_order(int n, double x, double tail_target = 1e-10) const;

    /// g_n(x, e^{i theta}) from the closed form, for the unit-circle
    /// coefficient cross-check. Not available for custom oracles.
    std::complex<double> boundary_value(int n, double x, double theta) const;

    static constexpr int kMaxAutoOrder = 256;

private:
    OperatorFamily() = default;

    void check_args(int n, double x, int order) const;

    FamilyKind kind_ = FamilyKind::bernstein;
    std::string name_;
    double domain_max_ = 1.0;
    bool finite_support_ = false;
    bool power_form_ = false;
    int schurer_p_ = 0;
    PhiOracle phi_;
};

/// Parse a CLI family name: "bernstein", "szasz", "baskakov",
/// "schurer:p=2". Throws std::invalid_argument on anything else.
OperatorFamily parse_family(std::string_view text);

/// Built-in phi oracles matching the closed-form families, used by the
/// Mastroianni consistency checks.
PhiOracle bernstein_phi();
PhiOracle szasz_phi();
PhiOracle baskakov_phi();

struct PhiViolation {
    int k;
    double x;
    double value; // (-1)^k phi_n^(k)(x), negative beyond tolerance
};

struct PhiValidation {
    bool passed = false;
    double phi_at_zero_defect = 0.0; // |phi_n(0) - 1|
    std::vector<PhiViolation> violations;
};

/// Checks phi_n(0) = 1 (within 1e-12) and the alternating-sign
/// condition (-1)^k phi_n^(k)(x) >= -1e-12 for k <= max_k at each
/// sample point. Failures land in the report, never throw.
PhiValidation validate_phi(const PhiOracle& oracle, int n, int max_k,
                           std::span<const double> sample_xs);

} // namespace opconvex

#endif
