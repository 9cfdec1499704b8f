#ifndef OPCONVEX_REPORT_HPP
#define OPCONVEX_REPORT_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace opconvex {

enum class VerdictKind { pass, fail, rejected };

struct Verdict {
    VerdictKind kind = VerdictKind::pass;
    std::string reason; // rejected only; must not contain commas

    static Verdict pass() { return {VerdictKind::pass, {}}; }
    static Verdict fail() { return {VerdictKind::fail, {}}; }
    static Verdict rejected(std::string why) {
        return {VerdictKind::rejected, std::move(why)};
    }

    /// "PASS" | "FAIL" | "REJECTED(reason)"
    std::string text() const;
};

/// One verification run. Serializes to the fixed CSV column set
///   family,functional,n,m,xs,f,quantity,value,tail_bound,tolerance,verdict,method
/// or to a JSON line with the same keys (xs as an array).
struct CheckReport {
    std::string family;
    std::string functional;
    int n = 0;
    int m = 0; // 0 renders as an empty column (not applicable)
    std::vector<double> xs;
    std::string f;
    std::string quantity;
    double value = 0.0;
    double tail_bound = 0.0;
    double tolerance = 0.0;
    Verdict verdict;
    std::string method;
};

enum class ReportFormat { csv, jsonl };

ReportFormat parse_report_format(std::string_view text);

/// Shortest round-trip decimal rendering, identical across platforms.
std::string format_real(double v);

/// Semicolon-joined point list (CSV cells cannot hold commas).
std::string xs_to_string(std::span<const double> xs);

extern const char* const kCsvHeader;

std::string to_csv_line(const CheckReport& r);
std::string to_json_line(const CheckReport& r);

/// Orders rows by the input tuple
/// (family, functional, n, m, xs, f, quantity).
bool report_less(const CheckReport& a, const CheckReport& b);

void sort_reports(std::vector<CheckReport>& reports);

/// Writes sorted-as-given rows; CSV gets the header line first.
void emit_reports(std::span<const CheckReport> reports, ReportFormat format,
                  std::ostream& out);

bool any_fail(std::span<const CheckReport> reports);

} // namespace opconvex

#endif
