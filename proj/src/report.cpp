#include "opconvex/report.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <fmt/core.h>
#include <json.hpp>

namespace opconvex {

std::string Verdict::text() const {
    switch (kind) {
    case VerdictKind::pass: return "PASS";
    case VerdictKind::fail: return "FAIL";
    case VerdictKind::rejected: return "REJECTED(" + reason + ")";
    }
    return "?";
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "jsonl") return ReportFormat::jsonl;
    throw std::invalid_argument("unknown format '" + std::string(text) +
                                "' (expected csv|jsonl)");
}

std::string format_real(double v) {
    return fmt::format("{}", v);
}

std::string xs_to_string(std::span<const double> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += ';';
        out += format_real(xs[i]);
    }
    return out;
}

const char* const kCsvHeader =
    "family,functional,n,m,xs,f,quantity,value,tail_bound,tolerance,verdict,method";

std::string to_csv_line(const CheckReport& r) {
    std::string line;
    line += r.family;
    line += ',';
    line += r.functional;
    line += ',';
    line += std::to_string(r.n);
    line += ',';
    if (r.m > 0) line += std::to_string(r.m);
    line += ',';
    line += xs_to_string(r.xs);
    line += ',';
    line += r.f;
    line += ',';
    line += r.quantity;
    line += ',';
    line += format_real(r.value);
    line += ',';
    line += format_real(r.tail_bound);
    line += ',';
    line += format_real(r.tolerance);
    line += ',';
    line += r.verdict.text();
    line += ',';
    line += r.method;
    return line;
}

std::string to_json_line(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["functional"] = r.functional;
    j["n"] = r.n;
    if (r.m > 0)
        j["m"] = r.m;
    else
        j["m"] = nullptr;
    j["xs"] = r.xs;
    j["f"] = r.f;
    j["quantity"] = r.quantity;
    j["value"] = r.value;
    j["tail_bound"] = r.tail_bound;
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.verdict.text();
    j["method"] = r.method;
    return j.dump();
}

bool report_less(const CheckReport& a, const CheckReport& b) {
    const auto key = [](const CheckReport& r) {
        return std::tie(r.family, r.functional, r.n, r.m, r.xs, r.f, r.quantity);
    };
    return key(a) < key(b);
}

void sort_reports(std::vector<CheckReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), report_less);
}

void emit_reports(std::span<const CheckReport> reports, ReportFormat format,
                  std::ostream& out) {
    if (format == ReportFormat::csv) {
        out << kCsvHeader << '\n';
        for (const auto& r : reports) out << to_csv_line(r) << '\n';
    } else {
        for (const auto& r : reports) out << to_json_line(r) << '\n';
    }
    if (!out) throw std::runtime_error("report stream write failed");
}

bool any_fail(std::span<const CheckReport> reports) {
    return std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) {
        return r.verdict.kind == VerdictKind::fail;
    });
}

} // namespace opconvex
