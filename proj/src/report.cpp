#include "nonlocal/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include "json.hpp"

#include "nonlocal/errors.hpp"

namespace nonlocal {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double InequalityReport::param(const std::string& key) const {
    for (const auto& [k, v] : params) {
        if (k == key) return v;
    }
    throw LabError(ErrorKind::InvalidArgument, "report has no parameter " + key);
}

Verdict judge(double lhs, double rhs, double constant, double err, Orientation orientation) {
    if (!std::isfinite(lhs) || !std::isfinite(rhs) || !std::isfinite(err)) return Verdict::inconclusive;
    const double tol = 10.0 * err;
    const bool ok = orientation == Orientation::lower ? lhs >= constant * rhs - tol : lhs <= constant * rhs + tol;
    return ok ? Verdict::holds : Verdict::fails;
}

double safe_ratio(double lhs, double rhs) {
    if (rhs == 0.0) {
        if (lhs == 0.0) return 0.0;
        return lhs > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return lhs / rhs;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_json_line(const InequalityReport& r) {
    std::string s = "{\"name\":";
    s += nlohmann::json(r.name).dump();
    s += ",\"params\":{";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) s += ',';
        s += nlohmann::json(r.params[i].first).dump();
        s += ':';
        s += json_number(r.params[i].second);
    }
    s += "},\"lhs\":" + json_number(r.lhs);
    s += ",\"rhs\":" + json_number(r.rhs);
    s += ",\"stated_constant\":" + (r.stated_constant ? json_number(*r.stated_constant) : std::string("null"));
    s += ",\"ratio\":" + json_number(r.ratio);
    s += ",\"verdict\":\"" + std::string(to_string(r.verdict)) + "\"";
    s += ",\"err_est\":" + json_number(r.err_est);
    s += '}';
    return s;
}

void write_jsonl(std::ostream& out, const std::vector<InequalityReport>& reports) {
    for (const auto& r : reports) out << to_json_line(r) << '\n';
}

}  // namespace nonlocal
