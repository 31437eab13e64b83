#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace nonlocal {

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict v);

// Which way the inequality points.
enum class Orientation {
    lower,  // lhs >= constant * rhs
    upper,  // lhs <= constant * rhs
};

struct InequalityReport {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> stated_constant;
    double ratio = 0.0;
    Verdict verdict = Verdict::inconclusive;
    double err_est = 0.0;

    double param(const std::string& key) const;
};

// holds iff lhs >= c*rhs - 10*err (lower) or lhs <= c*rhs + 10*err (upper).
Verdict judge(double lhs, double rhs, double constant, double err, Orientation orientation);

// lhs/rhs, with 0/0 -> 0 and x/0 -> +-inf.
double safe_ratio(double lhs, double rhs);

// {"name", "params", "lhs", "rhs", "stated_constant", "ratio", "verdict", "err_est"}
// in that order; numbers with 17 significant digits.
std::string to_json_line(const InequalityReport& r);

// %.17g, with non-finite values written as JSON null.
std::string json_number(double v);

void write_jsonl(std::ostream& out, const std::vector<InequalityReport>& reports);

}  // namespace nonlocal
