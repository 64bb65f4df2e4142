#ifndef CBETA_REPORT_HPP
#define CBETA_REPORT_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace cbeta {

//! Outcome of one verification check: point estimate, its standard error,
//! the closed-form prediction, and the pass/fail verdict
//! (pass iff abs_gap <= the tolerance the check configured).
struct RunReport {
    std::string command;
    std::map<std::string, std::string> params;
    double estimate = 0.0;
    double std_error = 0.0;
    double predicted = 0.0;
    double abs_gap = 0.0;
    bool pass = false;
    std::int64_t wall_time_ms = 0;
};

//! One JSON object per report, one per line (JSON-lines).
std::string report_to_json(const RunReport& report);
void write_json_lines(std::ostream& out, const std::vector<RunReport>& reports);

//! Angle strings: a plain real, or multiples of pi such as "pi", "pi/8",
//! "2pi/3", "0.75pi".  Throws std::invalid_argument on anything else.
double parse_angle(const std::string& text);

//! Full-precision formatting used by the CSV and JSON writers (%.17g).
std::string format_real(double value);

//! Two-column CSV with a header row.
void write_csv(std::ostream& out, const std::string& col_a, const std::string& col_b,
               const std::vector<std::pair<std::string, std::string>>& rows);

} // namespace cbeta

#endif // CBETA_REPORT_HPP
