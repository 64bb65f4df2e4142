#include "cbeta/report.hpp"

#include <cctype>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace cbeta {

namespace {

[[noreturn]] void bad_angle(const std::string& text) {
    throw std::invalid_argument("parse_angle: cannot parse '" + text + "'");
}

//! stod that must consume the whole string.
double parse_full(const std::string& text, const std::string& original) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            bad_angle(original);
        }
        return v;
    } catch (const std::invalid_argument&) {
        bad_angle(original);
    } catch (const std::out_of_range&) {
        bad_angle(original);
    }
}

} // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["command"] = report.command;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : report.params) {
        params[key] = value;
    }
    j["params"] = params;
    // Serialize reals as strings at full precision so output is reproducible
    // byte for byte across runs.
    j["estimate"] = format_real(report.estimate);
    j["std_error"] = format_real(report.std_error);
    j["predicted"] = format_real(report.predicted);
    j["abs_gap"] = format_real(report.abs_gap);
    j["pass"] = report.pass;
    j["wall_time_ms"] = report.wall_time_ms;
    return j.dump();
}

void write_json_lines(std::ostream& out, const std::vector<RunReport>& reports) {
    for (const RunReport& r : reports) {
        out << report_to_json(r) << '\n';
    }
}

double parse_angle(const std::string& text) {
    std::string s;
    for (const char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (s.empty()) {
        bad_angle(text);
    }
    const std::size_t pos = s.find("pi");
    if (pos == std::string::npos) {
        return parse_full(s, text);
    }

    double mult = 1.0;
    if (pos > 0) {
        std::string prefix = s.substr(0, pos);
        if (prefix.back() == '*') {
            prefix.pop_back();
        }
        if (prefix.empty()) {
            bad_angle(text);
        }
        mult = parse_full(prefix, text);
    }
    double div = 1.0;
    if (pos + 2 < s.size()) {
        const std::string suffix = s.substr(pos + 2);
        if (suffix.size() < 2 || suffix.front() != '/') {
            bad_angle(text);
        }
        div = parse_full(suffix.substr(1), text);
        if (div == 0.0) {
            bad_angle(text);
        }
    }
    return mult * std::numbers::pi / div;
}

void write_csv(std::ostream& out, const std::string& col_a, const std::string& col_b,
               const std::vector<std::pair<std::string, std::string>>& rows) {
    out << col_a << ',' << col_b << '\n';
    for (const auto& [a, b] : rows) {
        out << a << ',' << b << '\n';
    }
}

} // namespace cbeta
