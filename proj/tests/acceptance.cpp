// Full-scale acceptance gate.  Each criterion prints exactly one line,
//     [PASS] NN <description>   or   [FAIL] NN <description>
// with the failing checks listed underneath.  Budgets, seeds (master seed
// 42) and tolerances are fixed inside the verification suites; this binary
// only selects which reported checks gate which criterion.
//
// Run with no arguments for all twelve criteria, or pass criterion numbers
// (e.g. "cbeta_acceptance 3 9") to run a subset.  Exit status 0 iff every
// selected criterion passed.  On one core the full run takes a few hours,
// dominated by the linear-statistics criterion.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

#include "cbeta/checks.hpp"
#include "cbeta/report.hpp"

namespace {

using namespace cbeta;

CheckConfig full_config() {
    CheckConfig cfg;
    cfg.seed = 42;
    cfg.reps_scale = 1.0;
    cfg.parallelism = 0;
    return cfg;
}

//! Criteria share suites (4 and 8 both gate the Gaussian-limit suite; 5 and
//! 6 both gate the variance suite), so each suite runs at most once per
//! process.
const std::vector<RunReport>& suite(const std::string& name) {
    static std::map<std::string, std::vector<RunReport>> cache;
    const auto it = cache.find(name);
    if (it != cache.end()) {
        return it->second;
    }
    const CheckConfig cfg = full_config();
    std::vector<RunReport> reports;
    if (name == "theta") {
        reports = check_theta(cfg);
    } else if (name == "moments") {
        reports = check_moments(cfg);
    } else if (name == "seq") {
        reports = check_seq(cfg);
    } else if (name == "variance") {
        reports = check_variance(cfg);
    } else if (name == "charfn") {
        reports = check_charfn(cfg);
    } else if (name == "clt") {
        reports = check_clt(cfg);
    } else if (name == "oracle") {
        reports = check_oracle(cfg);
    } else if (name == "linstat") {
        reports = check_linstat(cfg);
    } else if (name == "sine") {
        reports = check_sine(cfg);
    } else {
        throw std::logic_error("unknown suite: " + name);
    }
    return cache.emplace(name, std::move(reports)).first->second;
}

std::string describe(const RunReport& r) {
    std::ostringstream os;
    os << r.command << " {";
    bool first = true;
    for (const auto& [key, value] : r.params) {
        if (key == "reps" || key == "tolerance") {
            continue;
        }
        os << (first ? "" : ", ") << key << "=" << value;
        first = false;
    }
    os << "} estimate=" << format_real(r.estimate) << " predicted="
       << format_real(r.predicted) << " gap=" << format_real(r.abs_gap);
    const auto tol = r.params.find("tolerance");
    if (tol != r.params.end()) {
        os << " tolerance=" << tol->second;
    }
    return os.str();
}

//! Pass/fail over the suite reports whose "check" parameter is listed; an
//! empty `checks` list selects the whole suite.  Failing checks are appended
//! to `details`.
bool gate(const std::string& suite_name, const std::set<std::string>& checks,
          std::vector<std::string>& details) {
    const std::vector<RunReport>& reports = suite(suite_name);
    bool all_pass = true;
    int selected = 0;
    for (const RunReport& r : reports) {
        const auto check = r.params.find("check");
        if (!checks.empty()
            && (check == r.params.end() || checks.count(check->second) == 0)) {
            continue;
        }
        ++selected;
        if (!r.pass) {
            all_pass = false;
            details.push_back(describe(r));
        }
    }
    if (selected == 0) {
        details.push_back("no checks selected from suite '" + suite_name + "'");
        return false;
    }
    return all_pass;
}

int run_cli(const std::string& args, const std::string& out_path) {
    const std::string cmd =
        std::string("\"") + CBETA_CLI_PATH + "\" " + args + " --out " + out_path;
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) {
        return -1;
    }
    return WEXITSTATUS(rc);
}

//! Reads a JSON-lines report file and strips the timing field, which is the
//! only part allowed to differ between identically seeded runs.
std::vector<std::string> normalized_reports(const std::string& path,
                                            std::vector<std::string>& details) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    if (!in) {
        details.push_back("missing report file " + path);
        return lines;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            details.push_back("unparseable report line in " + path + ": " + line);
            continue;
        }
        j.erase("wall_time_ms");
        lines.push_back(j.dump());
    }
    return lines;
}

//! Criterion 12: the verification CLI, run twice with one seed, must emit
//! byte-identical reports up to timing.  The reduced replica budget only
//! shrinks run time; the seed-derivation path it exercises is the same one
//! the full-scale runs use.
bool cli_determinism(std::vector<std::string>& details) {
    const std::string args = "verify all --seed 42 --reps-scale 0.01";
    const std::string path_a = "acceptance_cli_run_a.jsonl";
    const std::string path_b = "acceptance_cli_run_b.jsonl";
    const int code_a = run_cli(args, path_a);
    const int code_b = run_cli(args, path_b);
    for (const int code : {code_a, code_b}) {
        // 0 = all smoke checks passed, 1 = some failed; both are orderly
        // outcomes.  Anything else is a usage error or crash.
        if (code != 0 && code != 1) {
            details.push_back("CLI exited with status " + std::to_string(code));
            return false;
        }
    }
    if (code_a != code_b) {
        details.push_back("exit codes differ between runs: "
                          + std::to_string(code_a) + " vs " + std::to_string(code_b));
        return false;
    }
    const std::vector<std::string> a = normalized_reports(path_a, details);
    const std::vector<std::string> b = normalized_reports(path_b, details);
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
    if (a.empty() || !details.empty()) {
        return false;
    }
    if (a.size() != b.size()) {
        details.push_back("report counts differ: " + std::to_string(a.size()) + " vs "
                          + std::to_string(b.size()));
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            details.push_back("report " + std::to_string(i) + " differs:");
            details.push_back("  run 1: " + a[i]);
            details.push_back("  run 2: " + b[i]);
            return false;
        }
    }
    return true;
}

struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::vector<std::string>&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "coefficient-law moments match their closed forms",
         [](auto& d) { return gate("theta", {}, d); }},
        {2, "increment-kernel moment identities and bounds",
         [](auto& d) { return gate("moments", {}, d); }},
        {3, "deterministic step-sequence gap stays under its bound",
         [](auto& d) { return gate("seq", {}, d); }},
        {4, "count mean identity and reflection symmetry",
         [](auto& d) { return gate("clt", {"mean", "symmetry_ks"}, d); }},
        {5, "count variance tracks the log-length prediction",
         [](auto& d) { return gate("variance", {"count_var", "count_gap_trend"}, d); }},
        {6, "phase variance tracks the log-length prediction",
         [](auto& d) { return gate("variance", {"phase_var"}, d); }},
        {7, "characteristic function matches the Gaussian prediction",
         [](auto& d) { return gate("charfn", {}, d); }},
        {8, "standardized counts approach the Gaussian law",
         [](auto& d) { return gate("clt", {"count_ks_monotone", "count_ks_final"}, d); }},
        {9, "samplers agree with the exact small-n oracles",
         [](auto& d) { return gate("oracle", {}, d); }},
        {10, "linear statistics obey the Gaussian limit",
         [](auto& d) { return gate("linstat", {}, d); }},
        {11, "scaling-limit counts match the limiting predictions",
         [](auto& d) { return gate("sine", {}, d); }},
        {12, "verification CLI is deterministic under a fixed seed",
         [](auto& d) { return cli_determinism(d); }},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 12) {
            std::cerr << "usage: " << argv[0] << " [criterion numbers in 1..12]\n";
            return 2;
        }
        wanted.insert(id);
    }

    bool ok = true;
    for (const Criterion& c : criteria()) {
        if (!wanted.empty() && wanted.count(c.id) == 0) {
            continue;
        }
        std::vector<std::string> details;
        bool pass = false;
        try {
            pass = c.run(details);
        } catch (const std::exception& e) {
            details.push_back(std::string("exception: ") + e.what());
        }
        std::printf("[%s] %02d %s\n", pass ? "PASS" : "FAIL", c.id, c.label);
        for (const std::string& line : details) {
            std::printf("       %s\n", line.c_str());
        }
        std::fflush(stdout);
        ok = ok && pass;
    }
    return ok ? 0 : 1;
}
