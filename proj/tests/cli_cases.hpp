#pragma once

// Command lines shared by the CLI tests and the acceptance suite.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace cli_cases {

inline std::filesystem::path data_dir() { return ACMDM_TEST_DATA_DIR; }
inline std::filesystem::path golden_dir() { return ACMDM_TEST_GOLDEN_DIR; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

inline Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = acmdm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

inline std::string data(const char* name) { return (data_dir() / name).string(); }

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GoldenCase {
    const char* file;
    std::vector<std::string> args;
    int expected_code;
    bool golden_is_stderr;
};

inline std::vector<GoldenCase> golden_cases() {
    return {
        {"mdm.csv", {"mdm", "--q2", "-1,-0.25", "--mcs2", "1"}, 0, false},
        {"mdm.json", {"mdm", "--q2", "-1", "--mcs2", "0.5", "--out", "json", "--mc-samples", "100000", "--seed", "7"}, 0, false},
        {"yukawa.csv", {"yukawa", "--q2", "-1,-2", "--m1", "1.2", "--m2", "0.7", "--e1", "0.8", "--e2", "-0.3"}, 0, false},
        {"phase.json", {"phase", "--charges", data("line_charge.json"), "--path", data("unit_circle.json"), "--g", "2"}, 0, false},
        {"phase_scalar.csv", {"phase", "--charges", data("two_charges.json"), "--path", data("unit_circle.json"), "--g", "2",
                              "--species", "scalar", "--out", "csv"}, 0, false},
        {"fringe.json", {"fringe", "--charges", data("line_charge.json"), "--path", data("arm_upper.json"), "--path-b",
                         data("arm_lower.json"), "--g", "2"}, 0, false},
        {"ir_scan.csv", {"ir-scan", "--mcs2", "1"}, 0, false},
        {"ir_scan.json", {"ir-scan", "--mcs2", "1", "--q2", "-1e-2,-1e-4", "--out", "json"}, 0, false},
        // The exact reduction limit sits on the divergent corner, so the check
        // reports the infrared divergence.
        {"check_reduction.stderr", {"check-reduction"}, 4, true},
        // Off the limit the integrands differ pointwise and the check fails.
        {"check_reduction_m1.csv", {"check-reduction", "--m1", "1.01", "--q2", "-1"}, 1, false},
    };
}

struct ExitCase {
    std::vector<std::string> args;
    int code;
    const char* needle;  // expected in stderr
};

inline std::vector<ExitCase> exit_code_cases() {
    return {
        {{"--help"}, 0, ""},
        {{"mdm", "--help"}, 0, ""},
        // usage
        {{}, 2, "subcommand"},
        {{"mdm"}, 2, "empty sweep"},
        {{"mdm", "--q2", "-1", "--frobnicate"}, 2, "usage error"},
        {{"mdm", "--q2", "-1", "--out", "xml"}, 2, "usage error"},
        {{"mdm", "--q2-range", "-1", "-2", "0"}, 2, "COUNT"},
        {{"mdm", "--q2", "-1", "--mcs2", "-1"}, 2, "mcs_hat2"},
        {{"yukawa", "--q2", "-1", "--m1", "0"}, 2, "m1_hat"},
        {{"yukawa", "--q2", "-1", "--m1", "-0.5"}, 2, "m1_hat"},
        {{"ir-scan", "--q2", "-1e-2,1e-3", "--mcs2", "1"}, 2, "negative"},
        {{"ir-scan", "--q2", "-1e-4,-1e-2", "--mcs2", "1"}, 2, "increasing"},
        {{"check-reduction", "--tol", "0"}, 2, "usage error"},
        {{"phase", "--charges", data("line_charge.json"), "--path", data("unit_circle.json"), "--g", "2", "--species", "boson"},
         2, "usage error"},
        {{"phase", "--charges", data("line_charge.json"), "--path", data("arm_upper.json"), "--g", "2"}, 2, "closed"},
        // domain / threshold
        {{"mdm", "--q2", "4.1", "--mcs2", "0"}, 3, "DomainError"},
        {{"yukawa", "--q2", "0", "--m1", "0.3", "--m2", "0.3"}, 3, "DomainError"},
        {{"phase", "--charges", data("line_charge.json"), "--path", data("through_charge.json"), "--g", "2"}, 3, "SingularPath"},
        {{"fringe", "--charges", data("line_charge.json"), "--path", data("arm_upper.json"), "--path-b",
          data("arm_elsewhere.json"), "--g", "2"}, 3, "EndpointMismatch"},
        // infrared
        {{"mdm", "--q2", "0", "--mcs2", "0"}, 4, "infrared divergent"},
        {{"ir-scan", "--mcs2", "0"}, 4, "infrared divergent"},
        {{"check-reduction", "--m1", "1.01"}, 1, "deviation above threshold"},
        // non-convergence
        {{"mdm", "--q2", "-1", "--mcs2", "1", "--tol", "1e-15", "--max-evals", "100000"}, 5, "NonConvergence"},
        {{"yukawa", "--q2", "-1", "--m1", "1.2", "--m2", "0.7", "--max-evals", "100"}, 5, "NonConvergence"},
        // parse
        {{"phase", "--charges", data("malformed.json"), "--path", data("unit_circle.json"), "--g", "2"}, 6, "malformed JSON"},
        {{"phase", "--charges", data("missing.json"), "--path", data("unit_circle.json"), "--g", "2"}, 6, "cannot open"},
        {{"fringe", "--charges", data("line_charge.json"), "--path", data("unit_circle.json"), "--path-b",
          data("malformed.json"), "--g", "2"}, 6, "Parse"},
    };
}

}  // namespace cli_cases
