#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expansive/report.hpp"
#include "expansive/spec_io.hpp"

namespace expansive {

struct RunOptions {
    std::optional<double> eta;
    std::optional<double> x0;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<std::uint64_t> seed;
    std::string theorem;          ///< overrides the spec when non-empty
    bool strict = false;          ///< any Fail check turns the exit code to 1
    std::string out_dir;          ///< when set, traces are written as CSV here
};

/// `check`: runs every hypothesis check the spec makes testable and reports
/// pass/fail per check. exit 0 unless --strict and something failed.
RunReport cmd_check(const ProblemSpec& spec, const RunOptions& opts);

/// `solve`: picks the iteration for the requested theorem, verifies the
/// hypotheses first, then iterates and cross-checks the limit against the
/// enumerated fixed points.
RunReport cmd_solve(const ProblemSpec& spec, const RunOptions& opts);

/// `falsify`: escalating counterexample search for the named condition.
/// exit 0 when a violation is found (the tool did its job), 1 on
/// pass-at-budget.
RunReport cmd_falsify(const ProblemSpec& spec, const std::string& condition,
                      std::uint64_t budget, const RunOptions& opts);

/// `gallery`: named built-in demonstrations.
std::vector<std::string> gallery_names();
RunReport run_gallery(const std::string& name, const RunOptions& opts);

}  // namespace expansive
