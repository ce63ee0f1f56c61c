#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "expansive/check_report.hpp"
#include "expansive/solver.hpp"
#include "expansive/space.hpp"

namespace expansive {

/// Everything one CLI run produced. Serializes to JSON; the text rendering
/// prints one line per check plus trace and fixed-point summaries.
struct RunReport {
    std::string timestamp;  ///< ISO 8601 UTC
    std::string version;
    std::string command;
    nlohmann::json spec_echo;
    std::vector<nlohmann::json> checks;
    std::vector<nlohmann::json> traces;
    std::vector<nlohmann::json> fixed_points;
    std::vector<std::string> notes;
    bool ok = true;
    int exit_code = 0;

    void add_check(const CheckReport& r, const Space& space);
    void add_trace(const IterationTrace& t, std::string role);
    void add_fixed_point(const Space& space, const Point& p);
    void add_note(std::string note);

    nlohmann::json to_json() const;
    std::string to_text() const;
};

RunReport make_run_report(std::string command);

nlohmann::json point_to_json(const Space& space, const Point& p);
nlohmann::json check_report_to_json(const CheckReport& r, const Space& space);
nlohmann::json trace_to_json(const IterationTrace& t, const std::string& role);

}  // namespace expansive
