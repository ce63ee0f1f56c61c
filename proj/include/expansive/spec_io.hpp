#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "expansive/checkers.hpp"
#include "expansive/growth.hpp"
#include "expansive/mapping.hpp"
#include "expansive/order.hpp"
#include "expansive/solver.hpp"
#include "expansive/space.hpp"

namespace expansive {

/// A problem instance as read from a JSON spec file. `raw` keeps the parsed
/// document verbatim so reports can echo their input.
struct ProblemSpec {
    nlohmann::json raw;
    std::string name;
    Space space;
    std::optional<PartialOrder> order;
    std::optional<Mapping> u;
    std::optional<Mapping> v;
    GrowthFunction growth;
    double eta = 2.0;
    std::string theorem;  ///< "", "ordered", "min", or "common"
    std::optional<double> x0;
    SolverConfig solver;
    std::uint64_t seed = 0;
    std::uint64_t samples = 10000;
};

/// Parses a spec document. Unknown fields, missing required fields and
/// malformed shapes throw Error{SpecParse} naming the offending field.
ProblemSpec parse_problem_spec(const nlohmann::json& doc);

ProblemSpec parse_problem_spec_file(const std::string& path);

/// The checking problem the spec describes (requires `u`).
ExpansiveProblem to_problem(const ProblemSpec& spec);

/// The starting point: spec.x0 interpreted in the space, or the canonical
/// default (first enumerated point; interval midpoint).
Point start_point(const ProblemSpec& spec);

}  // namespace expansive
