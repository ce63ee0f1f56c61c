#include "expansive/spec_io.hpp"

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "expansive/errors.hpp"

namespace expansive {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::SpecParse, msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad("unknown field '" + it.key() + "' in " + ctx);
}

const json& require(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) bad(ctx + " needs a '" + std::string(key) + "' field");
    return *it;
}

double as_number(const json& j, const std::string& ctx) {
    if (!j.is_number()) bad(ctx + " must be a number");
    return j.get<double>();
}

std::string as_string(const json& j, const std::string& ctx) {
    if (!j.is_string()) bad(ctx + " must be a string");
    return j.get<std::string>();
}

Space parse_space(const json& j) {
    if (!j.is_object()) bad("'space' must be an object");
    const std::string kind = as_string(require(j, "kind", "space"), "space.kind");
    if (kind == "shrinking_fractions") {
        check_keys(j, {"kind", "depth"}, "space");
        int depth = 64;
        if (j.contains("depth")) depth = static_cast<int>(as_number(j["depth"], "space.depth"));
        return Space::shrinking_fractions(depth);
    }
    if (kind == "real_interval") {
        check_keys(j, {"kind", "a", "b"}, "space");
        const double a = as_number(require(j, "a", "space"), "space.a");
        const double b = as_number(require(j, "b", "space"), "space.b");
        if (!(a < b)) bad("space needs a < b");
        return Space::real_interval(a, b);
    }
    if (kind == "finite") {
        check_keys(j, {"kind", "points", "distance"}, "space");
        const json& pts = require(j, "points", "space");
        if (!pts.is_array() || pts.empty()) bad("space.points must be a non-empty array");
        std::vector<std::string> labels;
        std::vector<double> coords;
        bool numeric = true;
        for (const auto& p : pts) {
            if (p.is_number()) {
                coords.push_back(p.get<double>());
                labels.push_back(p.dump());
            } else if (p.is_string()) {
                numeric = false;
                labels.push_back(p.get<std::string>());
            } else {
                bad("space.points entries must be numbers or strings");
            }
        }
        if (!numeric && !coords.empty())
            bad("space.points must be all numbers or all strings");
        if (!j.contains("distance")) {
            if (!numeric) bad("label-only points need an explicit 'distance' matrix");
            return Space::finite_line(std::move(coords));
        }
        const json& dm = j["distance"];
        if (!dm.is_array()) bad("space.distance must be a matrix");
        std::vector<std::vector<double>> dist;
        for (const auto& row : dm) {
            if (!row.is_array()) bad("space.distance must be a matrix");
            std::vector<double> r;
            for (const auto& v : row) r.push_back(as_number(v, "space.distance entry"));
            dist.push_back(std::move(r));
        }
        if (dist.size() != labels.size()) bad("space.distance size does not match points");
        for (const auto& row : dist)
            if (row.size() != labels.size()) bad("space.distance is not square");
        return Space::finite_tabulated(std::move(labels), std::move(dist),
                                       numeric ? std::move(coords) : std::vector<double>{});
    }
    bad("unknown space kind '" + kind + "'");
}

PartialOrder parse_order(const json& j) {
    if (!j.is_object()) bad("'order' must be an object");
    const std::string kind = as_string(require(j, "kind", "order"), "order.kind");
    bool regular = true;
    if (j.contains("regular")) {
        if (!j["regular"].is_boolean()) bad("order.regular must be a boolean");
        regular = j["regular"].get<bool>();
    }
    if (kind == "usual") {
        check_keys(j, {"kind", "regular"}, "order");
        return PartialOrder::usual(regular);
    }
    if (kind == "example1") {
        check_keys(j, {"kind", "regular"}, "order");
        return PartialOrder::example1(regular);
    }
    if (kind == "table") {
        check_keys(j, {"kind", "regular", "pairs"}, "order");
        const json& pairs = require(j, "pairs", "order");
        if (!pairs.is_array()) bad("order.pairs must be an array of [x,z] pairs");
        std::vector<std::pair<std::int64_t, std::int64_t>> rel;
        for (const auto& p : pairs) {
            if (!p.is_array() || p.size() != 2) bad("order.pairs entries must be [x,z]");
            rel.emplace_back(p[0].get<std::int64_t>(), p[1].get<std::int64_t>());
        }
        return PartialOrder::from_table(std::move(rel), regular);
    }
    bad("unknown order kind '" + kind + "'");
}

Mapping parse_mapping(const json& j, const Space& space, const std::string& ctx) {
    if (!j.is_object()) bad("'" + ctx + "' must be an object");
    const std::string kind = as_string(require(j, "kind", ctx), ctx + ".kind");
    if (kind == "example1_shift") {
        check_keys(j, {"kind"}, ctx);
        return Mapping::example1_shift(space);
    }
    if (kind == "linear") {
        check_keys(j, {"kind", "slope"}, ctx);
        return Mapping::linear(space, as_number(require(j, "slope", ctx), ctx + ".slope"));
    }
    if (kind == "identity") {
        check_keys(j, {"kind"}, ctx);
        return Mapping::identity(space);
    }
    if (kind == "table") {
        check_keys(j, {"kind", "pairs"}, ctx);
        if (space.kind() != SpaceKind::FiniteTabulated)
            bad(ctx + ": table mappings need a finite space");
        const json& pairs = require(j, "pairs", ctx);
        if (!pairs.is_array()) bad(ctx + ".pairs must be an array of [from,to] pairs");
        std::vector<std::int64_t> table(space.size(), -1);
        for (const auto& p : pairs) {
            if (!p.is_array() || p.size() != 2) bad(ctx + ".pairs entries must be [from,to]");
            const auto from = p[0].get<std::int64_t>();
            const auto to = p[1].get<std::int64_t>();
            if (from < 0 || from >= static_cast<std::int64_t>(space.size()))
                bad(ctx + ": source key out of range");
            if (table[static_cast<std::size_t>(from)] >= 0)
                bad(ctx + ": duplicate source key " + std::to_string(from));
            table[static_cast<std::size_t>(from)] = to;
        }
        for (std::size_t i = 0; i < table.size(); ++i)
            if (table[i] < 0) bad(ctx + ": no image for point " + std::to_string(i));
        return Mapping::finite_table(space, std::move(table));
    }
    bad("unknown mapping kind '" + kind + "' in " + ctx);
}

GrowthFunction parse_growth(const json& j) {
    if (!j.is_object()) bad("'growth' must be an object");
    const std::string name = as_string(require(j, "name", "growth"), "growth.name");
    if (name == "exp_t") {
        check_keys(j, {"name"}, "growth");
        return GrowthFunction::exp_t();
    }
    if (name == "exp_sqrt") {
        check_keys(j, {"name"}, "growth");
        return GrowthFunction::exp_sqrt();
    }
    if (name == "example1") {
        check_keys(j, {"name"}, "growth");
        return GrowthFunction::example1();
    }
    if (name == "power_shift") {
        check_keys(j, {"name", "p"}, "growth");
        return GrowthFunction::power_shift(as_number(require(j, "p", "growth"), "growth.p"));
    }
    if (name == "tabulated") {
        check_keys(j, {"name", "t", "log_phi"}, "growth");
        std::vector<double> ts, vs;
        for (const auto& v : require(j, "t", "growth")) ts.push_back(v.get<double>());
        for (const auto& v : require(j, "log_phi", "growth")) vs.push_back(v.get<double>());
        return GrowthFunction::tabulated(std::move(ts), std::move(vs));
    }
    bad("unknown growth function '" + name + "'");
}

}  // namespace

ProblemSpec parse_problem_spec(const json& doc) {
    if (!doc.is_object()) bad("the spec document must be a JSON object");
    check_keys(doc,
               {"name", "space", "order", "mapping", "mapping_v", "growth", "eta", "theorem",
                "x0", "tol", "max_iter", "cauchy_window", "seed", "samples"},
               "spec");

    ProblemSpec spec{.raw = doc,
                     .name = "",
                     .space = parse_space(require(doc, "space", "spec")),
                     .order = std::nullopt,
                     .u = std::nullopt,
                     .v = std::nullopt,
                     .growth = GrowthFunction::exp_t(),
                     .eta = 2.0,
                     .theorem = "",
                     .x0 = std::nullopt,
                     .solver = {},
                     .seed = 0,
                     .samples = 10000};

    if (doc.contains("name")) spec.name = as_string(doc["name"], "name");
    if (doc.contains("order")) spec.order = parse_order(doc["order"]);
    if (doc.contains("mapping"))
        spec.u = parse_mapping(doc["mapping"], spec.space, "mapping");
    if (doc.contains("mapping_v"))
        spec.v = parse_mapping(doc["mapping_v"], spec.space, "mapping_v");
    if (doc.contains("growth")) spec.growth = parse_growth(doc["growth"]);
    if (doc.contains("eta")) {
        spec.eta = as_number(doc["eta"], "eta");
        if (!(spec.eta > 1.0)) bad("eta must exceed 1");
    }
    if (doc.contains("theorem")) {
        spec.theorem = as_string(doc["theorem"], "theorem");
        if (spec.theorem != "ordered" && spec.theorem != "min" && spec.theorem != "common")
            bad("theorem must be one of: ordered, min, common");
    }
    if (doc.contains("x0")) {
        if (doc["x0"].is_string()) {
            // Label form: resolve against the enumeration.
            const std::string want = doc["x0"].get<std::string>();
            if (!spec.space.enumerable()) bad("x0 labels need a finite space");
            bool found = false;
            for (const auto& p : spec.space.points())
                if (spec.space.label(p) == want) {
                    spec.x0 = p.coord();
                    found = true;
                    break;
                }
            if (!found) bad("x0 label '" + want + "' names no point");
            // Label-only spaces have no coordinate to round-trip through.
            if (spec.x0 && std::isnan(*spec.x0)) bad("x0 label names a point without coords");
        } else {
            spec.x0 = as_number(doc["x0"], "x0");
        }
    }
    if (doc.contains("tol")) {
        spec.solver.tol = as_number(doc["tol"], "tol");
        if (!(spec.solver.tol > 0.0)) bad("tol must be positive");
    }
    if (doc.contains("max_iter"))
        spec.solver.max_iter = static_cast<std::size_t>(as_number(doc["max_iter"], "max_iter"));
    if (doc.contains("cauchy_window"))
        spec.solver.cauchy_window =
            static_cast<std::size_t>(as_number(doc["cauchy_window"], "cauchy_window"));
    if (doc.contains("seed"))
        spec.seed = static_cast<std::uint64_t>(as_number(doc["seed"], "seed"));
    if (doc.contains("samples"))
        spec.samples = static_cast<std::uint64_t>(as_number(doc["samples"], "samples"));
    spec.solver.eta = spec.eta;
    return spec;
}

ProblemSpec parse_problem_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open spec file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        bad("invalid JSON in " + path + ": " + e.what());
    }
    return parse_problem_spec(doc);
}

ExpansiveProblem to_problem(const ProblemSpec& spec) {
    if (!spec.u) bad("the spec has no 'mapping'");
    ExpansiveProblem p(spec.space, *spec.u, spec.growth, spec.eta);
    if (spec.order) p.with_order(*spec.order);
    if (spec.v) p.with_v(*spec.v);
    p.with_sampling(spec.seed, spec.samples);
    return p;
}

Point start_point(const ProblemSpec& spec) {
    if (spec.x0) {
        try {
            return spec.space.from_coord(*spec.x0);
        } catch (const Error& e) {
            bad(std::string("x0 does not name a point of the space: ") + e.what());
        }
    }
    if (spec.space.enumerable()) return spec.space.points().front();
    return Point::free_point(0.5 * (spec.space.interval_lo() + spec.space.interval_hi()));
}

}  // namespace expansive
