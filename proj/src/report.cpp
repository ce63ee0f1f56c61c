#include "expansive/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "expansive/version.hpp"

namespace expansive {

namespace {

using nlohmann::json;

// JSON has no inf/nan; encode those as strings, finite values as numbers.
json num(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

json point_to_json(const Space& space, const Point& p) {
    json j;
    j["label"] = space.label(p);
    if (p.has_coord()) j["coord"] = p.coord();
    return j;
}

json check_report_to_json(const CheckReport& r, const Space& space) {
    json j;
    j["name"] = r.name;
    j["verdict"] = r.passed() ? "pass" : "fail";
    j["pairs_examined"] = r.pairs_examined;
    j["skipped"] = r.skipped;
    json cov;
    cov["mode"] = r.coverage.mode == Coverage::Mode::Exhaustive ? "exhaustive" : "sampled";
    if (r.coverage.mode == Coverage::Mode::Sampled) {
        cov["seed"] = r.coverage.seed;
        cov["samples"] = r.coverage.samples;
    }
    j["coverage"] = cov;
    if (r.witness) {
        json w;
        w["x"] = point_to_json(space, r.witness->x);
        w["z"] = point_to_json(space, r.witness->z);
        if (r.witness->via) w["via"] = point_to_json(space, *r.witness->via);
        if (!std::isnan(r.witness->d_xz)) w["d_xz"] = num(r.witness->d_xz);
        if (!std::isnan(r.witness->d_img)) w["d_img"] = num(r.witness->d_img);
        if (!std::isnan(r.witness->lhs_log)) w["lhs_log"] = num(r.witness->lhs_log);
        if (!std::isnan(r.witness->rhs_log)) w["rhs_log"] = num(r.witness->rhs_log);
        w["detail"] = r.witness->detail;
        j["witness"] = w;
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

json trace_to_json(const IterationTrace& t, const std::string& role) {
    json j;
    j["role"] = role;
    j["verdict"] = solve_verdict_name(t.verdict);
    j["iterations"] = t.iterations();
    j["residual"] = num(t.residual);
    if (t.s) j["s"] = *t.s;
    if (!t.note.empty()) j["note"] = t.note;
    j["start"] = point_to_json(t.space, t.points.front());
    j["final"] = point_to_json(t.space, t.final_point());
    json steps = json::array();
    const std::size_t head = std::min<std::size_t>(t.step_distances.size(), 10);
    for (std::size_t i = 0; i < head; ++i) steps.push_back(num(t.step_distances[i]));
    j["first_steps"] = steps;
    if (!t.step_distances.empty()) j["last_step"] = num(t.step_distances.back());
    return j;
}

void RunReport::add_check(const CheckReport& r, const Space& space) {
    checks.push_back(check_report_to_json(r, space));
    if (!r.passed()) ok = false;
}

void RunReport::add_trace(const IterationTrace& t, std::string role) {
    traces.push_back(trace_to_json(t, role));
}

void RunReport::add_fixed_point(const Space& space, const Point& p) {
    fixed_points.push_back(point_to_json(space, p));
}

void RunReport::add_note(std::string note) { notes.push_back(std::move(note)); }

json RunReport::to_json() const {
    json j;
    j["timestamp"] = timestamp;
    j["version"] = version;
    j["command"] = command;
    if (!spec_echo.is_null()) j["spec"] = spec_echo;
    j["checks"] = checks;
    j["traces"] = traces;
    j["fixed_points"] = fixed_points;
    j["notes"] = notes;
    j["ok"] = ok;
    j["exit_code"] = exit_code;
    return j;
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "expansive " << version << "  " << command << "  " << timestamp << "\n";
    for (const auto& c : checks) {
        out << "check " << c["name"].get<std::string>() << ": "
            << (c["verdict"] == "pass" ? "PASS" : "FAIL");
        out << " (" << c["coverage"]["mode"].get<std::string>() << ", "
            << c["pairs_examined"].get<std::uint64_t>() << " pairs";
        if (c["skipped"].get<std::uint64_t>() > 0)
            out << ", " << c["skipped"].get<std::uint64_t>() << " skipped";
        out << ")";
        if (c.contains("witness")) {
            const auto& w = c["witness"];
            out << "\n  witness: (" << w["x"]["label"].get<std::string>() << ", "
                << w["z"]["label"].get<std::string>() << ") " << w["detail"].get<std::string>();
            if (w.contains("lhs_log") && w["lhs_log"].is_number())
                out << " [lhs=" << format_num(w["lhs_log"].get<double>())
                    << ", rhs=" << format_num(w["rhs_log"].get<double>()) << "]";
            else if (w.contains("lhs_log"))
                out << " [lhs=" << w["lhs_log"].dump() << "]";
        }
        out << "\n";
        if (c.contains("notes"))
            for (const auto& n : c["notes"]) out << "  note: " << n.get<std::string>() << "\n";
    }
    for (const auto& t : traces) {
        out << "trace " << t["role"].get<std::string>() << ": "
            << t["verdict"].get<std::string>() << " in " << t["iterations"].get<std::size_t>()
            << " iterations, residual "
            << (t["residual"].is_number() ? format_num(t["residual"].get<double>())
                                          : t["residual"].dump())
            << ", final " << t["final"]["label"].get<std::string>();
        if (t.contains("note")) out << " (" << t["note"].get<std::string>() << ")";
        out << "\n";
    }
    if (!fixed_points.empty()) {
        out << "fixed points:";
        for (const auto& p : fixed_points) out << " " << p["label"].get<std::string>();
        out << "\n";
    }
    for (const auto& n : notes) out << "note: " << n << "\n";
    out << "exit: " << exit_code << "\n";
    return out.str();
}

RunReport make_run_report(std::string command) {
    RunReport r;
    r.version = kVersion;
    r.command = std::move(command);
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    r.timestamp = buf;
    return r;
}

}  // namespace expansive
