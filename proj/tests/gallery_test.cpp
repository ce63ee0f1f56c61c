#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "expansive/errors.hpp"
#include "expansive/gallery.hpp"
#include "expansive/spec_io.hpp"

#include "test_util.hpp"

using namespace expansive;
using nlohmann::json;

#ifndef EXPANSIVE_SPECS_DIR
#error "EXPANSIVE_SPECS_DIR must point at the sample spec directory"
#endif

namespace {

ProblemSpec load(const std::string& file) {
    return parse_problem_spec_file(std::string(EXPANSIVE_SPECS_DIR) + "/" + file);
}

std::vector<std::string> failing_checks(const RunReport& rep) {
    std::vector<std::string> out;
    for (const auto& c : rep.checks)
        if (c.at("verdict") == "fail") out.push_back(c.at("name").get<std::string>());
    return out;
}

bool has_note(const RunReport& rep, const std::string& needle) {
    for (const auto& n : rep.notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(Gallery, ListsItsFourDemonstrations) {
    const std::vector<std::string> want = {"example1", "example2", "wang_linear",
                                           "theta_profile"};
    EXPECT_EQ(gallery_names(), want);
    EXPECT_ERROR_CODE(ErrorCode::UnknownGalleryItem, run_gallery("example3", {}));
}

TEST(Gallery, FractionShiftDemonstrationShowsTheSharpExponent) {
    const auto rep = run_gallery("example1", {});
    // The deliberate eta = 3 contrast check fails, so ok is false, but a
    // demonstration is not strict by default.
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    const auto failing = failing_checks(rep);
    ASSERT_EQ(failing.size(), 1u);
    EXPECT_EQ(failing[0], "phi_expansive(eta=3)");
    EXPECT_GE(rep.traces.size(), 2u);  // ordered from 0, preimage from 1/2
    EXPECT_TRUE(has_note(rep, "ordered start at 1/2 rejected"));
    EXPECT_TRUE(has_note(rep, "geometric envelope"));

    RunOptions strict;
    strict.strict = true;
    EXPECT_EQ(run_gallery("example1", strict).exit_code, 1);
}

TEST(Gallery, LinearPairDemonstrationConverges) {
    const auto rep = run_gallery("example2", {});
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    EXPECT_TRUE(failing_checks(rep).empty());
    EXPECT_TRUE(has_note(rep, "common point: "));
    EXPECT_TRUE(has_note(rep, "coincidence points:"));
    ASSERT_EQ(rep.traces.size(), 1u);
    EXPECT_EQ(rep.traces[0].at("verdict"), "converged");
}

TEST(Gallery, DoublingDemonstrationContrastsTheTwoRoutes) {
    const auto rep = run_gallery("wang_linear", {});
    EXPECT_EQ(rep.exit_code, 0);
    const auto failing = failing_checks(rep);
    ASSERT_EQ(failing.size(), 1u);  // only the deliberate q = 2.5 contrast
    EXPECT_EQ(failing[0], "wang_expansive(q=2.5)");
    bool phi_route_passed = false;
    for (const auto& c : rep.checks)
        if (c.at("name") == "phi_route(q=2)" && c.at("verdict") == "pass")
            phi_route_passed = true;
    EXPECT_TRUE(phi_route_passed);
}

TEST(Gallery, ThetaProfileSummarizesTheGrowthCatalog) {
    const auto rep = run_gallery("theta_profile", {});
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    EXPECT_TRUE(rep.checks.empty());
    EXPECT_GE(rep.notes.size(), 5u);
    EXPECT_TRUE(has_note(rep, "exp_t"));
    EXPECT_TRUE(has_note(rep, "exp_sqrt"));
}

TEST(CmdCheck, FractionSpecPassesEveryCheck) {
    const auto spec = load("example1.json");
    RunOptions strict;
    strict.strict = true;
    const auto rep = cmd_check(spec, strict);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    EXPECT_TRUE(failing_checks(rep).empty());
    std::vector<std::string> names;
    for (const auto& c : rep.checks) names.push_back(c.at("name").get<std::string>());
    const std::vector<std::string> want = {"metric_axioms",   "order_axioms",
                                           "surjective",      "phi_expansive",
                                           "right_inverse_increasing", "min_condition"};
    EXPECT_EQ(names, want);
}

TEST(CmdCheck, EtaOverrideFlipsTheFractionVerdicts) {
    const auto spec = load("example1.json");
    RunOptions opts;
    opts.eta = 3.0;
    const auto rep = cmd_check(spec, opts);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);  // not strict
    const std::vector<std::string> want = {"phi_expansive", "min_condition"};
    EXPECT_EQ(failing_checks(rep), want);

    opts.strict = true;
    EXPECT_EQ(cmd_check(spec, opts).exit_code, 1);

    opts.eta = 1.0;
    EXPECT_ERROR_CODE(ErrorCode::InvalidArgument, cmd_check(spec, opts));
}

TEST(CmdCheck, LinearPairSpecReportsItsHonestFailures) {
    // U x = x/4 is a contraction and not onto: the single-map hypotheses
    // fail while the paired (containment/ratio/compatibility) ones hold.
    const auto spec = load("example2.json");
    const auto rep = cmd_check(spec, {});
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    const std::vector<std::string> want = {"surjective", "min_condition"};
    EXPECT_EQ(failing_checks(rep), want);
    EXPECT_TRUE(has_note(rep, "phi-expansive check skipped"));
    for (const auto& c : rep.checks) {
        const std::string name = c.at("name").get<std::string>();
        if (name == "containment" || name == "jungck_condition" ||
            name == "weak_compatibility") {
            EXPECT_EQ(c.at("verdict"), "pass") << name;
        }
    }
    RunOptions strict;
    strict.strict = true;
    EXPECT_EQ(cmd_check(spec, strict).exit_code, 1);
}

TEST(CmdCheck, ChainAndDoublingSpecsPassStrict) {
    RunOptions strict;
    strict.strict = true;
    const auto chain = cmd_check(load("finite_chain.json"), strict);
    EXPECT_TRUE(chain.ok);
    EXPECT_EQ(chain.exit_code, 0);

    const auto wang = cmd_check(load("wang_line.json"), strict);
    EXPECT_TRUE(wang.ok);
    EXPECT_EQ(wang.exit_code, 0);
}

TEST(CmdSolve, OrderedIterationStaysAtTheBottomFixedPoint) {
    const auto rep = cmd_solve(load("example1.json"), {});
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    ASSERT_EQ(rep.traces.size(), 1u);
    EXPECT_EQ(rep.traces[0].at("role"), "ordered");
    EXPECT_EQ(rep.traces[0].at("verdict"), "converged");
    EXPECT_EQ(rep.traces[0].at("iterations").get<std::size_t>(), 0u);
    EXPECT_TRUE(has_note(rep, "the limit matches an enumerated fixed point"));
    // Both endpoints are fixed; the enumeration finds them.
    EXPECT_EQ(rep.fixed_points.size(), 2u);

    RunOptions bad_start;
    bad_start.x0 = 0.5;
    EXPECT_ERROR_CODE(ErrorCode::StartConditionViolated,
                      cmd_solve(load("example1.json"), bad_start));
}

TEST(CmdSolve, CommonIterationSolvesTheLinearPair) {
    const auto rep = cmd_solve(load("example2.json"), {});
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    ASSERT_EQ(rep.traces.size(), 1u);
    EXPECT_EQ(rep.traces[0].at("role"), "common");
    EXPECT_EQ(rep.traces[0].at("iterations").get<std::size_t>(), 20u);
    EXPECT_TRUE(has_note(rep, "common point: "));
    EXPECT_TRUE(has_note(rep, "the common point is fixed by both maps"));
}

TEST(CmdSolve, PreimageIterationHalvesDownTheLine) {
    const auto rep = cmd_solve(load("wang_line.json"), {});
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    ASSERT_EQ(rep.traces.size(), 1u);
    EXPECT_EQ(rep.traces[0].at("role"), "preimage");
    EXPECT_EQ(rep.traces[0].at("iterations").get<std::size_t>(), 37u);
    EXPECT_EQ(rep.traces[0].at("final").at("coord").get<double>(), std::ldexp(10.0, -37));
}

TEST(CmdSolve, ChainIterationLandsOnTheTerminalPoint) {
    const auto rep = cmd_solve(load("finite_chain.json"), {});
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.exit_code, 0);
    EXPECT_TRUE(has_note(rep, "common point: 0.046656"));
}

TEST(CmdSolve, RefusesUnderdeterminedSpecs) {
    json doc = {{"space", {{"kind", "real_interval"}, {"a", 0.0}, {"b", 1.0}}},
                {"mapping", {{"kind", "linear"}, {"slope", 2.0}}}};
    // No theorem named anywhere.
    EXPECT_ERROR_CODE(ErrorCode::SpecParse, cmd_solve(parse_problem_spec(doc), {}));

    // common without a second mapping.
    RunOptions common;
    common.theorem = "common";
    EXPECT_ERROR_CODE(ErrorCode::SpecParse, cmd_solve(parse_problem_spec(doc), common));

    // ordered without an order.
    RunOptions ordered;
    ordered.theorem = "ordered";
    EXPECT_ERROR_CODE(ErrorCode::MissingOrder, cmd_solve(parse_problem_spec(doc), ordered));
}

TEST(CmdFalsify, FindsWangViolationsAndRespectsBudgets) {
    const auto spec = load("example1.json");
    const auto found = cmd_falsify(spec, "wang", 100000, {});
    EXPECT_TRUE(found.ok);  // finding a violation is this command's success
    EXPECT_EQ(found.exit_code, 0);
    EXPECT_TRUE(has_note(found, "violation found"));

    const auto capped = cmd_falsify(spec, "phi", 100000, {});
    EXPECT_FALSE(capped.ok);
    EXPECT_EQ(capped.exit_code, 1);
    EXPECT_TRUE(has_note(capped, "no violation found within the budget"));

    const auto sampled = cmd_falsify(load("wang_line.json"), "wang", 100000, {});
    EXPECT_EQ(sampled.exit_code, 1);  // the doubling map really is 2-expansive

    EXPECT_ERROR_CODE(ErrorCode::InvalidArgument, cmd_falsify(spec, "cauchy", 1000, {}));
}

TEST(RunReport, JsonIsReproducibleUpToTheTimestamp) {
    const auto spec = load("example2.json");
    auto a = cmd_check(spec, {}).to_json();
    auto b = cmd_check(spec, {}).to_json();
    a.erase("timestamp");
    b.erase("timestamp");
    EXPECT_EQ(a.dump(), b.dump());

    // The spec echo embedded in the report re-parses to the same problem.
    const auto echoed = parse_problem_spec(a.at("spec"));
    EXPECT_EQ(echoed.name, spec.name);
    EXPECT_EQ(echoed.eta, spec.eta);
}

TEST(RunReport, TextRenderingShowsVerdictsAndExitCode) {
    const auto rep = cmd_check(load("example1.json"), {});
    const std::string text = rep.to_text();
    EXPECT_NE(text.find("check phi_expansive: PASS"), std::string::npos);
    EXPECT_NE(text.find("exit: 0"), std::string::npos);

    const auto failing = run_gallery("example1", {}).to_text();
    EXPECT_NE(failing.find("FAIL"), std::string::npos);
    EXPECT_NE(failing.find("witness"), std::string::npos);
}

TEST(RunReport, TraceCsvFilesLandInTheRequestedDirectory) {
    const std::string dir = ::testing::TempDir() + "/expansive_traces";
    std::filesystem::remove_all(dir);
    RunOptions opts;
    opts.out_dir = dir;
    (void)cmd_solve(load("example2.json"), opts);
    const std::string file = dir + "/unit_interval_pair_common.csv";
    ASSERT_TRUE(std::filesystem::exists(file));
    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "n,label,coord,step_distance");
    std::filesystem::remove_all(dir);
}
