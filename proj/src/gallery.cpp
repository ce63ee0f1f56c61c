#include "expansive/gallery.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "expansive/axioms.hpp"
#include "expansive/errors.hpp"

namespace expansive {

namespace {

ProblemSpec apply_overrides(ProblemSpec spec, const RunOptions& opts) {
    if (opts.eta) {
        if (!(*opts.eta > 1.0))
            throw Error(ErrorCode::InvalidArgument, "eta must exceed 1");
        spec.eta = *opts.eta;
        spec.solver.eta = *opts.eta;
    }
    if (opts.x0) spec.x0 = *opts.x0;
    if (opts.tol) spec.solver.tol = *opts.tol;
    if (opts.max_iter) spec.solver.max_iter = *opts.max_iter;
    if (opts.seed) spec.seed = *opts.seed;
    if (!opts.theorem.empty()) spec.theorem = opts.theorem;
    return spec;
}

void maybe_write_csv(const RunOptions& opts, const IterationTrace& t, const std::string& stem) {
    if (opts.out_dir.empty()) return;
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream out(std::filesystem::path(opts.out_dir) / (stem + ".csv"));
    write_trace_csv(t, out);
}

void cauchy_note(RunReport& rep, const IterationTrace& t, std::size_t window) {
    if (t.points.size() < window) return;
    const auto d = cauchy_diagnostics(t, window);
    std::ostringstream os;
    os << "cauchy window " << window << ": tail diameter " << d.tail_diameter
       << (d.diameter_decays ? " (decaying)" : " (stagnant)");
    if (d.not_cauchy_like)
        os << "; steps vanish while the tail stagnates: no limit at this tolerance";
    rep.add_note(os.str());
}

void fixed_point_summary(RunReport& rep, const Mapping& u, double tol,
                         const std::optional<Point>& limit) {
    const auto fps = enumerate_fixed_points(u, tol);
    for (const auto& p : fps) rep.add_fixed_point(u.space(), p);
    if (limit) {
        bool member = false;
        for (const auto& p : fps)
            if (u.space().distance(p, *limit) <= 10.0 * tol) member = true;
        rep.add_note(member ? "the limit matches an enumerated fixed point"
                            : "the limit is NOT among the enumerated fixed points");
        if (!member) rep.ok = false;
    }
}

// The solve path shared by cmd_solve and the gallery items.
void run_solve(RunReport& rep, const ProblemSpec& spec, const RunOptions& opts) {
    if (spec.theorem.empty())
        throw Error(ErrorCode::SpecParse, "solve needs a theorem: ordered, min, or common");
    if (!spec.u) throw Error(ErrorCode::SpecParse, "the spec has no 'mapping'");
    const Mapping& u = *spec.u;
    const Point x0 = start_point(spec);
    bool hypotheses_ok = true;

    if (spec.theorem == "ordered") {
        if (!spec.order)
            throw Error(ErrorCode::MissingOrder, "the ordered iteration needs an order");
        auto problem = to_problem(spec);
        const auto phi_check = check_phi_expansive(problem);
        rep.add_check(phi_check, spec.space);
        const auto surj = verify_surjective(u);
        rep.add_check(surj, spec.space);
        const RightInverse ustar = build_right_inverse(u);
        const auto incr = check_increasing(ustar, *spec.order);
        rep.add_check(incr, spec.space);
        hypotheses_ok = phi_check.passed() && surj.passed() && incr.passed();
        if (!hypotheses_ok) rep.add_note("hypotheses fail; iterating anyway for diagnosis");
        const auto t = solve_ordered(u, ustar, x0, *spec.order, spec.solver);
        rep.add_trace(t, "ordered");
        maybe_write_csv(opts, t, spec.name.empty() ? "ordered_trace" : spec.name + "_ordered");
        cauchy_note(rep, t, spec.solver.cauchy_window);
        fixed_point_summary(rep, u, spec.solver.tol * 10.0,
                            t.verdict == SolveVerdict::Converged
                                ? std::optional<Point>(t.final_point())
                                : std::nullopt);
        if (t.verdict != SolveVerdict::Converged) rep.ok = false;
        rep.add_note(std::string("iteration verdict: ") + solve_verdict_name(t.verdict));
        return;
    }

    if (spec.theorem == "min") {
        auto problem = to_problem(spec);
        const auto min_check = check_min_condition(problem);
        rep.add_check(min_check, spec.space);
        const auto surj = verify_surjective(u);
        rep.add_check(surj, spec.space);
        hypotheses_ok = min_check.passed() && surj.passed();
        if (!hypotheses_ok) rep.add_note("hypotheses fail; iterating anyway for diagnosis");
        const auto t = solve_preimage(u, x0, spec.solver);
        rep.add_trace(t, "preimage");
        maybe_write_csv(opts, t, spec.name.empty() ? "preimage_trace" : spec.name + "_preimage");
        cauchy_note(rep, t, spec.solver.cauchy_window);
        fixed_point_summary(rep, u, spec.solver.tol * 10.0,
                            t.verdict == SolveVerdict::Converged
                                ? std::optional<Point>(t.final_point())
                                : std::nullopt);
        if (t.verdict != SolveVerdict::Converged) rep.ok = false;
        rep.add_note(std::string("iteration verdict: ") + solve_verdict_name(t.verdict));
        return;
    }

    // common
    if (!spec.v)
        throw Error(ErrorCode::SpecParse, "the common-point iteration needs 'mapping_v'");
    auto problem = to_problem(spec);
    const auto jungck = check_jungck_condition(problem);
    rep.add_check(jungck, spec.space);
    const auto weak = verify_weak_compatibility(u, *spec.v);
    rep.add_check(weak, spec.space);
    hypotheses_ok = jungck.passed() && weak.passed();
    if (!hypotheses_ok) rep.add_note("hypotheses fail; iterating anyway for diagnosis");
    const auto result = solve_common(u, *spec.v, x0, spec.solver);
    rep.add_trace(result.trace, "common");
    maybe_write_csv(opts, result.trace,
                    spec.name.empty() ? "common_trace" : spec.name + "_common");
    cauchy_note(rep, result.trace, spec.solver.cauchy_window);
    if (result.common) {
        rep.add_note("common point: " + spec.space.label(*result.common));
        const double tol10 = spec.solver.tol * 10.0;
        const auto fps_u = enumerate_fixed_points(u, tol10);
        const auto fps_v = enumerate_fixed_points(*spec.v, tol10);
        bool in_u = false, in_v = false;
        for (const auto& p : fps_u)
            if (spec.space.distance(p, *result.common) <= 10.0 * tol10) in_u = true;
        for (const auto& p : fps_v)
            if (spec.space.distance(p, *result.common) <= 10.0 * tol10) in_v = true;
        for (const auto& p : fps_u) rep.add_fixed_point(spec.space, p);
        rep.add_note(in_u && in_v
                         ? "the common point is fixed by both maps"
                         : "the common point is NOT fixed by both maps within tolerance");
        if (!(in_u && in_v)) rep.ok = false;
    } else {
        rep.ok = false;
    }
    rep.add_note(std::string("iteration verdict: ") +
                 solve_verdict_name(result.trace.verdict));
}

}  // namespace

RunReport cmd_check(const ProblemSpec& raw_spec, const RunOptions& opts) {
    const ProblemSpec spec = apply_overrides(raw_spec, opts);
    RunReport rep = make_run_report("check");
    rep.spec_echo = spec.raw;

    rep.add_check(verify_metric_axioms(spec.space, spec.samples, spec.seed), spec.space);
    if (spec.order && spec.space.enumerable())
        rep.add_check(verify_order_axioms(spec.space, *spec.order), spec.space);

    if (spec.u) {
        const auto surj = verify_surjective(*spec.u);
        rep.add_check(surj, spec.space);

        auto problem = to_problem(spec);
        if (spec.order) {
            rep.add_check(check_phi_expansive(problem), spec.space);
            if (surj.passed())
                rep.add_check(check_increasing(build_right_inverse(*spec.u), *spec.order),
                              spec.space);
        } else {
            rep.add_note("phi-expansive check skipped: the spec declares no order");
        }
        rep.add_check(check_min_condition(problem), spec.space);
        if (spec.v) {
            rep.add_check(verify_containment(*spec.u, *spec.v), spec.space);
            rep.add_check(check_jungck_condition(problem), spec.space);
            rep.add_check(verify_weak_compatibility(*spec.u, *spec.v), spec.space);
        }
    } else {
        rep.add_note("no mapping declared: only the space axioms were checked");
    }

    rep.exit_code = (opts.strict && !rep.ok) ? 1 : 0;
    return rep;
}

RunReport cmd_solve(const ProblemSpec& raw_spec, const RunOptions& opts) {
    const ProblemSpec spec = apply_overrides(raw_spec, opts);
    RunReport rep = make_run_report("solve");
    rep.spec_echo = spec.raw;
    run_solve(rep, spec, opts);
    rep.exit_code = rep.ok ? 0 : 1;
    return rep;
}

RunReport cmd_falsify(const ProblemSpec& raw_spec, const std::string& condition,
                      std::uint64_t budget, const RunOptions& opts) {
    const ProblemSpec spec = apply_overrides(raw_spec, opts);
    RunReport rep = make_run_report("falsify");
    rep.spec_echo = spec.raw;

    ConditionName which;
    if (condition == "phi")
        which = ConditionName::Phi;
    else if (condition == "wang")
        which = ConditionName::Wang;
    else if (condition == "min")
        which = ConditionName::Min;
    else if (condition == "jungck")
        which = ConditionName::Jungck;
    else
        throw Error(ErrorCode::InvalidArgument,
                    "unknown condition '" + condition + "' (phi, wang, min, jungck)");

    const auto problem = to_problem(spec);
    const auto r = search_violation(problem, which, budget);
    rep.add_check(r, spec.space);
    rep.add_note(r.passed() ? "no violation found within the budget"
                            : "violation found");
    // Finding a violation is this command's success.
    rep.ok = !r.passed();
    rep.exit_code = rep.ok ? 0 : 1;
    return rep;
}

std::vector<std::string> gallery_names() {
    return {"example1", "example2", "wang_linear", "theta_profile"};
}

namespace {

RunReport gallery_example1(const RunOptions& opts) {
    RunReport rep = make_run_report("gallery example1");
    const double eta = opts.eta.value_or(2.0);
    Space space = Space::shrinking_fractions(64);
    Mapping u = Mapping::example1_shift(space);
    PartialOrder order = PartialOrder::example1();
    GrowthFunction phi = GrowthFunction::example1();

    rep.add_note("space: truncated shrinking fractions, d(x,z) = max(x,z) for x != z");
    rep.add_check(verify_metric_axioms(space), space);
    rep.add_check(verify_order_axioms(space, order), space);
    rep.add_check(verify_surjective(u), space);

    ExpansiveProblem problem(space, u, phi, eta);
    problem.with_order(order);
    rep.add_check(check_phi_expansive(problem), space);
    rep.add_check(check_min_condition(problem), space);

    const RightInverse ustar = build_right_inverse(u);
    rep.add_check(check_increasing(ustar, order), space);

    // The contrast exponent: the inequality holds exactly up to eta = e.
    ExpansiveProblem tight(space, u, phi, 3.0);
    tight.with_order(order);
    auto failing = check_phi_expansive(tight);
    failing.name = "phi_expansive(eta=3)";
    rep.add_check(failing, space);
    rep.add_note("the condition holds for eta up to e and breaks beyond it");

    SolverConfig cfg;
    cfg.tol = opts.tol.value_or(1e-3);
    cfg.max_iter = opts.max_iter.value_or(100000);
    cfg.eta = eta;

    const Point zero = space.fraction_point(0);
    const auto t0 = solve_ordered(u, ustar, zero, order, cfg);
    rep.add_trace(t0, "ordered from 0");
    maybe_write_csv(opts, t0, "example1_ordered");

    try {
        solve_ordered(u, ustar, space.from_coord(0.5), order, cfg);
    } catch (const Error& e) {
        rep.add_note(std::string("ordered start at 1/2 rejected: ") + e.what());
    }

    const Point half = space.from_coord(opts.x0.value_or(0.5));
    const auto t1 = solve_preimage(u, half, cfg);
    rep.add_trace(t1, "preimage from 1/2");
    maybe_write_csv(opts, t1, "example1_preimage");
    cauchy_note(rep, t1, 50);
    const auto env = geometric_envelope(t1, phi);
    if (env.total > 0) {
        std::ostringstream os;
        os << "geometric envelope: " << env.satisfied << "/" << env.total
           << " steps inside s^n * log phi(d0)";
        rep.add_note(os.str());
    }
    rep.add_note("harmonic decay: the preimage orbit needs ~1/tol steps");

    fixed_point_summary(rep, u, 1e-12, std::nullopt);
    const double gap_to_zero = space.distance(t1.final_point(), zero);
    if (gap_to_zero <= 10.0 * cfg.tol)
        rep.add_note("the preimage orbit sits within 10x tol of the fixed point 0");
    else
        rep.ok = false;
    rep.add_note("two fixed points exist; the order leaves 1 incomparable, so the "
                 "ordered uniqueness argument only covers chains through 0");
    if (t1.verdict != SolveVerdict::Converged) rep.ok = false;
    rep.exit_code = (opts.strict && !rep.ok) ? 1 : 0;
    return rep;
}

RunReport gallery_example2(const RunOptions& opts) {
    RunReport rep = make_run_report("gallery example2");
    const double eta = opts.eta.value_or(2.0);
    Space space = Space::real_interval(0.0, 1.0);
    Mapping u = Mapping::linear(space, 0.25);
    Mapping v = Mapping::linear(space, 1.0 / 12.0);

    rep.add_note("U x = x/4 and V x = x/12 on [0,1]; growth e^t");
    rep.add_check(verify_metric_axioms(space, 10000, opts.seed.value_or(0)), space);

    try {
        build_right_inverse(u);
    } catch (const Error& e) {
        rep.add_note(std::string("U alone is not onto: ") + e.what());
    }

    ExpansiveProblem problem(space, u, GrowthFunction::exp_t(), eta);
    problem.with_v(v).with_sampling(opts.seed.value_or(0), 10000);
    rep.add_check(check_jungck_condition(problem), space);
    rep.add_check(verify_weak_compatibility(u, v), space);

    const auto coin = coincidence_points(u, v);
    std::ostringstream os;
    os << "coincidence points:";
    for (const auto& c : coin) os << " " << space.label(c);
    rep.add_note(os.str());

    SolverConfig cfg;
    cfg.tol = opts.tol.value_or(1e-10);
    cfg.max_iter = opts.max_iter.value_or(100000);
    cfg.eta = eta;
    const Point x0 = Point::free_point(opts.x0.value_or(1.0));
    const auto result = solve_common(u, v, x0, cfg);
    rep.add_trace(result.trace, "common");
    maybe_write_csv(opts, result.trace, "example2_common");
    if (result.common) {
        rep.add_note("common point: " + space.label(*result.common));
        fixed_point_summary(rep, u, cfg.tol * 10.0, result.common);
    } else {
        rep.ok = false;
    }
    if (result.trace.verdict != SolveVerdict::Converged) rep.ok = false;
    rep.exit_code = (opts.strict && !rep.ok) ? 1 : 0;
    return rep;
}

RunReport gallery_wang_linear(const RunOptions& opts) {
    RunReport rep = make_run_report("gallery wang_linear");
    Space space = Space::real_interval(0.0, 10.0);
    Mapping u = Mapping::linear(space, 2.0);
    const std::uint64_t seed = opts.seed.value_or(0);

    rep.add_note("U x = 2x on [0,10]: 2-expansive and onto the interval");
    rep.add_check(verify_metric_axioms(space, 10000, seed), space);
    rep.add_check(verify_surjective(u), space);
    rep.add_check(check_wang_expansive(u, opts.eta.value_or(2.0), seed, 10000), space);

    auto too_strong = check_wang_expansive(u, 2.5, seed, 10000);
    too_strong.name = "wang_expansive(q=2.5)";
    rep.add_check(too_strong, space);

    // Same inequality through the log route: phi = e^t, eta = q.
    auto phi_route = check_phi_expansive(wang_as_phi_problem(u, 2.0, seed, 10000));
    phi_route.name = "phi_route(q=2)";
    rep.add_check(phi_route, space);
    rep.add_note("the q-condition and its phi restatement agree pair by pair");

    SolverConfig cfg;
    cfg.tol = opts.tol.value_or(1e-10);
    cfg.max_iter = opts.max_iter.value_or(100000);
    cfg.eta = opts.eta.value_or(2.0);
    const Point x0 = Point::free_point(opts.x0.value_or(10.0));
    const auto t = solve_preimage(u, x0, cfg);
    rep.add_trace(t, "preimage");
    maybe_write_csv(opts, t, "wang_linear_preimage");
    cauchy_note(rep, t, 20);
    fixed_point_summary(rep, u, cfg.tol * 10.0,
                        t.verdict == SolveVerdict::Converged
                            ? std::optional<Point>(t.final_point())
                            : std::nullopt);
    if (t.verdict != SolveVerdict::Converged) rep.ok = false;
    rep.exit_code = (opts.strict && !rep.ok) ? 1 : 0;
    return rep;
}

RunReport gallery_theta_profile(const RunOptions& opts) {
    RunReport rep = make_run_report("gallery theta_profile");
    const std::vector<GrowthFunction> fns = {
        GrowthFunction::exp_t(), GrowthFunction::exp_sqrt(), GrowthFunction::example1(),
        GrowthFunction::power_shift(0.5)};
    for (const auto& f : fns) {
        const auto c = classify_theta(f);
        std::ostringstream os;
        os << f.name() << ": theta1 " << theta_verdict_name(c.theta1) << ", theta2 "
           << theta_verdict_name(c.theta2) << ", theta3 " << theta_verdict_name(c.theta3);
        if (c.theta3 == ThetaVerdict::Pass) {
            os << " (r = " << c.theta3_r << ", limit ";
            if (std::isinf(c.theta3_limit))
                os << "inf";
            else
                os << c.theta3_limit;
            os << ")";
        }
        os << (c.in_theta_class() ? " -> in the theta class" : " -> outside the theta class");
        rep.add_note(os.str());
    }
    rep.add_note("e^t fails the power-comparison condition; e^sqrt(t) satisfies it "
                 "with r = 1/2");
    rep.exit_code = 0;
    (void)opts;
    return rep;
}

}  // namespace

RunReport run_gallery(const std::string& name, const RunOptions& opts) {
    if (name == "example1") return gallery_example1(opts);
    if (name == "example2") return gallery_example2(opts);
    if (name == "wang_linear") return gallery_wang_linear(opts);
    if (name == "theta_profile") return gallery_theta_profile(opts);
    throw Error(ErrorCode::UnknownGalleryItem,
                "unknown gallery item '" + name + "'; available: example1, example2, "
                "wang_linear, theta_profile");
}

}  // namespace expansive
