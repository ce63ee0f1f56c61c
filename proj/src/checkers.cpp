#include "expansive/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "expansive/axioms.hpp"
#include "expansive/errors.hpp"

namespace expansive {

namespace {

// Strict positivity of a distance: exact on finite tabulated metrics, kEqTol
// on the reals.
bool positive_distance(const Space& s, double d) {
    return s.kind() == SpaceKind::RealInterval ? d > kEqTol : d > 0.0;
}

Witness make_witness(const Point& x, const Point& z, double d_xz, double d_img,
                     double lhs_log, double rhs_log, std::string detail) {
    Witness w;
    w.x = x;
    w.z = z;
    w.d_xz = d_xz;
    w.d_img = d_img;
    w.lhs_log = lhs_log;
    w.rhs_log = rhs_log;
    w.detail = std::move(detail);
    return w;
}

// Streams pairs to `fn` until it reports a witness: all unordered pairs of
// a finite space in canonical order, or `samples` seeded draws (normalized
// to ascending coordinate) on an interval.
template <typename Fn>
CheckReport scan_pairs(const Space& space, std::string name, std::uint64_t seed,
                       std::uint64_t samples, Fn&& fn) {
    std::uint64_t examined = 0;
    std::uint64_t skipped = 0;
    if (space.enumerable()) {
        const auto& pts = space.points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (auto w = fn(pts[i], pts[j], examined, skipped)) {
                    auto r = CheckReport::fail(name, examined, Coverage::exhaustive(), *w);
                    r.skipped = skipped;
                    return r;
                }
            }
        auto r = CheckReport::pass(name, examined, Coverage::exhaustive());
        r.skipped = skipped;
        return r;
    }
    std::mt19937_64 rng(seed);
    for (std::uint64_t k = 0; k < samples; ++k) {
        Point a = space.sample(rng);
        Point b = space.sample(rng);
        if (b.coord() < a.coord()) std::swap(a, b);
        if (auto w = fn(a, b, examined, skipped)) {
            auto r = CheckReport::fail(name, examined, Coverage::sampled(seed, samples), *w);
            r.skipped = skipped;
            return r;
        }
    }
    auto r = CheckReport::pass(name, examined, Coverage::sampled(seed, samples));
    r.skipped = skipped;
    return r;
}

}  // namespace

ExpansiveProblem::ExpansiveProblem(Space space, Mapping u, GrowthFunction growth, double eta)
    : space_(std::move(space)), u_(std::move(u)), growth_(std::move(growth)), eta_(eta) {
    if (!(eta > 1.0))
        throw Error(ErrorCode::InvalidArgument, "the exponent eta must exceed 1");
}

ExpansiveProblem& ExpansiveProblem::with_order(PartialOrder order) {
    order_ = std::move(order);
    return *this;
}

ExpansiveProblem& ExpansiveProblem::with_v(Mapping v) {
    v_ = std::move(v);
    return *this;
}

ExpansiveProblem& ExpansiveProblem::with_sampling(std::uint64_t seed, std::uint64_t samples) {
    seed_ = seed;
    samples_ = samples;
    return *this;
}

CheckReport check_phi_expansive(const ExpansiveProblem& p) {
    const std::string name = "phi_expansive";
    if (!p.order())
        throw Error(ErrorCode::MissingOrder, "the phi-expansive condition quantifies over "
                                             "comparable pairs; provide an order");
    const Space& s = p.space();
    const Mapping& u = p.u();
    const PartialOrder& order = *p.order();
    const GrowthFunction& phi = p.growth();
    const double eta = p.eta();

    if (s.enumerable()) {
        // Comparable pairs in canonical order; the diagonal never enters the
        // domain set because d(Ux,Ux) = 0.
        std::uint64_t examined = 0;
        for (const auto& [x, z] : comparable_pairs(s, order)) {
            const double d_img = s.distance(u.apply(x), u.apply(z));
            if (!positive_distance(s, d_img)) continue;
            const double d_xz = s.distance(x, z);
            ++examined;
            const double lhs = phi.eval_log(d_img);
            const double rhs = eta * phi.eval_log(d_xz);
            if (!(lhs >= rhs))
                return CheckReport::fail(
                    name, examined, Coverage::exhaustive(),
                    make_witness(x, z, d_xz, d_img, lhs, rhs,
                                 "log phi(d(Ux,Uz)) < eta * log phi(d(x,z))"));
        }
        return CheckReport::pass(name, examined, Coverage::exhaustive());
    }

    return scan_pairs(
        s, name, p.seed(), p.samples(),
        [&](const Point& x, const Point& z, std::uint64_t& examined,
            std::uint64_t& skipped) -> std::optional<Witness> {
            if (!order.leq(x, z)) return std::nullopt;
            const double d_img = s.distance(u.apply(x), u.apply(z));
            if (!positive_distance(s, d_img)) return std::nullopt;
            const double d_xz = s.distance(x, z);
            if (d_xz <= 0.0) {
                ++skipped;
                return std::nullopt;
            }
            ++examined;
            const double lhs = phi.eval_log(d_img);
            const double rhs = eta * phi.eval_log(d_xz);
            if (!(lhs >= rhs))
                return make_witness(x, z, d_xz, d_img, lhs, rhs,
                                    "log phi(d(Ux,Uz)) < eta * log phi(d(x,z))");
            return std::nullopt;
        });
}

CheckReport check_wang_expansive(const Mapping& u, double q, std::uint64_t seed,
                                 std::uint64_t samples) {
    const std::string name = "wang_expansive";
    if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "q must be positive");
    const Space& s = u.space();
    return scan_pairs(
        s, name, seed, samples,
        [&](const Point& x, const Point& z, std::uint64_t& examined,
            std::uint64_t& skipped) -> std::optional<Witness> {
            (void)skipped;
            const double d_xz = s.distance(x, z);
            const double d_img = s.distance(u.apply(x), u.apply(z));
            ++examined;
            // Linear domain on purpose: this is the raw inequality.
            if (!(d_img >= q * d_xz))
                return make_witness(x, z, d_xz, d_img, d_img, q * d_xz,
                                    "d(Ux,Uz) < q * d(x,z)");
            return std::nullopt;
        });
}

CheckReport check_min_condition(const ExpansiveProblem& p) {
    const std::string name = "min_condition";
    const Space& s = p.space();
    const Mapping& u = p.u();
    const GrowthFunction& phi = p.growth();
    const double eta = p.eta();

    return scan_pairs(
        s, name, p.seed(), p.samples(),
        [&](const Point& x, const Point& z, std::uint64_t& examined,
            std::uint64_t& skipped) -> std::optional<Witness> {
            const Point ux = u.apply(x);
            const Point uz = u.apply(z);
            const double d_x_ux = s.distance(x, ux);
            const double d_z_uz = s.distance(z, uz);
            // Quantifier: both points non-fixed, images distinct.
            if (!positive_distance(s, d_x_ux) || !positive_distance(s, d_z_uz))
                return std::nullopt;
            const double d_img = s.distance(ux, uz);
            if (!positive_distance(s, d_img)) return std::nullopt;
            const double d_xz = s.distance(x, z);
            const double m = std::min({d_xz, d_x_ux, d_z_uz});
            if (!positive_distance(s, m)) {
                ++skipped;  // phi(0) is undefined; recorded, not dropped
                return std::nullopt;
            }
            ++examined;
            const double lhs = phi.eval_log(d_img);
            const double rhs = eta * phi.eval_log(m);
            if (!(lhs >= rhs))
                return make_witness(x, z, m, d_img, lhs, rhs,
                                    "log phi(d(Ux,Uz)) < eta * log phi(min{d(x,z), "
                                    "d(x,Ux), d(z,Uz)})");
            return std::nullopt;
        });
}

CheckReport check_jungck_condition(const ExpansiveProblem& p) {
    const std::string name = "jungck_condition";
    if (!p.v())
        throw Error(ErrorCode::InvalidArgument, "the two-map condition needs a mapping V");
    const Space& s = p.space();
    const Mapping& u = p.u();
    const Mapping& v = *p.v();
    const GrowthFunction& phi = p.growth();
    const double eta = p.eta();

    const CheckReport containment = verify_containment(u, v);
    if (!containment.passed()) {
        std::string at = containment.witness ? containment.witness->detail : "";
        throw Error(ErrorCode::ContainmentViolated,
                    "V(M) is not contained in U(M): " + at);
    }

    auto r = scan_pairs(
        s, name, p.seed(), p.samples(),
        [&](const Point& x, const Point& z, std::uint64_t& examined,
            std::uint64_t& skipped) -> std::optional<Witness> {
            (void)skipped;
            const double d_v = s.distance(v.apply(x), v.apply(z));
            if (!positive_distance(s, d_v)) return std::nullopt;  // quantifier: Vx != Vz
            const double d_u = s.distance(u.apply(x), u.apply(z));
            ++examined;
            if (!positive_distance(s, d_u))
                return make_witness(x, z, d_v, d_u,
                                    -std::numeric_limits<double>::infinity(),
                                    eta * phi.eval_log(d_v),
                                    "U collapses the pair while V separates it");
            const double lhs = phi.eval_log(d_u);
            const double rhs = eta * phi.eval_log(d_v);
            if (!(lhs >= rhs))
                return make_witness(x, z, d_v, d_u, lhs, rhs,
                                    "log phi(d(Ux,Uz)) < eta * log phi(d(Vx,Vz))");
            return std::nullopt;
        });
    for (const auto& note : containment.notes) r.notes.push_back(note);
    r.notes.push_back("containment verified before the pair scan");
    return r;
}

CheckReport check_increasing(const RightInverse& ustar, const PartialOrder& order) {
    const std::string name = "right_inverse_increasing";
    const Space& s = ustar.base().space();
    if (s.enumerable()) {
        std::uint64_t examined = 0;
        for (const auto& [x, z] : comparable_pairs(s, order)) {
            ++examined;
            const Point ix = ustar.apply(x);
            const Point iz = ustar.apply(z);
            if (!order.leq(ix, iz)) {
                Witness w = make_witness(x, z, s.distance(x, z), s.distance(ix, iz),
                                         std::nan(""), std::nan(""),
                                         "x <= z but not ustar(x) <= ustar(z)");
                return CheckReport::fail(name, examined, Coverage::exhaustive(), w);
            }
        }
        return CheckReport::pass(name, examined, Coverage::exhaustive());
    }
    return scan_pairs(s, name, 0, 10000,
                      [&](const Point& x, const Point& z, std::uint64_t& examined,
                          std::uint64_t& skipped) -> std::optional<Witness> {
                          (void)skipped;
                          if (!order.leq(x, z)) return std::nullopt;
                          ++examined;
                          const Point ix = ustar.apply(x);
                          const Point iz = ustar.apply(z);
                          if (!order.leq(ix, iz))
                              return make_witness(x, z, s.distance(x, z), s.distance(ix, iz),
                                                  std::nan(""), std::nan(""),
                                                  "x <= z but not ustar(x) <= ustar(z)");
                          return std::nullopt;
                      });
}

namespace {

CheckReport run_condition(const ExpansiveProblem& p, ConditionName which) {
    switch (which) {
        case ConditionName::Phi: return check_phi_expansive(p);
        case ConditionName::Wang:
            return check_wang_expansive(p.u(), p.eta(), p.seed(), p.samples());
        case ConditionName::Min: return check_min_condition(p);
        case ConditionName::Jungck: return check_jungck_condition(p);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown condition");
}

ExpansiveProblem rebuild_at_depth(const ExpansiveProblem& p, int depth) {
    Space grown = Space::shrinking_fractions(depth);
    ExpansiveProblem out(grown, p.u().rebind(grown), p.growth(), p.eta());
    if (p.order()) out.with_order(*p.order());
    if (p.v()) out.with_v(p.v()->rebind(grown));
    out.with_sampling(p.seed(), p.samples());
    return out;
}

}  // namespace

CheckReport search_violation(const ExpansiveProblem& p, ConditionName which,
                             std::uint64_t budget) {
    if (budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
    const Space& s = p.space();

    if (s.kind() == SpaceKind::FiniteTabulated) {
        auto r = run_condition(p, which);
        r.notes.push_back("finite space: one exhaustive scan");
        if (r.passed()) r.notes.push_back("pass-at-budget: no violation found");
        return r;
    }

    if (s.kind() == SpaceKind::ShrinkingFractions) {
        // Deepen the truncation until the budget is spent. The order and the
        // map rules are depth-independent, so the problem regrows cleanly.
        std::uint64_t total = 0;
        int depth = s.depth();
        int round = 0;
        while (true) {
            auto attempt = rebuild_at_depth(p, depth);
            auto r = run_condition(attempt, which);
            total += r.pairs_examined + r.skipped;
            ++round;
            r.notes.push_back("round " + std::to_string(round) + ": depth " +
                              std::to_string(depth) + ", " + std::to_string(total) +
                              " pairs spent of " + std::to_string(budget));
            if (!r.passed()) return r;
            const std::uint64_t next_points = 2ull * depth + 1;
            const std::uint64_t projected = next_points * (next_points + 1) / 2;
            if (total >= budget || total + projected > budget) {
                r.notes.push_back("pass-at-budget: no violation up to depth " +
                                  std::to_string(depth));
                return r;
            }
            depth *= 2;
        }
    }

    // Interval: double the sample count, same seed so each round replays and
    // extends the previous pair stream.
    std::uint64_t total = 0;
    std::uint64_t n = std::min<std::uint64_t>(1000, budget);
    int round = 0;
    while (true) {
        ExpansiveProblem attempt = p;
        attempt.with_sampling(p.seed(), n);
        auto r = run_condition(attempt, which);
        total += n;
        ++round;
        r.notes.push_back("round " + std::to_string(round) + ": " + std::to_string(n) +
                          " samples, " + std::to_string(total) + " spent of " +
                          std::to_string(budget));
        if (!r.passed()) return r;
        if (total >= budget || total + 2 * n > budget) {
            r.notes.push_back("pass-at-budget: no violation in " + std::to_string(total) +
                              " sampled pairs");
            return r;
        }
        n *= 2;
    }
}

ExpansiveProblem wang_as_phi_problem(const Mapping& u, double q, std::uint64_t seed,
                                     std::uint64_t samples) {
    ExpansiveProblem p(u.space(), u, GrowthFunction::exp_t(), q);
    p.with_order(PartialOrder::usual()).with_sampling(seed, samples);
    return p;
}

const char* condition_name(ConditionName c) {
    switch (c) {
        case ConditionName::Phi: return "phi";
        case ConditionName::Wang: return "wang";
        case ConditionName::Min: return "min";
        case ConditionName::Jungck: return "jungck";
    }
    return "unknown";
}

}  // namespace expansive
