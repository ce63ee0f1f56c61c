#include "expansive/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "expansive/errors.hpp"

namespace expansive {

namespace {

// Canonical-least preimage of y under u, defined wherever y has one (u need
// not be onto). Same tie-break as build_right_inverse: the earliest point in
// canonical enumeration wins; interval rules invert directly.
Point least_preimage(const Mapping& u, const Point& y) {
    const Space& s = u.space();
    switch (u.kind()) {
        case MappingKind::Identity:
            return y;
        case MappingKind::FiniteTable: {
            for (const auto& x : s.points())
                if (u.apply(x) == y) return x;
            throw Error(ErrorCode::ContainmentViolated,
                        "no preimage of " + s.label(y) + " under " + u.name());
        }
        case MappingKind::Example1Shift: {
            if (y.is_free())
                throw Error(ErrorCode::DomainError, "free point on the fraction space");
            return y.key() == 0 ? s.fraction_point(0) : s.fraction_point(y.key() + 1);
        }
        case MappingKind::Linear: {
            const double c = u.slope();
            if (c == 0.0)
                throw Error(ErrorCode::ContainmentViolated,
                            "constant map: no usable preimages");
            const double x = y.coord() / c;
            if (x < s.interval_lo() - kEqTol || x > s.interval_hi() + kEqTol)
                throw Error(ErrorCode::ContainmentViolated,
                            "preimage of " + s.label(y) + " falls outside the interval");
            return Point::free_point(std::clamp(x, s.interval_lo(), s.interval_hi()));
        }
        case MappingKind::Custom: {
            if (!u.monotone())
                throw Error(ErrorCode::InvalidArgument,
                            "preimages need a monotone interval rule");
            const double lo = s.interval_lo();
            const double hi = s.interval_hi();
            double a = lo, b = hi;
            double fa = u.apply(Point::free_point(a)).coord() - y.coord();
            double fb = u.apply(Point::free_point(b)).coord() - y.coord();
            if (fa == 0.0) return Point::free_point(a);
            if (fb == 0.0) return Point::free_point(b);
            if ((fa < 0.0) == (fb < 0.0))
                throw Error(ErrorCode::ContainmentViolated,
                            "no preimage of " + s.label(y) + " inside the interval");
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = u.apply(Point::free_point(mid)).coord() - y.coord();
                if (fm == 0.0) return Point::free_point(mid);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            return Point::free_point(0.5 * (a + b));
        }
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown mapping kind");
}

// Shared single-map iteration driver: x_{n+1} = step(x_n), convergence means
// d(x, u(x)) <= tol.
IterationTrace iterate(const Mapping& u, const Point& x0, const SolverConfig& cfg,
                       const std::function<Point(const Point&)>& step_fn) {
    const Space& s = u.space();
    IterationTrace t;
    t.space = s;
    if (cfg.eta && *cfg.eta > 1.0) t.s = 1.0 / *cfg.eta;

    Point x = x0;
    t.points.push_back(x);
    double prev_step = std::nan("");
    int growing = 0;
    for (std::size_t n = 0;; ++n) {
        const double resid = s.distance(x, u.apply(x));
        if (resid <= cfg.tol) {
            t.residual = resid;
            t.verdict = SolveVerdict::Converged;
            if (n == 0) t.note = "already a fixed point at the start";
            return t;
        }
        if (n >= cfg.max_iter) {
            t.residual = resid;
            t.verdict = SolveVerdict::MaxIterations;
            t.note = "iteration budget exhausted";
            return t;
        }
        const Point xn = step_fn(x);
        const double step = s.distance(x, xn);
        t.points.push_back(xn);
        t.step_distances.push_back(step);
        if (!std::isnan(prev_step) && step > prev_step + kEqTol)
            ++growing;
        else
            growing = 0;
        x = xn;
        if (growing >= 3) {
            t.residual = s.distance(x, u.apply(x));
            t.verdict = SolveVerdict::StalledNonMonotone;
            t.note = "step distances grew three times in a row";
            return t;
        }
        if (step <= cfg.tol) {
            // Steps vanished; accept only if the residual agrees.
            const double r2 = s.distance(x, u.apply(x));
            t.residual = r2;
            if (r2 <= 10.0 * cfg.tol) {
                t.verdict = SolveVerdict::Converged;
                t.note = "steps vanished; residual within 10x tol";
            } else {
                t.verdict = SolveVerdict::MaxIterations;
                t.note = "steps vanished but the residual stayed large";
            }
            return t;
        }
        prev_step = step;
    }
}

double window_diameter(const Space& s, const std::vector<Point>& pts, std::size_t begin,
                       std::size_t end) {
    double diam = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = i + 1; j < end; ++j)
            diam = std::max(diam, s.distance(pts[i], pts[j]));
    return diam;
}

}  // namespace

IterationTrace solve_ordered(const Mapping& u, const RightInverse& ustar, const Point& x0,
                             const PartialOrder& order, const SolverConfig& cfg) {
    if (!order.leq(x0, ustar.apply(x0)))
        throw Error(ErrorCode::StartConditionViolated,
                    "the start point does not precede its image under the right inverse");
    return iterate(u, x0, cfg, [&ustar](const Point& x) { return ustar.apply(x); });
}

IterationTrace solve_preimage(const Mapping& u, const Point& x0, const SolverConfig& cfg) {
    const RightInverse inv = build_right_inverse(u);
    return iterate(u, x0, cfg, [&inv](const Point& x) { return inv.apply(x); });
}

CommonSolveResult solve_common(const Mapping& u, const Mapping& v, const Point& x0,
                               const SolverConfig& cfg) {
    const Space& s = u.space();
    const CheckReport containment = verify_containment(u, v);
    if (!containment.passed())
        throw Error(ErrorCode::ContainmentViolated,
                    "V(M) is not contained in U(M); the alternating iteration is undefined");

    CommonSolveResult out;
    IterationTrace& t = out.trace;
    t.space = s;
    if (cfg.eta && *cfg.eta > 1.0) t.s = 1.0 / *cfg.eta;

    auto residuals_at = [&](const Point& c) {
        return std::max(s.distance(u.apply(c), c), s.distance(v.apply(c), c));
    };

    Point x = x0;
    double prev_step = std::nan("");
    int growing = 0;
    for (std::size_t n = 0; n <= cfg.max_iter; ++n) {
        const Point y = v.apply(x);  // y_{n+1} = V x_n = U x_{n+1}
        double step = std::nan("");
        if (!t.points.empty()) {
            step = s.distance(t.points.back(), y);
            t.step_distances.push_back(step);
        }
        t.points.push_back(y);

        if (!std::isnan(step) && !std::isnan(prev_step) && step > prev_step + kEqTol)
            ++growing;
        else if (!std::isnan(step))
            growing = 0;
        if (growing >= 3) {
            t.residual = residuals_at(y);
            t.verdict = SolveVerdict::StalledNonMonotone;
            t.note = "step distances grew three times in a row";
            return out;
        }

        if (!std::isnan(step) && step <= cfg.tol) {
            // The y-sequence settled at w; resolve the candidate points.
            const Point w = y;
            const Point p = least_preimage(u, w);
            for (const Point& cand : {w, p}) {
                const double r = residuals_at(cand);
                if (r <= cfg.tol) {
                    t.residual = r;
                    t.verdict = SolveVerdict::Converged;
                    out.common = cand;
                    return out;
                }
            }
            // p satisfies Up = w; if also Vp = w we found a coincidence that
            // is not a common fixed point. Weak compatibility failing there
            // is the mathematical obstruction, surfaced as an error.
            if (s.distance(u.apply(p), v.apply(p)) <= 10.0 * cfg.tol) {
                const double commute =
                    s.distance(u.apply(v.apply(p)), v.apply(u.apply(p)));
                if (commute > 10.0 * cfg.tol)
                    throw Error(ErrorCode::CoincidenceNotFixed,
                                "coincidence point found but the maps do not commute "
                                "there; weak compatibility fails");
            }
            // Otherwise keep iterating toward a tighter limit.
        }

        if (!std::isnan(step)) prev_step = step;
        x = least_preimage(u, y);
    }
    t.residual = residuals_at(t.points.back());
    t.verdict = SolveVerdict::MaxIterations;
    t.note = "iteration budget exhausted";
    return out;
}

CauchyDiagnostics cauchy_diagnostics(const IterationTrace& trace, std::size_t window) {
    if (window < 2) throw Error(ErrorCode::InvalidArgument, "window must be >= 2");
    const std::size_t n = trace.points.size();
    if (n < window)
        throw Error(ErrorCode::TraceTooShort, "trace has " + std::to_string(n) +
                                                  " points, window needs " +
                                                  std::to_string(window));
    CauchyDiagnostics d;
    const Space& s = trace.space;
    const std::size_t tail_begin = n - window;
    d.tail_diameter = window_diameter(s, trace.points, tail_begin, n);
    const std::size_t prev_begin = tail_begin >= window ? tail_begin - window : 0;
    d.previous_diameter = prev_begin < tail_begin
                              ? window_diameter(s, trace.points, prev_begin, tail_begin)
                              : d.tail_diameter;
    if (!trace.step_distances.empty()) {
        d.first_step = trace.step_distances.front();
        d.last_step = trace.step_distances.back();
    }
    d.steps_vanish = d.last_step <= 1e-3 * d.first_step;
    d.diameter_decays = d.tail_diameter < 0.5 * d.previous_diameter;
    d.not_cauchy_like = d.steps_vanish && d.tail_diameter > kEqTol && !d.diameter_decays;
    return d;
}

std::vector<Point> enumerate_fixed_points(const Mapping& u, double tol, std::size_t grid) {
    const Space& s = u.space();
    std::vector<Point> out;
    if (s.enumerable()) {
        for (const auto& x : s.points())
            if (s.distance(x, u.apply(x)) <= tol) out.push_back(x);
        return out;
    }
    const double lo = s.interval_lo();
    const double hi = s.interval_hi();
    const double step = (hi - lo) / static_cast<double>(grid);
    // Cluster adjacent grid hits; keep the tightest residual per cluster.
    bool in_cluster = false;
    double best_x = 0.0, best_r = 0.0;
    for (std::size_t i = 0; i <= grid; ++i) {
        const double x = lo + step * static_cast<double>(i);
        const Point px = Point::free_point(x);
        const double r = s.distance(px, u.apply(px));
        if (r <= tol) {
            if (!in_cluster || r < best_r) {
                best_x = x;
                best_r = r;
            }
            in_cluster = true;
        } else if (in_cluster) {
            out.push_back(Point::free_point(best_x));
            in_cluster = false;
        }
    }
    if (in_cluster) out.push_back(Point::free_point(best_x));
    return out;
}

EnvelopeReport geometric_envelope(const IterationTrace& trace, const GrowthFunction& phi) {
    EnvelopeReport rep;
    if (!trace.s || trace.step_distances.empty()) return rep;
    const double s = *trace.s;
    const double d0 = trace.step_distances.front();
    if (!(d0 > 0.0)) return rep;
    const double base = phi.eval_log(d0);
    double factor = 1.0;
    for (double dn : trace.step_distances) {
        if (!(dn > 0.0)) break;
        rep.predicted_log.push_back(factor * base);
        rep.realized_log.push_back(phi.eval_log(dn));
        factor *= s;
    }
    rep.total = rep.predicted_log.size();
    for (std::size_t i = 0; i < rep.total; ++i)
        if (rep.realized_log[i] <= rep.predicted_log[i] + kEqTol) ++rep.satisfied;
    return rep;
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
    out << "n,label,coord,step_distance\n";
    char buf[64];
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        const Point& p = trace.points[n];
        out << n << ',' << trace.space.label(p) << ',';
        if (p.has_coord()) {
            std::snprintf(buf, sizeof(buf), "%.17g", p.coord());
            out << buf;
        }
        out << ',';
        if (n > 0) {
            std::snprintf(buf, sizeof(buf), "%.17g", trace.step_distances[n - 1]);
            out << buf;
        }
        out << '\n';
    }
}

const char* solve_verdict_name(SolveVerdict v) {
    switch (v) {
        case SolveVerdict::Converged: return "converged";
        case SolveVerdict::MaxIterations: return "max_iterations";
        case SolveVerdict::StalledNonMonotone: return "stalled_non_monotone";
    }
    return "unknown";
}

}  // namespace expansive
