#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expansive/growth.hpp"
#include "expansive/mapping.hpp"
#include "expansive/order.hpp"
#include "expansive/point.hpp"
#include "expansive/space.hpp"

namespace expansive {

enum class SolveVerdict {
    Converged,           ///< residual d(x, Ux) <= tol at the final point
    MaxIterations,       ///< budget exhausted without meeting the residual
    StalledNonMonotone,  ///< step distances grew three times in a row
};

struct SolverConfig {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
    std::size_t cauchy_window = 50;
    /// When set (> 1), the trace records s = 1/eta for envelope diagnostics.
    std::optional<double> eta;
};

/// Full iterate history. step_distances[n] = d(points[n], points[n+1]), so
/// it is one shorter than points. residual is d(x_N, U x_N) at the final
/// point of the driving map.
struct IterationTrace {
    Space space;
    std::vector<Point> points;
    std::vector<double> step_distances;
    double residual = 0.0;
    SolveVerdict verdict = SolveVerdict::MaxIterations;
    std::optional<double> s;  ///< 1/eta when the config carried eta
    std::string note;

    std::size_t iterations() const { return step_distances.size(); }
    const Point& final_point() const { return points.back(); }
};

/// x_{n+1} = ustar(x_n). Requires x0 <= ustar(x0) in the given order
/// (StartConditionViolated otherwise). A point whose residual under u is
/// already <= tol converges immediately (trace length 1 for fixed starts).
IterationTrace solve_ordered(const Mapping& u, const RightInverse& ustar, const Point& x0,
                             const PartialOrder& order, const SolverConfig& cfg = {});

/// x_{n+1} = the canonical-least preimage of x_n under u. Builds the right
/// inverse internally (NotSurjective when u is not onto).
IterationTrace solve_preimage(const Mapping& u, const Point& x0, const SolverConfig& cfg = {});

struct CommonSolveResult {
    IterationTrace trace;          ///< the y-sequence y_{n+1} = U x_{n+1} = V x_n
    std::optional<Point> common;   ///< set on Converged: d(Uu,u), d(Vu,u) <= tol
};

/// Alternating iteration for a pair with V(M) contained in U(M): from x_n
/// take y_{n+1} = V x_n and pick x_{n+1} with U x_{n+1} = y_{n+1}. Resolved
/// candidates must be fixed by both maps before Converged is declared; a
/// coincidence that breaks weak compatibility throws CoincidenceNotFixed.
CommonSolveResult solve_common(const Mapping& u, const Mapping& v, const Point& x0,
                               const SolverConfig& cfg = {});

struct CauchyDiagnostics {
    double tail_diameter = 0.0;      ///< diameter of the last `window` points
    double previous_diameter = 0.0;  ///< diameter of the window before it
    double first_step = 0.0;
    double last_step = 0.0;
    bool steps_vanish = false;       ///< last_step <= 1e-3 * first_step
    bool diameter_decays = false;    ///< tail < 0.5 * previous
    /// Steps vanish while the tail diameter stagnates: the iterates walk
    /// without clustering, so no limit is being approached.
    bool not_cauchy_like = false;
};

/// Inspects the tail of a trace; throws TraceTooShort when the trace has
/// fewer than `window` points.
CauchyDiagnostics cauchy_diagnostics(const IterationTrace& trace, std::size_t window = 50);

/// All points with d(x, Ux) <= tol. Enumerable spaces are scanned
/// exhaustively; intervals on a uniform grid with adjacent hits merged
/// (representative = smallest residual, ties to the left).
std::vector<Point> enumerate_fixed_points(const Mapping& u, double tol,
                                          std::size_t grid = 100000);

/// Compares log phi(d_n) against the geometric envelope s^n * log phi(d_0)
/// from the convergence argument. Entries stop at the first zero step.
struct EnvelopeReport {
    std::vector<double> predicted_log;
    std::vector<double> realized_log;
    std::size_t satisfied = 0;  ///< realized <= predicted + kEqTol
    std::size_t total = 0;
};

EnvelopeReport geometric_envelope(const IterationTrace& trace, const GrowthFunction& phi);

/// CSV columns: n, label, coord, step_distance (the step leading into row
/// n; blank for n = 0).
void write_trace_csv(const IterationTrace& trace, std::ostream& out);

const char* solve_verdict_name(SolveVerdict v);

}  // namespace expansive
