#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace expansive {

/// A non-decreasing growth function phi: (0,inf) -> (1,inf), held and
/// evaluated exclusively in log domain: log phi(t) > 0. phi itself is never
/// exponentiated; e^t would overflow and e^{e^{-1/t}} collapses to 1.0 in
/// linear domain long before the checks care.
///
/// Built-ins:
///   exp_t       phi(t) = e^t            log phi(t) = t
///   exp_sqrt    phi(t) = e^{sqrt(t)}    log phi(t) = sqrt(t)
///   example1    phi(t) = e^{e^{-1/t}}   log phi(t) = e^{-1/t}
///   power_shift phi(t) = 1 + t^p        log phi(t) = log1p(t^p)
class GrowthFunction {
public:
    static GrowthFunction exp_t();
    static GrowthFunction exp_sqrt();
    static GrowthFunction example1();
    static GrowthFunction power_shift(double p);

    /// Escape hatch: piecewise-linear interpolation of log phi over a grid
    /// of (t, log phi(t)) samples, clamped outside the grid.
    static GrowthFunction tabulated(std::vector<double> ts, std::vector<double> log_values,
                                    std::string name = "tabulated");

    const std::string& name() const;

    /// log phi(t). Throws DomainError for t <= 0.
    double eval_log(double t) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Convenience mirroring the operation signature.
inline double eval_log(const GrowthFunction& f, double t) { return f.eval_log(t); }

enum class ThetaVerdict { Pass, Fail, Inconclusive };

struct ThetaProbe {
    double r;
    std::vector<double> estimates;  // (phi(t)-1)/t^r along the probe scales
    ThetaVerdict verdict;
};

/// Numeric classification against the three theta-class conditions:
///   theta1  non-decreasing (grid scan)
///   theta2  phi(t_n) -> 1 iff t_n -> 0+
///   theta3  exists r in (0,1) with lim (phi(t)-1)/t^r in (0,inf]
struct ThetaClassification {
    ThetaVerdict theta1 = ThetaVerdict::Inconclusive;
    ThetaVerdict theta2 = ThetaVerdict::Inconclusive;
    ThetaVerdict theta3 = ThetaVerdict::Inconclusive;
    double theta3_r = 0.0;      // detected exponent when theta3 passes
    double theta3_limit = 0.0;  // limit estimate at that exponent (inf allowed)
    std::vector<ThetaProbe> probes;
    std::vector<std::string> notes;

    bool in_theta_class() const {
        return theta1 == ThetaVerdict::Pass && theta2 == ThetaVerdict::Pass &&
               theta3 == ThetaVerdict::Pass;
    }
};

std::vector<double> default_probe_scales();  // 1e-1 down to 1e-12
std::vector<double> default_r_grid();        // 0.1 .. 0.9

/// Classify f against theta1..theta3 on the given probes. Deterministic.
///
/// theta3 decision rule per exponent r (the limit has no numeric recipe, so
/// this documented heuristic stands in): PASS when the last three estimates
/// are mutually within 10% (finite limit) or all exceed 1e6 (limit +inf);
/// FAIL when they decrease monotonically to below 1e-9; else INCONCLUSIVE.
/// Overall: PASS if any r passes, FAIL if none passes and some r fails
/// decisively, INCONCLUSIVE otherwise.
ThetaClassification classify_theta(const GrowthFunction& f,
                                   const std::vector<double>& probe_scales = default_probe_scales(),
                                   const std::vector<double>& r_grid = default_r_grid());

const char* theta_verdict_name(ThetaVerdict v);

}  // namespace expansive
