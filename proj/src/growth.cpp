#include "expansive/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "expansive/errors.hpp"
#include "expansive/space.hpp"

namespace expansive {

struct GrowthFunction::Impl {
    std::string name;
    std::function<double(double)> log_eval;
};

GrowthFunction GrowthFunction::exp_t() {
    auto impl = std::make_shared<Impl>();
    impl->name = "exp_t";
    impl->log_eval = [](double t) { return t; };
    GrowthFunction f;
    f.impl_ = std::move(impl);
    return f;
}

GrowthFunction GrowthFunction::exp_sqrt() {
    auto impl = std::make_shared<Impl>();
    impl->name = "exp_sqrt";
    impl->log_eval = [](double t) { return std::sqrt(t); };
    GrowthFunction f;
    f.impl_ = std::move(impl);
    return f;
}

GrowthFunction GrowthFunction::example1() {
    auto impl = std::make_shared<Impl>();
    impl->name = "example1";
    impl->log_eval = [](double t) { return std::exp(-1.0 / t); };
    GrowthFunction f;
    f.impl_ = std::move(impl);
    return f;
}

GrowthFunction GrowthFunction::power_shift(double p) {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "power_shift needs p > 0");
    auto impl = std::make_shared<Impl>();
    impl->name = "power_shift(" + std::to_string(p) + ")";
    impl->log_eval = [p](double t) {
        // log(1 + t^p) via u = p log t; for large u, log(1+e^u) = u + log1p(e^-u).
        const double u = p * std::log(t);
        if (u > 36.0) return u + std::log1p(std::exp(-u));
        return std::log1p(std::exp(u));
    };
    GrowthFunction f;
    f.impl_ = std::move(impl);
    return f;
}

GrowthFunction GrowthFunction::tabulated(std::vector<double> ts, std::vector<double> log_values,
                                         std::string name) {
    if (ts.size() != log_values.size() || ts.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "tabulated growth needs >= 2 matched samples");
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (!(ts[i] < ts[i + 1]))
            throw Error(ErrorCode::InvalidArgument, "tabulated abscissae must increase");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->log_eval = [ts = std::move(ts), vs = std::move(log_values)](double t) {
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
        const std::size_t lo = hi - 1;
        const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return vs[lo] + w * (vs[hi] - vs[lo]);
    };
    GrowthFunction f;
    f.impl_ = std::move(impl);
    return f;
}

const std::string& GrowthFunction::name() const { return impl_->name; }

double GrowthFunction::eval_log(double t) const {
    if (!(t > 0.0))
        throw Error(ErrorCode::DomainError, "growth functions are defined for t > 0");
    return impl_->log_eval(t);
}

std::vector<double> default_probe_scales() {
    std::vector<double> out;
    for (int k = 1; k <= 12; ++k) out.push_back(std::pow(10.0, -k));
    return out;
}

std::vector<double> default_r_grid() {
    std::vector<double> out;
    for (int k = 1; k <= 9; ++k) out.push_back(0.1 * k);
    return out;
}

namespace {

// (phi(t) - 1) / t^r computed as expm1(log phi(t)) / t^r; +inf when the log
// value alone would overflow.
double theta3_estimate(const GrowthFunction& f, double t, double r) {
    const double lv = f.eval_log(t);
    if (lv > 700.0) return std::numeric_limits<double>::infinity();
    return std::expm1(lv) / std::pow(t, r);
}

ThetaVerdict theta3_for_r(const std::vector<double>& est, double* limit_out) {
    const std::size_t n = est.size();
    if (n < 3) return ThetaVerdict::Inconclusive;
    const double e1 = est[n - 3];
    const double e2 = est[n - 2];
    const double e3 = est[n - 1];
    if (e1 > 1e6 && e2 > 1e6 && e3 > 1e6) {
        *limit_out = std::numeric_limits<double>::infinity();
        return ThetaVerdict::Pass;
    }
    const double mn = std::min({e1, e2, e3});
    const double mx = std::max({e1, e2, e3});
    if (mn > 0.0 && std::isfinite(mx) && mx <= 1.1 * mn) {
        *limit_out = e3;
        return ThetaVerdict::Pass;
    }
    if (e1 >= e2 && e2 >= e3 && e3 < 1e-9) return ThetaVerdict::Fail;
    return ThetaVerdict::Inconclusive;
}

}  // namespace

ThetaClassification classify_theta(const GrowthFunction& f,
                                   const std::vector<double>& probe_scales,
                                   const std::vector<double>& r_grid) {
    if (probe_scales.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "need at least three probe scales");
    ThetaClassification out;

    // theta1: log phi non-decreasing over the probes plus a wide grid.
    {
        std::vector<double> grid(probe_scales);
        for (int k = -12; k <= 12; ++k) grid.push_back(std::pow(10.0, 0.5 * k));
        std::sort(grid.begin(), grid.end());
        out.theta1 = ThetaVerdict::Pass;
        double prev = -std::numeric_limits<double>::infinity();
        for (double t : grid) {
            const double v = f.eval_log(t);
            if (v < prev - kEqTol) {
                out.theta1 = ThetaVerdict::Fail;
                out.notes.push_back("monotonicity breaks near t = " + std::to_string(t));
                break;
            }
            prev = std::max(prev, v);
        }
    }

    // theta2: log phi must decay toward 0 along the shrinking probes (three
    // orders of magnitude, or below 1e-9 outright) while staying positive at
    // the reference (largest) scale.
    {
        std::vector<double> probes(probe_scales);
        std::sort(probes.begin(), probes.end(), std::greater<double>());
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity();
        for (double t : probes) {
            const double v = f.eval_log(t);
            if (v > prev + kEqTol) monotone = false;
            prev = v;
        }
        const double first = f.eval_log(probes.front());
        const double last = f.eval_log(probes.back());
        if (!monotone) {
            out.theta2 = ThetaVerdict::Inconclusive;
            out.notes.push_back("log phi is not monotone along the probes");
        } else if (first <= 0.0) {
            out.theta2 = ThetaVerdict::Fail;
            out.notes.push_back("log phi vanishes already at the reference scale");
        } else if (last < 1e-9 || last <= 1e-3 * first) {
            out.theta2 = ThetaVerdict::Pass;
        } else {
            out.theta2 = ThetaVerdict::Fail;
            out.notes.push_back("log phi does not decay along the probes");
        }
    }

    // theta3: scan exponents ascending, report the first that passes.
    {
        bool any_fail = false;
        std::vector<double> scales(probe_scales);
        std::sort(scales.begin(), scales.end(), std::greater<double>());  // shrinking t
        for (double r : r_grid) {
            ThetaProbe probe;
            probe.r = r;
            for (double t : scales) probe.estimates.push_back(theta3_estimate(f, t, r));
            double limit = 0.0;
            probe.verdict = theta3_for_r(probe.estimates, &limit);
            out.probes.push_back(probe);
            if (probe.verdict == ThetaVerdict::Pass && out.theta3 != ThetaVerdict::Pass) {
                out.theta3 = ThetaVerdict::Pass;
                out.theta3_r = r;
                out.theta3_limit = limit;
            }
            if (probe.verdict == ThetaVerdict::Fail) any_fail = true;
        }
        if (out.theta3 != ThetaVerdict::Pass)
            out.theta3 = any_fail ? ThetaVerdict::Fail : ThetaVerdict::Inconclusive;
    }

    return out;
}

const char* theta_verdict_name(ThetaVerdict v) {
    switch (v) {
        case ThetaVerdict::Pass: return "pass";
        case ThetaVerdict::Fail: return "fail";
        case ThetaVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace expansive
