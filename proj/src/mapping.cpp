#include "expansive/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expansive/errors.hpp"

namespace expansive {

struct Mapping::Impl {
    MappingKind kind = MappingKind::Identity;
    std::string name;
    Space space;
    std::vector<std::int64_t> table;     // FiniteTable: image key per position
    double slope = 0.0;                  // Linear
    std::function<double(double)> fn;    // Custom
    bool monotone = true;
};

Mapping::Mapping(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Mapping Mapping::finite_table(Space space, std::vector<std::int64_t> image_keys,
                              std::string name) {
    if (space.kind() != SpaceKind::FiniteTabulated)
        throw Error(ErrorCode::UnsupportedSpace, "table mappings need a tabulated space");
    const auto n = static_cast<std::int64_t>(space.size());
    if (static_cast<std::int64_t>(image_keys.size()) != n)
        throw Error(ErrorCode::InvalidArgument, "image table size does not match the space");
    for (auto k : image_keys)
        if (k < 0 || k >= n)
            throw Error(ErrorCode::InvalidArgument, "image key out of range");
    auto impl = std::make_shared<Impl>();
    impl->kind = MappingKind::FiniteTable;
    impl->name = std::move(name);
    impl->space = std::move(space);
    impl->table = std::move(image_keys);
    return Mapping(std::move(impl));
}

Mapping Mapping::example1_shift(Space space) {
    if (space.kind() != SpaceKind::ShrinkingFractions)
        throw Error(ErrorCode::UnsupportedSpace, "the shift map lives on shrinking fractions");
    auto impl = std::make_shared<Impl>();
    impl->kind = MappingKind::Example1Shift;
    impl->name = "example1_shift";
    impl->space = std::move(space);
    return Mapping(std::move(impl));
}

Mapping Mapping::linear(Space space, double slope) {
    if (space.kind() != SpaceKind::RealInterval)
        throw Error(ErrorCode::UnsupportedSpace, "linear mappings need an interval space");
    auto impl = std::make_shared<Impl>();
    impl->kind = MappingKind::Linear;
    impl->name = "linear(" + std::to_string(slope) + ")";
    impl->space = std::move(space);
    impl->slope = slope;
    return Mapping(std::move(impl));
}

Mapping Mapping::custom(Space space, std::string name, std::function<double(double)> fn,
                        bool monotone) {
    if (space.kind() != SpaceKind::RealInterval)
        throw Error(ErrorCode::UnsupportedSpace, "custom mappings need an interval space");
    auto impl = std::make_shared<Impl>();
    impl->kind = MappingKind::Custom;
    impl->name = std::move(name);
    impl->space = std::move(space);
    impl->fn = std::move(fn);
    impl->monotone = monotone;
    return Mapping(std::move(impl));
}

Mapping Mapping::identity(Space space) {
    auto impl = std::make_shared<Impl>();
    impl->kind = MappingKind::Identity;
    impl->name = "identity";
    impl->space = std::move(space);
    return Mapping(std::move(impl));
}

MappingKind Mapping::kind() const { return impl_->kind; }
const std::string& Mapping::name() const { return impl_->name; }
const Space& Mapping::space() const { return impl_->space; }
double Mapping::slope() const {
    if (impl_->kind != MappingKind::Linear)
        throw Error(ErrorCode::UnsupportedSpace, "slope is a linear-mapping property");
    return impl_->slope;
}
bool Mapping::monotone() const { return impl_->monotone; }

Point Mapping::apply(const Point& x) const {
    const Space& s = impl_->space;
    switch (impl_->kind) {
        case MappingKind::FiniteTable: {
            const std::size_t pos = s.position(x);
            const std::int64_t img = impl_->table[pos];
            return s.points()[static_cast<std::size_t>(img)];
        }
        case MappingKind::Example1Shift: {
            if (x.is_free())
                throw Error(ErrorCode::DomainError, "free point on the fraction space");
            const std::int64_t r = x.key();
            // 0 -> 0, 1 -> 1, 1/r -> 1/(r-1); valid beyond the truncation.
            if (r <= 1) return s.fraction_point(r);
            return s.fraction_point(r - 1);
        }
        case MappingKind::Linear:
            if (!x.has_coord())
                throw Error(ErrorCode::DomainError, "interval point without coordinate");
            return Point::free_point(impl_->slope * x.coord());
        case MappingKind::Custom:
            if (!x.has_coord())
                throw Error(ErrorCode::DomainError, "interval point without coordinate");
            return Point::free_point(impl_->fn(x.coord()));
        case MappingKind::Identity:
            return x;
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown mapping kind");
}

Mapping Mapping::rebind(Space space) const {
    switch (impl_->kind) {
        case MappingKind::FiniteTable:
            if (space.kind() != SpaceKind::FiniteTabulated || space.size() != impl_->space.size())
                throw Error(ErrorCode::UnsupportedSpace,
                            "table mappings only rebind to a same-size tabulated space");
            return finite_table(std::move(space), impl_->table, impl_->name);
        case MappingKind::Example1Shift:
            return example1_shift(std::move(space));
        case MappingKind::Linear:
            return linear(std::move(space), impl_->slope);
        case MappingKind::Custom:
            return custom(std::move(space), impl_->name, impl_->fn, impl_->monotone);
        case MappingKind::Identity:
            return identity(std::move(space));
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown mapping kind");
}

RightInverse::RightInverse(Mapping base, std::function<Point(const Point&)> rule,
                           std::vector<std::int64_t> table)
    : base_(std::move(base)), rule_(std::move(rule)), table_(std::move(table)) {}

namespace {

// Bisection solve fn(x) = y over [lo,hi] for monotone fn. Returns NaN when
// y lies outside the bracket values.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double y) {
    double flo = fn(lo) - y;
    double fhi = fn(hi) - y;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) return std::nan("");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(mid) - y;
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(hi)))
            break;
    }
    return 0.5 * (lo + hi);
}

Witness point_witness(const Point& x, std::string detail) {
    Witness w;
    w.x = x;
    w.z = x;
    w.detail = std::move(detail);
    return w;
}

}  // namespace

CheckReport verify_surjective(const Mapping& u) {
    const std::string name = "surjective";
    const Space& s = u.space();
    switch (u.kind()) {
        case MappingKind::Identity: {
            const std::uint64_t n = s.enumerable() ? s.size() : 1;
            auto r = CheckReport::pass(name, n, Coverage::exhaustive());
            r.notes.push_back("identity: every point is its own preimage");
            return r;
        }
        case MappingKind::FiniteTable: {
            const auto& pts = s.points();
            std::vector<bool> covered(pts.size(), false);
            for (const auto& x : pts)
                covered[s.position(u.apply(x))] = true;
            std::uint64_t examined = pts.size();
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (!covered[i])
                    return CheckReport::fail(name, examined, Coverage::exhaustive(),
                                             point_witness(pts[i], "point has no preimage"));
            return CheckReport::pass(name, examined, Coverage::exhaustive());
        }
        case MappingKind::Example1Shift: {
            // Rule inverse: 0 <- 0, 1/r <- 1/(r+1); verified point by point.
            std::uint64_t examined = 0;
            for (const auto& y : s.points()) {
                const Point pre =
                    y.key() == 0 ? s.fraction_point(0) : s.fraction_point(y.key() + 1);
                ++examined;
                if (u.apply(pre) != y)
                    return CheckReport::fail(name, examined, Coverage::exhaustive(),
                                             point_witness(y, "rule preimage mismatch"));
            }
            auto r = CheckReport::pass(name, examined, Coverage::exhaustive());
            r.notes.push_back(
                "preimage of the deepest enumerated point lies just beyond the "
                "truncation depth; the rule covers it");
            return r;
        }
        case MappingKind::Linear: {
            const double c = u.slope();
            const double lo = s.interval_lo();
            const double hi = s.interval_hi();
            if (c == 0.0)
                return CheckReport::fail(
                    name, 1, Coverage::exhaustive(),
                    point_witness(Point::free_point(hi != 0.0 ? hi : lo),
                                  "constant image cannot cover the interval"));
            const double img_lo = std::min(c * lo, c * hi);
            const double img_hi = std::max(c * lo, c * hi);
            if (img_lo <= lo + kEqTol && img_hi >= hi - kEqTol) {
                auto r = CheckReport::pass(name, 1, Coverage::exhaustive());
                r.notes.push_back("analytic: the image interval covers the space");
                return r;
            }
            const double uncovered = img_hi < hi - kEqTol ? hi : lo;
            return CheckReport::fail(
                name, 1, Coverage::exhaustive(),
                point_witness(Point::free_point(uncovered),
                              "preimage coordinate falls outside the interval"));
        }
        case MappingKind::Custom: {
            const double lo = s.interval_lo();
            const double hi = s.interval_hi();
            const std::size_t grid = 1000;
            std::uint64_t examined = 0;
            for (std::size_t i = 0; i <= grid; ++i) {
                const double y = lo + (hi - lo) * static_cast<double>(i) / grid;
                ++examined;
                bool ok = false;
                if (u.monotone()) {
                    const double x = bisect(
                        [&u](double t) { return u.apply(Point::free_point(t)).coord(); }, lo,
                        hi, y);
                    ok = !std::isnan(x) &&
                         std::fabs(u.apply(Point::free_point(x)).coord() - y) <= 1e-9;
                } else {
                    for (std::size_t j = 0; j <= grid && !ok; ++j) {
                        const double x = lo + (hi - lo) * static_cast<double>(j) / grid;
                        ok = std::fabs(u.apply(Point::free_point(x)).coord() - y) <= 1e-6;
                    }
                }
                if (!ok)
                    return CheckReport::fail(name, examined, Coverage::exhaustive(),
                                             point_witness(Point::free_point(y),
                                                           "no grid preimage found"));
            }
            auto r = CheckReport::pass(name, examined, Coverage::exhaustive());
            r.notes.push_back("advisory: image coverage tested on a grid of targets");
            return r;
        }
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown mapping kind");
}

RightInverse build_right_inverse(const Mapping& u) {
    const CheckReport surj = verify_surjective(u);
    if (!surj.passed()) {
        std::string at = surj.witness ? u.space().label(surj.witness->x) : "?";
        throw Error(ErrorCode::NotSurjective, "mapping " + u.name() +
                                                  " misses the point " + at +
                                                  "; no right inverse exists");
    }
    const Space s = u.space();
    switch (u.kind()) {
        case MappingKind::Identity: {
            std::vector<std::int64_t> table;
            if (s.enumerable())
                for (const auto& p : s.points()) table.push_back(p.key());
            return RightInverse(u, [](const Point& x) { return x; }, std::move(table));
        }
        case MappingKind::FiniteTable: {
            const auto& pts = s.points();
            // Least canonical preimage per target position.
            std::vector<std::int64_t> sel(pts.size(), -1);
            for (std::size_t p = 0; p < pts.size(); ++p) {
                const std::size_t target = s.position(u.apply(pts[p]));
                if (sel[target] < 0) sel[target] = pts[p].key();
            }
            auto rule = [s, sel](const Point& y) {
                return s.points()[static_cast<std::size_t>(sel[s.position(y)])];
            };
            return RightInverse(u, std::move(rule), std::move(sel));
        }
        case MappingKind::Example1Shift: {
            // Least preimage: 0 -> 0, 1/r -> 1/(r+1). For the point 1 the
            // candidates are 1 and 1/2; 1/2 comes first in ascending order.
            auto rule = [s](const Point& y) {
                if (y.is_free())
                    throw Error(ErrorCode::DomainError, "free point on the fraction space");
                return y.key() == 0 ? s.fraction_point(0) : s.fraction_point(y.key() + 1);
            };
            std::vector<std::int64_t> table;
            for (const auto& y : s.points()) table.push_back(y.key() == 0 ? 0 : y.key() + 1);
            return RightInverse(u, std::move(rule), std::move(table));
        }
        case MappingKind::Linear: {
            const double c = u.slope();
            auto rule = [c](const Point& y) { return Point::free_point(y.coord() / c); };
            return RightInverse(u, std::move(rule), {});
        }
        case MappingKind::Custom: {
            if (!u.monotone())
                throw Error(ErrorCode::InvalidArgument,
                            "right inverse needs a monotone interval rule");
            const double lo = s.interval_lo();
            const double hi = s.interval_hi();
            auto rule = [u, lo, hi](const Point& y) {
                const double x = bisect(
                    [&u](double t) { return u.apply(Point::free_point(t)).coord(); }, lo, hi,
                    y.coord());
                if (std::isnan(x))
                    throw Error(ErrorCode::DomainError,
                                "no preimage inside the interval for " +
                                    std::to_string(y.coord()));
                return Point::free_point(x);
            };
            return RightInverse(u, std::move(rule), {});
        }
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown mapping kind");
}

std::vector<Point> coincidence_points(const Mapping& u, const Mapping& v, std::size_t grid) {
    const Space& s = u.space();
    std::vector<Point> out;
    if (s.enumerable()) {
        for (const auto& x : s.points())
            if (s.distance(u.apply(x), v.apply(x)) <= kEqTol) out.push_back(x);
        return out;
    }

    const double lo = s.interval_lo();
    const double hi = s.interval_hi();
    const double step = (hi - lo) / static_cast<double>(grid);
    auto gap = [&](double x) {
        return u.apply(Point::free_point(x)).coord() - v.apply(Point::free_point(x)).coord();
    };
    struct Candidate {
        double x;
        double g;
    };
    std::vector<Candidate> cands;
    double prev_gap = gap(lo);
    if (std::fabs(prev_gap) <= kEqTol) cands.push_back({lo, std::fabs(prev_gap)});
    for (std::size_t i = 1; i <= grid; ++i) {
        const double x = lo + step * static_cast<double>(i);
        const double g = gap(x);
        if (std::fabs(g) <= kEqTol) {
            cands.push_back({x, std::fabs(g)});
        } else if ((prev_gap < 0.0) != (g < 0.0) && std::fabs(prev_gap) > kEqTol) {
            // Sign change inside the cell: refine by bisection on the gap.
            double a = x - step, b = x, fa = prev_gap;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = gap(mid);
                if (fm == 0.0 || b - a <= std::numeric_limits<double>::epsilon()) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            const double root = 0.5 * (a + b);
            const double rg = std::fabs(gap(root));
            if (rg <= kEqTol) cands.push_back({root, rg});
        }
        prev_gap = g;
    }

    // Merge candidates closer than two grid cells; keep the tightest.
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.x < b.x;
    });
    for (std::size_t i = 0; i < cands.size();) {
        std::size_t j = i;
        Candidate best = cands[i];
        while (j + 1 < cands.size() && cands[j + 1].x - cands[j].x <= 2.0 * step) {
            ++j;
            if (cands[j].g < best.g) best = cands[j];
        }
        out.push_back(Point::free_point(best.x));
        i = j + 1;
    }
    return out;
}

CheckReport verify_weak_compatibility(const Mapping& u, const Mapping& v) {
    const std::string name = "weak_compatibility";
    const Space& s = u.space();
    const auto coin = coincidence_points(u, v);
    std::uint64_t examined = 0;
    for (const auto& z : coin) {
        ++examined;
        const Point uv = u.apply(v.apply(z));
        const Point vu = v.apply(u.apply(z));
        const double d = s.distance(uv, vu);
        if (d > kEqTol) {
            Witness w;
            w.x = z;
            w.z = z;
            w.d_img = d;
            w.detail = "maps do not commute at a coincidence point";
            return CheckReport::fail(name, examined, Coverage::exhaustive(), w);
        }
    }
    auto r = CheckReport::pass(name, examined, Coverage::exhaustive());
    if (coin.empty()) r.notes.push_back("no coincidence points: condition holds vacuously");
    return r;
}

CheckReport verify_containment(const Mapping& u, const Mapping& v) {
    const std::string name = "containment";
    const Space& s = u.space();
    if (verify_surjective(u).passed()) {
        auto r = CheckReport::pass(name, 1, Coverage::exhaustive());
        r.notes.push_back("U is onto, so V(M) is trivially contained in U(M)");
        return r;
    }
    if (s.enumerable()) {
        const auto& pts = s.points();
        std::vector<bool> in_u(pts.size(), false);
        for (const auto& x : pts) in_u[s.position(u.apply(x))] = true;
        std::uint64_t examined = 0;
        for (const auto& x : pts) {
            ++examined;
            const Point vx = v.apply(x);
            if (!in_u[s.position(vx)]) {
                Witness w;
                w.x = x;
                w.z = vx;
                w.detail = "Vx lies outside the image of U";
                return CheckReport::fail(name, examined, Coverage::exhaustive(), w);
            }
        }
        return CheckReport::pass(name, examined, Coverage::exhaustive());
    }
    if (u.kind() == MappingKind::Linear && v.kind() == MappingKind::Linear) {
        const double lo = s.interval_lo(), hi = s.interval_hi();
        const double ulo = std::min(u.slope() * lo, u.slope() * hi);
        const double uhi = std::max(u.slope() * lo, u.slope() * hi);
        const double vlo = std::min(v.slope() * lo, v.slope() * hi);
        const double vhi = std::max(v.slope() * lo, v.slope() * hi);
        if (vlo >= ulo - kEqTol && vhi <= uhi + kEqTol) {
            auto r = CheckReport::pass(name, 1, Coverage::exhaustive());
            r.notes.push_back("analytic: the V image interval sits inside the U image");
            return r;
        }
        Witness w;
        w.x = Point::free_point(vhi > uhi + kEqTol ? vhi : vlo);
        w.z = w.x;
        w.detail = "V image endpoint escapes the U image";
        return CheckReport::fail(name, 1, Coverage::exhaustive(), w);
    }
    // Grid advisory: V values must fall inside the observed U image range.
    const double lo = s.interval_lo(), hi = s.interval_hi();
    const std::size_t grid = 1000;
    double ulo = std::numeric_limits<double>::infinity(), uhi = -ulo;
    for (std::size_t i = 0; i <= grid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / grid;
        const double ux = u.apply(Point::free_point(x)).coord();
        ulo = std::min(ulo, ux);
        uhi = std::max(uhi, ux);
    }
    std::uint64_t examined = 0;
    for (std::size_t i = 0; i <= grid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / grid;
        ++examined;
        const double vx = v.apply(Point::free_point(x)).coord();
        if (vx < ulo - 1e-9 || vx > uhi + 1e-9) {
            Witness w;
            w.x = Point::free_point(x);
            w.z = Point::free_point(vx);
            w.detail = "Vx falls outside the sampled U image range";
            return CheckReport::fail(name, examined, Coverage::exhaustive(), w);
        }
    }
    auto r = CheckReport::pass(name, examined, Coverage::exhaustive());
    r.notes.push_back("advisory: containment tested on a grid image range");
    return r;
}

const char* mapping_kind_name(MappingKind k) {
    switch (k) {
        case MappingKind::FiniteTable: return "table";
        case MappingKind::Example1Shift: return "example1_shift";
        case MappingKind::Linear: return "linear";
        case MappingKind::Custom: return "custom";
        case MappingKind::Identity: return "identity";
    }
    return "unknown";
}

}  // namespace expansive
