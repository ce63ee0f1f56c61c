#include "expansive/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "expansive/errors.hpp"

namespace expansive {

namespace {

std::string format_coord(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

struct Space::Impl {
    SpaceKind kind = SpaceKind::FiniteTabulated;

    // FiniteTabulated
    std::vector<std::string> labels;
    std::vector<std::vector<double>> dist;
    std::vector<double> coords;

    // ShrinkingFractions
    int depth = 0;

    // RealInterval
    double lo = 0.0;
    double hi = 0.0;

    std::vector<Point> points;  // canonical enumeration; empty for intervals
};

Space Space::finite_tabulated(std::vector<std::string> labels,
                              std::vector<std::vector<double>> distances,
                              std::vector<double> coords) {
    const std::size_t n = labels.size();
    if (distances.size() != n)
        throw Error(ErrorCode::InvalidArgument, "distance matrix has " +
                                                    std::to_string(distances.size()) +
                                                    " rows for " + std::to_string(n) + " points");
    for (const auto& row : distances)
        if (row.size() != n)
            throw Error(ErrorCode::InvalidArgument, "distance matrix is not square");
    if (!coords.empty() && coords.size() != n)
        throw Error(ErrorCode::InvalidArgument, "coords size does not match point count");

    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::FiniteTabulated;
    impl->labels = std::move(labels);
    impl->dist = std::move(distances);
    if (coords.empty())
        impl->coords.assign(n, std::nan(""));
    else
        impl->coords = std::move(coords);
    impl->points.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        impl->points.push_back(Point::indexed(static_cast<std::int64_t>(i), impl->coords[i]));
    Space s;
    s.impl_ = std::move(impl);
    return s;
}

Space Space::finite_line(std::vector<double> coords) {
    const std::size_t n = coords.size();
    std::vector<std::string> labels;
    labels.reserve(n);
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(format_coord(coords[i]));
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = std::fabs(coords[i] - coords[j]);
    }
    return finite_tabulated(std::move(labels), std::move(dist), std::move(coords));
}

Space Space::shrinking_fractions(int depth) {
    if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::ShrinkingFractions;
    impl->depth = depth;
    // Ascending coordinates: 0, 1/R, 1/(R-1), ..., 1/2, 1.
    impl->points.reserve(static_cast<std::size_t>(depth) + 1);
    impl->points.push_back(Point::indexed(0, 0.0));
    for (int r = depth; r >= 1; --r) impl->points.push_back(Point::indexed(r, 1.0 / r));
    Space s;
    s.impl_ = std::move(impl);
    return s;
}

Space Space::real_interval(double lo, double hi) {
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "interval needs lo < hi");
    auto impl = std::make_shared<Impl>();
    impl->kind = SpaceKind::RealInterval;
    impl->lo = lo;
    impl->hi = hi;
    Space s;
    s.impl_ = std::move(impl);
    return s;
}

SpaceKind Space::kind() const { return impl_->kind; }

bool Space::enumerable() const { return impl_->kind != SpaceKind::RealInterval; }

std::size_t Space::size() const {
    if (!enumerable())
        throw Error(ErrorCode::UnsupportedSpace, "interval spaces have no enumeration");
    return impl_->points.size();
}

const std::vector<Point>& Space::points() const {
    if (!enumerable())
        throw Error(ErrorCode::UnsupportedSpace, "interval spaces have no enumeration");
    return impl_->points;
}

double Space::distance(const Point& x, const Point& z) const {
    switch (impl_->kind) {
        case SpaceKind::FiniteTabulated: {
            if (x.is_free() || z.is_free())
                throw Error(ErrorCode::DomainError, "free point on a tabulated space");
            const auto n = static_cast<std::int64_t>(impl_->points.size());
            if (x.key() >= n || z.key() >= n)
                throw Error(ErrorCode::DomainError, "point key out of range");
            return impl_->dist[static_cast<std::size_t>(x.key())]
                              [static_cast<std::size_t>(z.key())];
        }
        case SpaceKind::ShrinkingFractions: {
            if (x.is_free() || z.is_free())
                throw Error(ErrorCode::DomainError, "free point on the fraction space");
            if (x.key() == z.key()) return 0.0;
            const double cx = x.key() == 0 ? 0.0 : 1.0 / static_cast<double>(x.key());
            const double cz = z.key() == 0 ? 0.0 : 1.0 / static_cast<double>(z.key());
            return std::max(cx, cz);
        }
        case SpaceKind::RealInterval: {
            if (!x.has_coord() || !z.has_coord())
                throw Error(ErrorCode::DomainError, "interval point without coordinate");
            return std::fabs(x.coord() - z.coord());
        }
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown space kind");
}

Point Space::sample(std::mt19937_64& rng) const {
    if (impl_->kind != SpaceKind::RealInterval)
        throw Error(ErrorCode::UnsupportedSpace, "sampling is for interval spaces");
    std::uniform_real_distribution<double> dist(impl_->lo, impl_->hi);
    return Point::free_point(dist(rng));
}

double Space::interval_lo() const {
    if (impl_->kind != SpaceKind::RealInterval)
        throw Error(ErrorCode::UnsupportedSpace, "not an interval space");
    return impl_->lo;
}

double Space::interval_hi() const {
    if (impl_->kind != SpaceKind::RealInterval)
        throw Error(ErrorCode::UnsupportedSpace, "not an interval space");
    return impl_->hi;
}

int Space::depth() const {
    if (impl_->kind != SpaceKind::ShrinkingFractions)
        throw Error(ErrorCode::UnsupportedSpace, "not a shrinking-fractions space");
    return impl_->depth;
}

Point Space::fraction_point(std::int64_t r) const {
    if (impl_->kind != SpaceKind::ShrinkingFractions)
        throw Error(ErrorCode::UnsupportedSpace, "not a shrinking-fractions space");
    if (r < 0) throw Error(ErrorCode::DomainError, "fraction index must be >= 0");
    return Point::indexed(r, r == 0 ? 0.0 : 1.0 / static_cast<double>(r));
}

Point Space::from_coord(double x) const {
    switch (impl_->kind) {
        case SpaceKind::FiniteTabulated: {
            for (const auto& p : impl_->points)
                if (p.has_coord() && std::fabs(p.coord() - x) <= kEqTol) return p;
            throw Error(ErrorCode::DomainError,
                        "no tabulated point at coordinate " + format_coord(x));
        }
        case SpaceKind::ShrinkingFractions: {
            if (std::fabs(x) <= kEqTol) return Point::indexed(0, 0.0);
            if (x > 0.0) {
                const double rd = std::round(1.0 / x);
                if (rd >= 1.0 && rd < 9.0e15 && std::fabs(1.0 / rd - x) <= kEqTol)
                    return fraction_point(static_cast<std::int64_t>(rd));
            }
            throw Error(ErrorCode::DomainError,
                        format_coord(x) + " is not of the form 1/r or 0");
        }
        case SpaceKind::RealInterval: {
            if (x < impl_->lo - kEqTol || x > impl_->hi + kEqTol)
                throw Error(ErrorCode::DomainError,
                            format_coord(x) + " lies outside the interval");
            return Point::free_point(std::clamp(x, impl_->lo, impl_->hi));
        }
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown space kind");
}

std::string Space::label(const Point& p) const {
    switch (impl_->kind) {
        case SpaceKind::FiniteTabulated: {
            if (p.is_free()) throw Error(ErrorCode::DomainError, "free point has no label here");
            const auto n = static_cast<std::int64_t>(impl_->labels.size());
            if (p.key() >= n) throw Error(ErrorCode::DomainError, "point key out of range");
            return impl_->labels[static_cast<std::size_t>(p.key())];
        }
        case SpaceKind::ShrinkingFractions: {
            if (p.is_free()) throw Error(ErrorCode::DomainError, "free point has no label here");
            if (p.key() == 0) return "0";
            if (p.key() == 1) return "1";
            return "1/" + std::to_string(p.key());
        }
        case SpaceKind::RealInterval:
            if (!p.has_coord()) throw Error(ErrorCode::DomainError, "point without coordinate");
            return format_coord(p.coord());
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown space kind");
}

std::size_t Space::position(const Point& p) const {
    if (!enumerable())
        throw Error(ErrorCode::UnsupportedSpace, "interval spaces have no enumeration");
    if (p.is_free()) throw Error(ErrorCode::DomainError, "free point has no position");
    if (impl_->kind == SpaceKind::ShrinkingFractions) {
        if (p.key() > impl_->depth)
            throw Error(ErrorCode::DomainError, "point lies beyond the truncation depth");
        return p.key() == 0 ? 0
                            : static_cast<std::size_t>(impl_->depth - p.key() + 1);
    }
    const auto n = static_cast<std::int64_t>(impl_->points.size());
    if (p.key() >= n) throw Error(ErrorCode::DomainError, "point key out of range");
    return static_cast<std::size_t>(p.key());
}

}  // namespace expansive
