#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "expansive/check_report.hpp"
#include "expansive/point.hpp"
#include "expansive/space.hpp"

namespace expansive {

enum class MappingKind {
    FiniteTable,    ///< explicit image table over an enumerable space
    Example1Shift,  ///< 1/(r+1) -> 1/r, 0 -> 0, 1 -> 1 on shrinking fractions
    Linear,         ///< x -> slope * x on a real interval
    Custom,         ///< user-supplied coordinate function on a real interval
    Identity,
};

/// Self-map of a Space. Immutable value type; apply() always returns a point
/// of the same space (or throws DomainError for points outside it).
class Mapping {
public:
    static Mapping finite_table(Space space, std::vector<std::int64_t> image_keys,
                                std::string name = "table");
    static Mapping example1_shift(Space space);
    static Mapping linear(Space space, double slope);
    /// Coordinate function on a real interval. `monotone` enables bisection
    /// preimages over the interval; non-monotone maps only support apply().
    static Mapping custom(Space space, std::string name, std::function<double(double)> fn,
                          bool monotone = true);
    static Mapping identity(Space space);

    MappingKind kind() const;
    const std::string& name() const;
    const Space& space() const;

    Point apply(const Point& x) const;

    /// Linear maps only.
    double slope() const;
    bool monotone() const;

    /// Same rule bound to another space of a compatible kind. Used by
    /// escalating scans that grow a parametric space. FiniteTable rules do
    /// not transfer; rebinding one to a different space throws.
    Mapping rebind(Space space) const;

private:
    struct Impl;
    explicit Mapping(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// Deterministic selector for one preimage per point: U(apply(x)) == x.
/// Ties are broken by canonical position (least enumerated point wins; on
/// intervals the rule inverts the map directly).
class RightInverse {
public:
    RightInverse(Mapping base, std::function<Point(const Point&)> rule,
                 std::vector<std::int64_t> table);

    const Mapping& base() const { return base_; }
    Point apply(const Point& x) const { return rule_(x); }

    /// Selected preimage keys indexed by canonical position; empty on
    /// non-enumerable spaces.
    const std::vector<std::int64_t>& table() const { return table_; }

private:
    Mapping base_;
    std::function<Point(const Point&)> rule_;
    std::vector<std::int64_t> table_;
};

/// Checks that every point has at least one preimage. Enumerable spaces are
/// scanned exhaustively; rule-covered parametric points and interval grids
/// are noted in the report.
CheckReport verify_surjective(const Mapping& u);

/// Builds the canonical-least right inverse; throws NotSurjective when some
/// point has no preimage.
RightInverse build_right_inverse(const Mapping& u);

/// Points x with d(Ux, Vx) <= kEqTol. Intervals are scanned on a uniform
/// grid with bisection refinement between sign changes of Ux - Vx; adjacent
/// grid hits are merged into one representative.
std::vector<Point> coincidence_points(const Mapping& u, const Mapping& v,
                                      std::size_t grid = 100000);

/// At every coincidence point z: d(UVz, VUz) <= kEqTol.
CheckReport verify_weak_compatibility(const Mapping& u, const Mapping& v);

/// V(M) contained in U(M). Trivial when u is onto; analytic for pairs of
/// linear maps; grid advisory otherwise (noted in the report).
CheckReport verify_containment(const Mapping& u, const Mapping& v);

const char* mapping_kind_name(MappingKind k);

}  // namespace expansive
