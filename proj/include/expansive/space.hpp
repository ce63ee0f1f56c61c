#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "expansive/point.hpp"

namespace expansive {

// Absolute tolerance used wherever exact equality of reals is meant.
inline constexpr double kEqTol = 1e-12;

enum class SpaceKind { FiniteTabulated, ShrinkingFractions, RealInterval };

/// A metric space. Immutable after construction; copies share state.
///
/// Three kinds:
///  - FiniteTabulated: labeled points with an explicit distance matrix.
///  - ShrinkingFractions: {1/r : r >= 1} ∪ {0} with d(x,z) = max(x,z) for
///    x != z. Enumeration is truncated at depth R (points 0, 1/R, ..., 1),
///    but points of index r > R stay valid: distances and map rules work on
///    them, only scans ignore them. Point keys: 0 for the point 0, r for 1/r.
///  - RealInterval: [a,b] with d = |x-z| and a seeded uniform sampler.
class Space {
public:
    /// Labeled points with an explicit distance matrix; coords (optional,
    /// NaN allowed) let coordinate-based orders and maps work on the space.
    static Space finite_tabulated(std::vector<std::string> labels,
                                  std::vector<std::vector<double>> distances,
                                  std::vector<double> coords = {});
    /// Finite space embedded in the real line: d = |x-z|, labels from coords.
    static Space finite_line(std::vector<double> coords);
    static Space shrinking_fractions(int depth = 64);
    static Space real_interval(double lo, double hi);

    SpaceKind kind() const;
    bool enumerable() const;

    /// Number of enumerated points (throws UnsupportedSpace on intervals).
    std::size_t size() const;

    /// Canonical enumeration: numeric ascending for parametric spaces,
    /// insertion order for tabulated.
    const std::vector<Point>& points() const;

    double distance(const Point& x, const Point& z) const;

    /// Uniform draw from [lo,hi] (RealInterval only).
    Point sample(std::mt19937_64& rng) const;

    double interval_lo() const;
    double interval_hi() const;
    int depth() const;  // ShrinkingFractions truncation depth R

    /// Point of the shrinking-fractions space with index r (0 means the
    /// point 0); valid beyond the truncation depth.
    Point fraction_point(std::int64_t r) const;

    /// Resolve a numeric coordinate to a point of this space: the matching
    /// enumerated point within kEqTol for enumerable spaces, a free point
    /// for intervals. Throws DomainError when nothing matches.
    Point from_coord(double x) const;

    std::string label(const Point& p) const;

    /// Canonical position of an enumerated point (index into points()).
    std::size_t position(const Point& p) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace expansive
