#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "expansive/point.hpp"
#include "expansive/space.hpp"

namespace expansive {

enum class OrderKind { Usual, Example1, Table, Diagonal };

/// A partial order on the points of a space, given as a total predicate.
/// The `regular` flag declares the regularity assumption (every increasing
/// convergent sequence is dominated by its limit); verify_order_axioms
/// checks it on finite spaces.
class PartialOrder {
public:
    /// Coordinate order x <= z. Total on coordinate-carrying spaces.
    static PartialOrder usual(bool regular = true);

    /// x ⪯ z iff x = z or x < z < 1 (the shrinking-fractions order:
    /// 1 is comparable only to itself).
    static PartialOrder example1(bool regular = true);

    /// Literal relation table over point keys. No implicit closure: the
    /// diagonal must be listed for the order to be reflexive.
    static PartialOrder from_table(std::vector<std::pair<std::int64_t, std::int64_t>> pairs,
                                   bool regular = false);

    /// Equality-only order.
    static PartialOrder diagonal();

    OrderKind kind() const;
    bool regular() const;
    bool leq(const Point& x, const Point& z) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace expansive
