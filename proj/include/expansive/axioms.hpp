#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expansive/check_report.hpp"
#include "expansive/order.hpp"
#include "expansive/space.hpp"

namespace expansive {

/// Scan all metric axioms (identity, positivity, symmetry, triangle) over
/// every triple of a finite space, or over sample_budget seeded triples of
/// an interval space.
CheckReport verify_metric_axioms(const Space& space, std::uint64_t sample_budget = 10000,
                                 std::uint64_t seed = 0);

/// Scan reflexivity, antisymmetry, transitivity over a finite space, plus
/// the regularity condition when the order declares it. On a finite
/// enumeration a non-decreasing convergent chain is eventually constant, so
/// regularity reduces to each chain element relating to the terminal value;
/// it is scanned over enumerated chains of length three.
CheckReport verify_order_axioms(const Space& space, const PartialOrder& order);

/// All pairs (x,z) with x ⪯ z, diagonal included, in canonical enumeration
/// order (outer index before inner). Finite spaces only.
std::vector<std::pair<Point, Point>> comparable_pairs(const Space& space,
                                                      const PartialOrder& order);

}  // namespace expansive
