#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "expansive/check_report.hpp"
#include "expansive/growth.hpp"
#include "expansive/mapping.hpp"
#include "expansive/order.hpp"
#include "expansive/space.hpp"

namespace expansive {

/// One hypothesis-checking instance: a space, the map(s) under test, the
/// growth function and the exponent. eta must be > 1 (InvalidArgument
/// otherwise). Sampling parameters apply on non-enumerable spaces.
class ExpansiveProblem {
public:
    ExpansiveProblem(Space space, Mapping u, GrowthFunction growth, double eta);

    ExpansiveProblem& with_order(PartialOrder order);
    ExpansiveProblem& with_v(Mapping v);
    ExpansiveProblem& with_sampling(std::uint64_t seed, std::uint64_t samples);

    const Space& space() const { return space_; }
    const Mapping& u() const { return u_; }
    const std::optional<Mapping>& v() const { return v_; }
    const std::optional<PartialOrder>& order() const { return order_; }
    const GrowthFunction& growth() const { return growth_; }
    double eta() const { return eta_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t samples() const { return samples_; }

private:
    Space space_;
    Mapping u_;
    std::optional<Mapping> v_;
    std::optional<PartialOrder> order_;
    GrowthFunction growth_;
    double eta_;
    std::uint64_t seed_ = 0;
    std::uint64_t samples_ = 10000;
};

/// phi(d(Ux,Uz)) >= phi(d(x,z))^eta over comparable pairs with d(Ux,Uz) > 0.
/// Requires an order (MissingOrder otherwise). Log domain: lhs_log >= eta *
/// rhs_log. pairs_examined counts pairs actually tested.
CheckReport check_phi_expansive(const ExpansiveProblem& p);

/// d(Ux,Uz) >= q * d(x,z) over all pairs, linear domain. Witness lhs_log /
/// rhs_log carry the plain distances.
CheckReport check_wang_expansive(const Mapping& u, double q, std::uint64_t seed = 0,
                                 std::uint64_t samples = 10000);

/// phi(d(Ux,Uz)) >= phi(min{d(x,z), d(x,Ux), d(z,Uz)})^eta over pairs of
/// non-fixed points with Ux != Uz. Pairs whose min is zero are counted in
/// `skipped`, never silently dropped.
CheckReport check_min_condition(const ExpansiveProblem& p);

/// phi(d(Ux,Uz)) >= phi(d(Vx,Vz))^eta over pairs with Vx != Vz, after
/// verifying V(M) is contained in U(M) (ContainmentViolated otherwise).
/// Pairs where U collapses while V separates fail with lhs_log = -inf.
CheckReport check_jungck_condition(const ExpansiveProblem& p);

/// ustar preserves the order: x <= z implies ustar(x) <= ustar(z).
CheckReport check_increasing(const RightInverse& ustar, const PartialOrder& order);

enum class ConditionName { Phi, Wang, Min, Jungck };

/// Escalating counterexample search for one condition, spending up to
/// `budget` pair evaluations. Parametric spaces are regrown (depth doubles),
/// interval sampling doubles; finite tables get one capped exhaustive scan.
/// A Pass verdict means pass-at-budget, not a proof.
CheckReport search_violation(const ExpansiveProblem& p, ConditionName which,
                             std::uint64_t budget);

/// q-expansiveness restated as phi-expansiveness with phi = exp_t and
/// eta = q: both routes must agree pair by pair. Used by equivalence tests.
ExpansiveProblem wang_as_phi_problem(const Mapping& u, double q, std::uint64_t seed,
                                     std::uint64_t samples);

const char* condition_name(ConditionName c);

}  // namespace expansive
