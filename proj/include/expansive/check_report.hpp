#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expansive/point.hpp"

namespace expansive {

enum class Verdict { Pass, Fail };

/// A concrete violation: the pair (or triple) that broke a check, the
/// distances involved, and both sides of the inequality in log-phi domain
/// where applicable. Fields that do not apply stay NaN.
struct Witness {
    Point x;
    Point z;
    std::optional<Point> via;  // third point (triangle / transitivity)
    double d_xz = std::nan("");
    double d_img = std::nan("");
    double lhs_log = std::nan("");
    double rhs_log = std::nan("");
    std::string detail;  // which axiom / inequality form broke
};

/// How the pair (or triple) set was covered.
struct Coverage {
    enum class Mode { Exhaustive, Sampled };
    Mode mode = Mode::Exhaustive;
    std::uint64_t seed = 0;   // sampled runs only
    std::uint64_t samples = 0;

    static Coverage exhaustive() { return {}; }
    static Coverage sampled(std::uint64_t seed, std::uint64_t samples) {
        return {Mode::Sampled, seed, samples};
    }
};

/// Outcome of a hypothesis check: PASS with coverage statistics, or FAIL
/// with the canonically first violating witness.
struct CheckReport {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::uint64_t pairs_examined = 0;
    std::uint64_t skipped = 0;  // pairs excluded because an argument was 0
    std::optional<Witness> witness;
    Coverage coverage;
    std::vector<std::string> notes;

    bool passed() const { return verdict == Verdict::Pass; }

    static CheckReport pass(std::string name, std::uint64_t pairs, Coverage cov) {
        CheckReport r;
        r.name = std::move(name);
        r.pairs_examined = pairs;
        r.coverage = cov;
        return r;
    }

    static CheckReport fail(std::string name, std::uint64_t pairs, Coverage cov, Witness w) {
        CheckReport r;
        r.name = std::move(name);
        r.verdict = Verdict::Fail;
        r.pairs_examined = pairs;
        r.coverage = cov;
        r.witness = std::move(w);
        return r;
    }
};

}  // namespace expansive
