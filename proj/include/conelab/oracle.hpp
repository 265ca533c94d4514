#pragma once

#include "conelab/union_set.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conelab {

/// Raised when rejection sampling cannot produce a single set point
/// inside the delta-ball (delta too small or oracle degenerate).
class SamplingStarved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic membership oracle for a closed set.  When backed by a
/// UnionSet, ball probes are decided exactly by LP (l1 inner ball for
/// success, sup-norm outer box for refutation); predicate-backed
/// oracles fall back to a fixed search pattern and can never refute.
class MembershipOracle {
public:
    static MembershipOracle from_union_set(UnionSet u, std::string description);
    static MembershipOracle from_predicate(std::size_t dim,
                                           std::function<bool(const Vec&)> eval,
                                           std::string description);

    bool operator()(const Vec& x) const { return set_ ? set_->contains(x) : eval_(x); }
    std::size_t dim() const { return dim_; }
    const std::string& description() const { return description_; }
    const std::optional<UnionSet>& union_set() const { return set_; }

    /// Exact/pattern decision on S ∩ (closed Euclidean ball of radius r
    /// around c): Member / Empty are proven, Unknown is the bracket gap.
    enum class BallDecision { Member, Empty, Unknown };
    BallDecision ball_probe(const Vec& c, const Rat& r) const;

private:
    std::function<bool(const Vec&)> eval_;
    std::optional<UnionSet> set_;
    std::string description_;
    std::size_t dim_ = 0;
};

struct OracleParams {
    Rat eps, delta, lambda;
    int trials = 100;
    std::uint64_t seed = 0;
};

enum class OracleStatus { Passed, Failed, Inconclusive };

struct Counterexample {
    Vec x, v;
    Rat t;
};

struct OracleVerdict {
    OracleParams params;
    OracleStatus status = OracleStatus::Inconclusive;
    std::optional<Counterexample> counterexample;  // present iff Failed
    int checks = 0;
    int inconclusive = 0;
    bool passed() const { return status == OracleStatus::Passed; }
    bool failed() const { return status == OracleStatus::Failed; }
};

/// Uniform-tangent-set tester: for sampled v in co(d_vertices), x in
/// S ∩ (x0 + delta ball) and t on a geometric grid of (0, lambda], the
/// ball x + t(v + eps B) must meet S.
OracleVerdict check_uts(const MembershipOracle& oracle, const Vec& x0,
                        const std::vector<Vec>& d_vertices, const OracleParams& params);

/// Sequential variant: only a null sequence of t's is required; the
/// tail of the geometric grid t_m = lambda * 2^(-m) is examined.
OracleVerdict check_uts_sequential(const MembershipOracle& oracle, const Vec& x0,
                                   const std::vector<Vec>& d_vertices,
                                   const OracleParams& params);

/// Clarke-cone single-direction specialization (d = {v}).
OracleVerdict check_clarke_membership(const MembershipOracle& oracle, const Vec& x0,
                                      const Vec& v, const OracleParams& params);

/// Uniform-vs-sequential empirical crosscheck over a parameter grid.
struct EquivalenceReport {
    struct Row {
        Rat eps, delta, lambda;
        OracleStatus uniform = OracleStatus::Inconclusive;
        OracleStatus sequential = OracleStatus::Inconclusive;
    };
    std::vector<Row> rows;
    /// (eps, delta) pairs where the sequential check passed but no
    /// lambda on the grid passed the uniform check.
    std::vector<std::pair<Rat, Rat>> tensions;
};

EquivalenceReport crosscheck_equivalence(const MembershipOracle& oracle, const Vec& x0,
                                         const std::vector<Vec>& d_vertices,
                                         const std::vector<std::array<Rat, 3>>& grid,
                                         int trials, std::uint64_t seed);

} // namespace conelab
