#pragma once

#include "conelab/linalg.hpp"

#include <optional>
#include <vector>

namespace conelab {

/// Closed halfspace {x : <normal, x> <= offset}.
struct Halfspace {
    Vec normal;
    Rat offset;
};

enum class Sense { Min, Max };

struct LinearProgram {
    Vec objective;
    std::vector<Halfspace> constraints;
    Sense sense = Sense::Min;
};

enum class LpStatus { Optimum, Unbounded, Infeasible };

struct LpResult {
    LpStatus status;
    Rat value;  // valid for Optimum
    Vec point;  // valid for Optimum (a feasible attaining point)
};

/// Exact rational LP over free variables.  Two-phase simplex, Bland's rule.
LpResult lp_solve(const LinearProgram& lp);

/// Feasibility of {x : constraints hold, equalities hold}.
std::optional<Vec> lp_feasible_point(const std::vector<Halfspace>& constraints,
                                     const std::vector<Halfspace>& equalities = {});

} // namespace conelab
