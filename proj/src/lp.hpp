#pragma once

#include <optional>
#include <vector>

#include "helix/cyclo.hpp"

namespace helix::lp {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

enum class Status { Optimal, Infeasible, Unbounded };

struct StandardResult {
  Status status = Status::Infeasible;
  Rational value;
  RatVector solution;
  std::vector<std::size_t> basis;  // original columns, one per independent row
};

/// min f.w subject to A w = b, w >= 0, by two-phase simplex with Bland's rule.
StandardResult solve_standard(const RatMatrix& A, const RatVector& b, const RatVector& f);

/// max c.y subject to G y + h >= 0, y free. Solved through the dual
/// (min h.w, -G^T w = c, w >= 0), which has only dim(y) rows. A dual that is
/// infeasible is reported as Unbounded: that reading is correct whenever the
/// primal is feasible.
struct MaxResult {
  Status status = Status::Infeasible;
  Rational value;
};
MaxResult maximize(const RatMatrix& G, const RatVector& h, const RatVector& c);

/// Whether {y : G y + h >= 0} is non-empty.
bool feasible(const RatMatrix& G, const RatVector& h);

/// Some rational point of {y : G y + h >= 0}.
std::optional<RatVector> feasible_point(const RatMatrix& G, const RatVector& h);

std::size_t rank(RatMatrix m);

}  // namespace helix::lp
