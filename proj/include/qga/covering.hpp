#pragma once

#include <vector>

#include "qga/group_models.hpp"

namespace qga {

/// A finite set of ball centers covering some declared point set.
struct Cover {
  std::vector<GroupElement> centers;
  double radius = 0.0;
};

/// The covering number (A:O): minimal count of radius-balls needed.
struct CoveringNumber {
  int value = 0;
  bool exact = false;
};

/// Builds a grid F covering K with translates f*Ball(e, O.radius) (mirrored
/// for Realization::Right): lattice at the ball radius (translation-adapted
/// when requested), then greedy pruning of redundant centers, re-verified by
/// a lattice sample at O.radius/4. Deterministic for fixed inputs.
Cover build_grid(const GroupModel& m, const CompactRegion& K, Neighborhood O,
                 std::size_t cap = kDefaultLatticeCap, bool adapted = false,
                 Realization side = Realization::Left);

/// Exact minimum cover of `points` by radius-balls centered at `candidates`,
/// via branch and bound. Requires |candidates| <= 24; throws otherwise, and
/// throws when no cover exists.
CoveringNumber covering_number_exact(const std::vector<GroupElement>& points,
                                     const std::vector<GroupElement>& candidates, double radius,
                                     const GroupModel& m);

/// Greedy set cover surrogate; exact flag false. Lowest candidate index wins
/// ties. Value >= the exact value whenever both are computable.
CoveringNumber covering_number_greedy(const std::vector<GroupElement>& points,
                                      const std::vector<GroupElement>& candidates, double radius,
                                      const GroupModel& m);

}  // namespace qga
