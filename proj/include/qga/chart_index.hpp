#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qga/group_models.hpp"

namespace qga {

/// Uniform-grid index over chart coordinates for radius queries against a
/// fixed point set. Wrap-aware for periodic coordinates. Query results are
/// ascending point indices.
class ChartIndex {
 public:
  ChartIndex(const GroupModel& m, const std::vector<GroupElement>& points, double cell);

  /// Indices of stored points within `radius + slack` of x (model metric).
  std::vector<int> query(const GroupElement& x, double radius, double slack = 1e-9) const;

  /// Indices of stored points in the translated ball center*Ball(e, radius)
  /// (Ball*center for Realization::Right).
  std::vector<int> query_translate(const GroupElement& center, double radius,
                                   double slack = 1e-9,
                                   Realization side = Realization::Left) const;

  /// Indices of stored points f with x in f*Ball(e, radius)
  /// (x in Ball*f for Realization::Right).
  std::vector<int> covering_centers(const GroupElement& x, double radius,
                                    double slack = 1e-9,
                                    Realization side = Realization::Left) const;

  int nearest(const GroupElement& x) const;  // -1 when empty

 private:
  std::uint64_t key(const std::vector<long>& cell_coords) const;

  template <class Pred>
  std::vector<int> box_query(const CompactRegion& region, Pred&& keep) const;

  const GroupModel& model_;
  std::vector<std::vector<double>> charts_;
  std::vector<GroupElement> points_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

}  // namespace qga
