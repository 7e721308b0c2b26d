#include "qga/chart_index.hpp"

#include <algorithm>
#include <limits>

namespace qga {

namespace {

long cell_of(double v, double cell) { return static_cast<long>(std::floor(v / cell)); }

}  // namespace

ChartIndex::ChartIndex(const GroupModel& m, const std::vector<GroupElement>& points, double cell)
    : model_(m), points_(points), cell_(cell) {
  charts_.reserve(points.size());
  std::vector<long> cc(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    charts_.push_back(m.to_chart(points[static_cast<std::size_t>(i)]));
    const auto& ch = charts_.back();
    for (int d = 0; d < m.dim(); ++d) cc[static_cast<std::size_t>(d)] = cell_of(ch[static_cast<std::size_t>(d)], cell_);
    buckets_[key(cc)].push_back(i);
  }
}

std::uint64_t ChartIndex::key(const std::vector<long>& cc) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (long c : cc) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<int> ChartIndex::query(const GroupElement& x, double radius, double slack) const {
  const int d = model_.dim();
  auto cx = model_.to_chart(x);
  long span = static_cast<long>(std::floor((radius + slack) / cell_)) + 1;

  // Enumerate candidate cells around every periodic image of the query.
  std::vector<std::vector<long>> axis_cells(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto& cells = axis_cells[static_cast<std::size_t>(i)];
    double p = model_.period(i);
    std::vector<double> images = {cx[static_cast<std::size_t>(i)]};
    if (p > 0.0) {
      images.push_back(cx[static_cast<std::size_t>(i)] + p);
      images.push_back(cx[static_cast<std::size_t>(i)] - p);
    }
    for (double v : images) {
      long c0 = cell_of(v, cell_);
      for (long c = c0 - span; c <= c0 + span; ++c) cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }

  std::vector<int> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<long> cc(static_cast<std::size_t>(d));
  while (true) {
    for (int i = 0; i < d; ++i) cc[static_cast<std::size_t>(i)] = axis_cells[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    auto it = buckets_.find(key(cc));
    if (it != buckets_.end()) {
      for (int pid : it->second) {
        if (model_.distance(points_[static_cast<std::size_t>(pid)], x) <= radius + slack) out.push_back(pid);
      }
    }
    int i = d - 1;
    while (i >= 0) {
      if (++idx[static_cast<std::size_t>(i)] < axis_cells[static_cast<std::size_t>(i)].size()) break;
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Pred>
std::vector<int> ChartIndex::box_query(const CompactRegion& region, Pred&& keep) const {
  const int d = model_.dim();
  std::vector<std::vector<long>> axis_cells(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double lo = model_.chart_coord(i, region.bounds[static_cast<std::size_t>(i)][0]);
    double hi = model_.chart_coord(i, region.bounds[static_cast<std::size_t>(i)][1]);
    auto& cells = axis_cells[static_cast<std::size_t>(i)];
    double p = model_.period(i);
    if (hi < lo && p > 0.0) hi += p;  // interval wrapped around the period
    std::vector<double> shifts = {0.0};
    if (p > 0.0) {
      shifts.push_back(p);
      shifts.push_back(-p);
    }
    for (double s : shifts) {
      long c0 = cell_of(lo + s, cell_) - 1;
      long c1 = cell_of(hi + s, cell_) + 1;
      for (long c = c0; c <= c1; ++c) cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }

  std::vector<int> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<long> cc(static_cast<std::size_t>(d));
  while (true) {
    for (int i = 0; i < d; ++i) cc[static_cast<std::size_t>(i)] = axis_cells[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    auto it = buckets_.find(key(cc));
    if (it != buckets_.end()) {
      for (int pid : it->second) {
        if (keep(points_[static_cast<std::size_t>(pid)])) out.push_back(pid);
      }
    }
    int i = d - 1;
    while (i >= 0) {
      if (++idx[static_cast<std::size_t>(i)] < axis_cells[static_cast<std::size_t>(i)].size()) break;
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> ChartIndex::query_translate(const GroupElement& center, double radius,
                                             double slack, Realization side) const {
  auto region = model_.translate_ball_region(center, radius + slack, side);
  return box_query(region, [&](const GroupElement& p) {
    return model_.in_translate(center, radius, p, slack, side);
  });
}

std::vector<int> ChartIndex::covering_centers(const GroupElement& x, double radius,
                                              double slack, Realization side) const {
  auto region = model_.translate_center_region(x, radius + slack, side);
  return box_query(region, [&](const GroupElement& f) {
    return model_.in_translate(f, radius, x, slack, side);
  });
}

int ChartIndex::nearest(const GroupElement& x) const {
  if (points_.empty()) return -1;
  // Grow the search radius until something is found.
  double r = cell_;
  for (int tries = 0; tries < 60; ++tries) {
    auto hits = query(x, r);
    if (!hits.empty()) {
      int best = hits.front();
      double best_d = model_.distance(points_[static_cast<std::size_t>(best)], x);
      for (int id : hits) {
        double dd = model_.distance(points_[static_cast<std::size_t>(id)], x);
        if (dd < best_d) {
          best = id;
          best_d = dd;
        }
      }
      return best;
    }
    r *= 2.0;
  }
  // Fallback full scan.
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    double dd = model_.distance(points_[static_cast<std::size_t>(i)], x);
    if (dd < best_d) {
      best = i;
      best_d = dd;
    }
  }
  return best;
}

}  // namespace qga
