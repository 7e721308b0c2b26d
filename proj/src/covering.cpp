#include "qga/covering.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "qga/chart_index.hpp"

namespace qga {

Cover build_grid(const GroupModel& m, const CompactRegion& K, Neighborhood O, std::size_t cap,
                 bool adapted, Realization side) {
  if (O.radius <= 0.0) throw std::invalid_argument("grid neighborhood radius must be positive");
  const double r = O.radius;

  std::vector<GroupElement> centers = lattice_points(m, K, r, cap, adapted, side);
  std::vector<GroupElement> samples = lattice_points(m, K, r / 4.0, cap * 8, adapted, side);

  ChartIndex idx(m, centers, r);
  // coverers[s] = centers whose translated ball contains sample s.
  std::vector<std::vector<int>> covered_samples(centers.size());
  std::vector<int> cover_count(samples.size(), 0);
  for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
    auto hits = idx.covering_centers(samples[static_cast<std::size_t>(s)], r, 1e-9, side);
    if (hits.empty()) throw std::runtime_error("grid lattice failed to cover a sample point");
    for (int c : hits) covered_samples[static_cast<std::size_t>(c)].push_back(s);
    cover_count[static_cast<std::size_t>(s)] = static_cast<int>(hits.size());
  }

  // Greedy pruning in lexicographic (generation) order.
  std::vector<char> kept(centers.size(), 1);
  for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
    bool removable = true;
    for (int s : covered_samples[static_cast<std::size_t>(c)]) {
      if (cover_count[static_cast<std::size_t>(s)] < 2) {
        removable = false;
        break;
      }
    }
    if (removable) {
      kept[static_cast<std::size_t>(c)] = 0;
      for (int s : covered_samples[static_cast<std::size_t>(c)]) --cover_count[static_cast<std::size_t>(s)];
    }
  }

  Cover cover;
  cover.radius = r;
  for (int c = 0; c < static_cast<int>(centers.size()); ++c)
    if (kept[static_cast<std::size_t>(c)]) cover.centers.push_back(centers[static_cast<std::size_t>(c)]);

  for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
    if (cover_count[static_cast<std::size_t>(s)] <= 0)
      throw std::runtime_error("pruned grid lost coverage (internal error)");
  }
  return cover;
}

namespace {

using Mask = std::vector<std::uint64_t>;

bool mask_subset(const Mask& a, const Mask& b) {  // a subset of b
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

struct CoverInstance {
  int n_points = 0;
  std::vector<Mask> cand;  // candidate -> covered points

  static CoverInstance build(const std::vector<GroupElement>& points,
                             const std::vector<GroupElement>& candidates, double radius,
                             const GroupModel& m) {
    CoverInstance inst;
    inst.n_points = static_cast<int>(points.size());
    std::size_t words = (points.size() + 63) / 64;
    inst.cand.assign(candidates.size(), Mask(words, 0));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (m.in_translate(candidates[c], radius, points[p]))
          inst.cand[c][p / 64] |= (1ULL << (p % 64));
      }
    }
    return inst;
  }

  bool feasible() const {
    for (int p = 0; p < n_points; ++p) {
      bool any = false;
      for (const auto& cm : cand)
        if (cm[static_cast<std::size_t>(p) / 64] & (1ULL << (p % 64))) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }
};

struct ExactSolver {
  const CoverInstance& inst;
  int best;
  Mask full;

  explicit ExactSolver(const CoverInstance& i) : inst(i), best(static_cast<int>(i.cand.size()) + 1) {
    std::size_t words = (static_cast<std::size_t>(i.n_points) + 63) / 64;
    full.assign(words, 0);
    for (int p = 0; p < i.n_points; ++p) full[static_cast<std::size_t>(p) / 64] |= (1ULL << (p % 64));
  }

  void solve(const Mask& covered, int chosen) {
    if (chosen >= best) return;
    if (mask_subset(full, covered)) {
      best = chosen;
      return;
    }
    // Branch on the uncovered point with the fewest covering candidates.
    int branch_p = -1;
    int branch_deg = inst.n_points + static_cast<int>(inst.cand.size()) + 1;
    for (int p = 0; p < inst.n_points; ++p) {
      if (covered[static_cast<std::size_t>(p) / 64] & (1ULL << (p % 64))) continue;
      int deg = 0;
      for (const auto& cm : inst.cand)
        if (cm[static_cast<std::size_t>(p) / 64] & (1ULL << (p % 64))) ++deg;
      if (deg < branch_deg) {
        branch_deg = deg;
        branch_p = p;
      }
    }
    if (branch_p < 0 || branch_deg == 0) return;  // infeasible branch
    for (std::size_t c = 0; c < inst.cand.size(); ++c) {
      if (!(inst.cand[c][static_cast<std::size_t>(branch_p) / 64] & (1ULL << (branch_p % 64)))) continue;
      Mask next = covered;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] |= inst.cand[c][w];
      solve(next, chosen + 1);
    }
  }
};

}  // namespace

CoveringNumber covering_number_exact(const std::vector<GroupElement>& points,
                                     const std::vector<GroupElement>& candidates, double radius,
                                     const GroupModel& m) {
  if (candidates.size() > 24)
    throw std::invalid_argument("exact covering number capped at 24 candidates; use greedy");
  if (points.empty()) return {0, true};
  CoverInstance inst = CoverInstance::build(points, candidates, radius, m);
  if (!inst.feasible()) throw std::runtime_error("no candidate ball covers some point");
  ExactSolver solver(inst);
  solver.solve(Mask((points.size() + 63) / 64, 0), 0);
  return {solver.best, true};
}

CoveringNumber covering_number_greedy(const std::vector<GroupElement>& points,
                                      const std::vector<GroupElement>& candidates, double radius,
                                      const GroupModel& m) {
  if (points.empty()) return {0, false};
  CoverInstance inst = CoverInstance::build(points, candidates, radius, m);
  if (!inst.feasible()) throw std::runtime_error("no candidate ball covers some point");

  std::size_t words = inst.cand.empty() ? 1 : inst.cand.front().size();
  Mask covered(words, 0);
  int picked = 0;
  auto gain = [&](const Mask& cm) {
    int g = 0;
    for (std::size_t w = 0; w < words; ++w) g += std::popcount(cm[w] & ~covered[w]);
    return g;
  };
  while (true) {
    bool done = true;
    for (int p = 0; p < inst.n_points; ++p)
      if (!(covered[static_cast<std::size_t>(p) / 64] & (1ULL << (p % 64)))) {
        done = false;
        break;
      }
    if (done) break;
    int best_c = -1;
    int best_gain = 0;
    for (std::size_t c = 0; c < inst.cand.size(); ++c) {
      int g = gain(inst.cand[c]);
      if (g > best_gain) {  // strict: lowest index wins ties
        best_gain = g;
        best_c = static_cast<int>(c);
      }
    }
    for (std::size_t w = 0; w < words; ++w) covered[w] |= inst.cand[static_cast<std::size_t>(best_c)][w];
    ++picked;
  }
  return {picked, false};
}

}  // namespace qga
