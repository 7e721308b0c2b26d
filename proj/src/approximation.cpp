#include "qga/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "qga/matching.hpp"

namespace qga {

namespace {

void validate_problem(const ApproximationProblem& p) {
  if (!p.model) throw std::invalid_argument("approximation problem has no model");
  if (p.U.radius <= 0.0) throw std::invalid_argument("U radius must be positive");
  if (p.C.dim() != p.model->dim()) throw std::invalid_argument("C dimension mismatch");
  for (const auto& b : p.C.bounds)
    if (!(b[0] <= b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
      throw std::invalid_argument("C bounds must be finite nonempty intervals");
}

Realization realization_of(Side s) {
  return s == Side::Left ? Realization::Left : Realization::Right;
}

bool fully_periodic(const GroupModel& m) {
  for (int i = 0; i < m.dim(); ++i)
    if (m.period(i) <= 0.0) return false;
  return true;
}

/// Points of the identity O-ball used for distortion sampling. Discrete
/// models enumerate the integer ball; continuous models draw from the chart
/// box (which is exactly the ball).
std::vector<GroupElement> ball_samples(const GroupModel& m, double radius, int want,
                                       std::mt19937_64& rng) {
  std::vector<GroupElement> out;
  if (m.discrete()) {
    auto pts = lattice_points(m, m.ball_region(m.identity(), radius), 1.0, 100000);
    for (auto& p : pts)
      if (m.in_ball(m.identity(), radius, p)) out.push_back(std::move(p));
    return out;
  }
  std::uniform_real_distribution<double> unit(-radius, radius);
  auto e_chart = m.to_chart(m.identity());
  std::vector<double> c(e_chart.size());
  for (int i = 0; i < want; ++i) {
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = e_chart[d] + unit(rng);
    out.push_back(m.from_chart(c));
  }
  return out;
}

/// max over sampled pairs x,y in the rho-ball of d(x*y^-1, e). The chart-box
/// corners are always included (pairwise, deterministically): the extreme
/// pairs sit there, and relying on random draws alone makes the estimate
/// flicker around thresholds.
double sampled_distortion(const GroupModel& m, double rho, std::mt19937_64& rng) {
  auto pts = ball_samples(m, rho, 200, rng);
  const GroupElement e = m.identity();
  double worst = 0.0;
  if (!m.discrete()) {
    const int d = m.dim();
    auto e_chart = m.to_chart(m.identity());
    std::vector<GroupElement> corners;
    std::vector<int> sel(static_cast<std::size_t>(d), 0);
    std::vector<double> c(static_cast<std::size_t>(d));
    const double offs[3] = {-rho, 0.0, rho};
    while (true) {
      for (int i = 0; i < d; ++i)
        c[static_cast<std::size_t>(i)] = e_chart[static_cast<std::size_t>(i)] + offs[sel[static_cast<std::size_t>(i)]];
      corners.push_back(m.from_chart(c));
      int i = d - 1;
      while (i >= 0 && ++sel[static_cast<std::size_t>(i)] == 3) sel[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
    for (const auto& x : corners)
      for (const auto& y : corners)
        worst = std::max(worst, m.distance(m.multiply(x, m.invert(y)), e));
    pts.insert(pts.end(), corners.begin(), corners.end());
  }
  if (pts.size() <= 1) return worst;
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  const int pairs = 10000;
  for (int t = 0; t < pairs; ++t) {
    const GroupElement& x = pts[pick(rng)];
    const GroupElement& y = pts[pick(rng)];
    worst = std::max(worst, m.distance(m.multiply(x, m.invert(y)), e));
  }
  return worst;
}

}  // namespace

std::pair<Neighborhood, CompactRegion> choose_parameters(const ApproximationProblem& p,
                                                         std::optional<double> forced_radius) {
  validate_problem(p);
  const GroupModel& m = *p.model;
  const double u = p.U.radius;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);

  double rho;
  if (forced_radius) {
    rho = *forced_radius;
  } else {
    rho = u / 2.0;
    if (!m.invariant_metric()) {
      // Estimate the local distortion of x*y^-1 near the identity and back
      // off by twice the measured excess.
      double worst = sampled_distortion(m, rho, rng);
      double distortion = std::max(1.0, worst / (2.0 * rho));
      rho = (u / 2.0) / (1.0 + 2.0 * (distortion - 1.0));
    }
  }
  if (!m.invariant_metric()) {
    bool ok = false;
    for (int tries = 0; tries < 8; ++tries) {
      if (sampled_distortion(m, rho, rng) <= u + 1e-12) {
        ok = true;
        break;
      }
      rho /= 2.0;
    }
    if (!ok) throw std::runtime_error("distortion estimate failed to converge");
  }

  CompactRegion K;
  if (fully_periodic(m)) {
    K = m.full_region();
  } else {
    // Bound C*C and C*U by sampled products. Each product is absorbed with
    // its U-translate neighborhood so the grid keeps candidates near every
    // product; a further `spacing` margin covers sampling gaps.
    const Realization real = realization_of(p.side);
    double span = 0.0;
    for (int i = 0; i < m.dim(); ++i)
      span = std::max(span, m.chart_coord(i, p.C.bounds[static_cast<std::size_t>(i)][1]) -
                                m.chart_coord(i, p.C.bounds[static_cast<std::size_t>(i)][0]));
    double spacing = std::max(rho, span / 16.0);
    auto cl = lattice_points(m, p.C, spacing, 100000);
    auto ul = lattice_points(m, m.ball_region(m.identity(), u), std::max(rho, u / 4.0), 100000);

    const int d = m.dim();
    std::vector<double> lo(static_cast<std::size_t>(d), 1e300), hi(static_cast<std::size_t>(d), -1e300);
    auto absorb = [&](const GroupElement& g) {
      auto region = m.translate_ball_region(g, u + 2.0 * rho, real);
      for (int i = 0; i < d; ++i) {
        lo[static_cast<std::size_t>(i)] = std::min(
            lo[static_cast<std::size_t>(i)], m.chart_coord(i, region.bounds[static_cast<std::size_t>(i)][0]));
        hi[static_cast<std::size_t>(i)] = std::max(
            hi[static_cast<std::size_t>(i)], m.chart_coord(i, region.bounds[static_cast<std::size_t>(i)][1]));
      }
    };
    for (const auto& a : cl) {
      absorb(a);
      for (const auto& b : cl) absorb(m.multiply(a, b));
      for (const auto& w : ul) absorb(m.multiply(a, w));
    }
    double inflate = spacing + rho;
    K.bounds.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      K.bounds[static_cast<std::size_t>(i)] = {m.model_coord(i, lo[static_cast<std::size_t>(i)] - inflate),
                                               m.model_coord(i, hi[static_cast<std::size_t>(i)] + inflate)};
  }
  return {Neighborhood{rho}, K};
}

CandidateFamily::CandidateFamily(const GroupModel& m, Cover grid, std::vector<int> core,
                                 double o_radius, double pair_radius, Realization realization)
    : model_(m),
      grid_(std::move(grid)),
      core_(std::move(core)),
      o_radius_(o_radius),
      pair_radius_(pair_radius),
      realization_(realization) {
  core_mask_.assign(grid_.centers.size(), 0);
  for (int i : core_) core_mask_[static_cast<std::size_t>(i)] = 1;
  index_ = std::make_unique<ChartIndex>(model_, grid_.centers, std::max(o_radius_, 1e-9));
}

std::vector<int> CandidateFamily::candidates_for(int g_index, int h_index) const {
  if (is_core(g_index) && is_core(h_index)) {
    GroupElement prod = model_.multiply(grid_.centers[static_cast<std::size_t>(g_index)],
                                        grid_.centers[static_cast<std::size_t>(h_index)]);
    return index_->query_translate(prod, pair_radius_, 1e-9, realization_);
  }
  std::vector<int> all(grid_.centers.size());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

CandidateFamily build_candidates(const ApproximationProblem& p, Neighborhood O,
                                 const CompactRegion& K, std::size_t cap) {
  validate_problem(p);
  const GroupModel& m = *p.model;
  const Realization real = realization_of(p.side);
  Cover grid = build_grid(m, K, O, cap, true, real);
  std::vector<int> core;
  for (int i = 0; i < static_cast<int>(grid.centers.size()); ++i)
    if (m.in_region(grid.centers[static_cast<std::size_t>(i)], p.C)) core.push_back(i);
  // The O O^-1 radius: exactly 2*O.radius for invariant metrics, sampled
  // (and capped at U) otherwise.
  double pair_radius = 2.0 * O.radius;
  if (!m.invariant_metric()) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    pair_radius = std::min(std::max(pair_radius, sampled_distortion(m, O.radius, rng)),
                           p.U.radius);
  }
  return CandidateFamily(m, std::move(grid), std::move(core), O.radius, pair_radius, real);
}

int FiniteLeftQuasigroup::divide(int b, int a) const {
  if (side == Side::Left) {
    const auto& row = table[static_cast<std::size_t>(a)];
    for (int x = 0; x < n; ++x)
      if (row[static_cast<std::size_t>(x)] == b) return x;
  } else {
    for (int x = 0; x < n; ++x)
      if (table[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] == b) return x;
  }
  throw std::logic_error("division failed: table line is not a permutation");
}

std::variant<FiniteLeftQuasigroup, HallViolation> solve_left_quasigroup(
    const CandidateFamily& cf, const ApproximationProblem& p) {
  const int n = static_cast<int>(cf.grid().centers.size());
  const auto& core = cf.core();
  const bool left = (p.side == Side::Left);

  FiniteLeftQuasigroup q;
  q.model = p.model;
  q.n = n;
  q.side = p.side;
  q.embedding = cf.grid().centers;
  q.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));

  auto set_entry = [&](int anchor, int partner, int value) {
    if (left)
      q.table[static_cast<std::size_t>(anchor)][static_cast<std::size_t>(partner)] = value;
    else
      q.table[static_cast<std::size_t>(partner)][static_cast<std::size_t>(anchor)] = value;
  };

  for (int a = 0; a < n; ++a) {
    if (!cf.is_core(a)) {
      for (int h = 0; h < n; ++h) set_entry(a, h, h);
      continue;
    }
    SetSystem sys;
    sys.universe_size = n;
    sys.sets.reserve(core.size());
    for (int h : core)
      sys.sets.push_back(left ? cf.candidates_for(a, h) : cf.candidates_for(h, a));

    SdrResult res = sdr(sys);
    if (!res.ok()) {
      HallViolation v;
      v.anchor = a;
      std::vector<char> in_union(static_cast<std::size_t>(n), 0);
      for (int t : *res.violator) {
        v.partner_set.push_back(core[static_cast<std::size_t>(t)]);
        for (int e : sys.sets[static_cast<std::size_t>(t)]) in_union[static_cast<std::size_t>(e)] = 1;
      }
      for (int e = 0; e < n; ++e)
        if (in_union[static_cast<std::size_t>(e)]) v.union_elements.push_back(e);
      return v;
    }

    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 0; t < core.size(); ++t) {
      int value = (*res.representatives)[t];
      set_entry(a, core[t], value);
      used[static_cast<std::size_t>(value)] = 1;
    }
    // Partners outside the core have candidate set F: hand them the unused
    // elements in ascending order.
    int next_free = 0;
    for (int h = 0; h < n; ++h) {
      if (cf.is_core(h)) continue;
      while (used[static_cast<std::size_t>(next_free)]) ++next_free;
      set_entry(a, h, next_free);
      used[static_cast<std::size_t>(next_free)] = 1;
    }
  }
  return q;
}

std::pair<FiniteLeftQuasigroup, ApproximationReport> build_approximation(
    const ApproximationProblem& p, int max_retries, std::size_t cap) {
  validate_problem(p);
  std::optional<double> forced;
  int retries = 0;
  while (true) {
    auto [O, K] = choose_parameters(p, forced);
    CandidateFamily cf = build_candidates(p, O, K, cap);
    auto res = solve_left_quasigroup(cf, p);
    if (std::holds_alternative<FiniteLeftQuasigroup>(res)) {
      FiniteLeftQuasigroup q = std::get<FiniteLeftQuasigroup>(std::move(res));
      ApproximationReport report = verify_approximation(q, p);
      report.retries = retries;
      return {std::move(q), report};
    }
    ++retries;
    if (retries > max_retries)
      throw std::runtime_error("approximation retries exhausted (Hall condition kept failing)");
    forced = O.radius / 2.0;
  }
}

ApproximationReport verify_approximation(const FiniteLeftQuasigroup& q,
                                         const ApproximationProblem& p) {
  validate_problem(p);
  const GroupModel& m = *p.model;
  ApproximationReport rep;

  if (!q.model || q.model->name() != m.name()) {
    rep.structure_ok = false;
    rep.structure_error = "model mismatch";
    return rep;
  }
  if (static_cast<int>(q.embedding.size()) != q.n ||
      static_cast<int>(q.table.size()) != q.n) {
    rep.structure_ok = false;
    rep.structure_error = "table/embedding size mismatch";
    return rep;
  }
  {
    std::map<std::vector<double>, int> seen;
    for (int i = 0; i < q.n; ++i)
      if (!seen.emplace(q.embedding[static_cast<std::size_t>(i)].coords, i).second) {
        rep.structure_ok = false;
        rep.structure_error = "embedding is not injective";
        return rep;
      }
  }
  for (int a = 0; a < q.n; ++a) {
    std::vector<char> hit(static_cast<std::size_t>(q.n), 0);
    for (int b = 0; b < q.n; ++b) {
      int v = (q.side == Side::Left) ? q.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                                     : q.table[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
      if (v < 0 || v >= q.n || hit[static_cast<std::size_t>(v)]) {
        rep.structure_ok = false;
        rep.structure_error = std::string(q.side == Side::Left ? "row " : "column ") +
                              std::to_string(a) + " is not a permutation";
        return rep;
      }
      hit[static_cast<std::size_t>(v)] = 1;
    }
  }

  // Both defects are measured in the translate sense that realizes gU:
  // grid defect = the smallest U radius with C inside the union of j(h)U,
  // hom defect = the smallest U radius with j(x (.) y) in j(x)j(y)U.
  // For invariant metrics this is the plain metric distance.
  const Realization real = realization_of(p.side);
  ChartIndex idx(m, q.embedding, std::max(p.U.radius, 1e-9));
  auto samples = lattice_points(m, p.C, p.U.radius / 4.0, kDefaultLatticeCap * 8, true, real);
  double grid_defect = 0.0;
  for (const auto& s : samples) {
    double best = std::numeric_limits<double>::infinity();
    for (int h : idx.covering_centers(s, p.U.radius, 1e-9, real))
      best = std::min(best, m.translate_distance(q.embedding[static_cast<std::size_t>(h)], s, real));
    if (!std::isfinite(best)) {
      for (int h = 0; h < q.n; ++h)
        best = std::min(best, m.translate_distance(q.embedding[static_cast<std::size_t>(h)], s, real));
    }
    grid_defect = std::max(grid_defect, best);
  }
  rep.grid_defect = grid_defect;

  std::vector<int> cidx;
  for (int i = 0; i < q.n; ++i)
    if (m.in_region(q.embedding[static_cast<std::size_t>(i)], p.C)) cidx.push_back(i);
  double hom_defect = 0.0;
  long pairs = 0;
  for (int x : cidx) {
    for (int y : cidx) {
      GroupElement prod = m.multiply(q.embedding[static_cast<std::size_t>(x)], q.embedding[static_cast<std::size_t>(y)]);
      if (!m.in_region(prod, p.C)) continue;
      ++pairs;
      int xy = q.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      double d = m.translate_distance(prod, q.embedding[static_cast<std::size_t>(xy)], real);
      if (d > hom_defect) {
        hom_defect = d;
        rep.worst_pair = HomWitness{x, y, d};
      }
    }
  }
  rep.hom_defect = hom_defect;
  rep.qualifying_pairs = pairs;
  rep.pass = rep.structure_ok && rep.grid_defect <= p.U.radius + 1e-9 &&
             rep.hom_defect <= p.U.radius + 1e-9;
  return rep;
}

}  // namespace qga
