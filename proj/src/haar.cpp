#include "qga/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qga/chart_index.hpp"
#include "qga/covering.hpp"

namespace qga {

double stable_sum(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::stable_sort(values.begin(), values.end());
  // Fixed-tree pairwise reduction.
  while (values.size() > 1) {
    std::vector<double> next;
    next.reserve((values.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(values[i] + values[i + 1]);
    if (values.size() % 2 == 1) next.push_back(values.back());
    values = std::move(next);
  }
  return values.front();
}

TestFunction TestFunction::constant(double c) {
  TestFunction f;
  f.kind = TestFunctionKind::Constant;
  f.params = {c};
  f.fn = [c](const GroupModel&, const GroupElement&) { return c; };
  return f;
}

TestFunction TestFunction::bump(GroupElement center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("bump radius must be positive");
  TestFunction f;
  f.kind = TestFunctionKind::Bump;
  f.params = center.coords;
  f.params.push_back(radius);
  f.fn = [center, radius](const GroupModel& m, const GroupElement& g) {
    double d = m.distance(g, center);
    if (d >= radius) return 0.0;
    double t = 1.0 - (d / radius) * (d / radius);
    return t * t;
  };
  return f;
}

TestFunction TestFunction::trig() {
  TestFunction f;
  f.kind = TestFunctionKind::Trig;
  f.fn = [](const GroupModel& m, const GroupElement& g) {
    double s = std::sin(2.0 * std::numbers::pi * m.to_chart(g)[0]);
    return s * s;
  };
  f.analytic_integral = 0.5;
  return f;
}

TestFunction TestFunction::user(std::function<double(const GroupModel&, const GroupElement&)> fn,
                                std::optional<CompactRegion> support) {
  TestFunction f;
  f.kind = TestFunctionKind::UserSampled;
  f.fn = std::move(fn);
  f.support = std::move(support);
  return f;
}

HaarEstimate estimate_functional(const FiniteLeftQuasigroup& q, const TestFunction& f,
                                 const CompactRegion& V) {
  const GroupModel& m = *q.model;
  long in_v = 0;
  std::vector<double> values;
  values.reserve(q.embedding.size());
  for (const auto& g : q.embedding) {
    if (m.in_region(g, V)) ++in_v;
    values.push_back(f(m, g));
  }
  if (in_v == 0) throw std::runtime_error("reference set V contains no grid image");
  HaarEstimate est;
  est.delta = 1.0 / static_cast<double>(in_v);
  est.value = est.delta * stable_sum(std::move(values));
  est.reference_V = V;
  est.grid_size = q.n;
  return est;
}

namespace {

HaarEstimate estimate_shifted(const FiniteLeftQuasigroup& q, const TestFunction& f,
                              const CompactRegion& V, const GroupElement& h) {
  const GroupModel& m = *q.model;
  long in_v = 0;
  std::vector<double> values;
  values.reserve(q.embedding.size());
  for (const auto& g : q.embedding) {
    if (m.in_region(g, V)) ++in_v;
    values.push_back(f(m, m.multiply(h, g)));
  }
  if (in_v == 0) throw std::runtime_error("reference set V contains no grid image");
  HaarEstimate est;
  est.delta = 1.0 / static_cast<double>(in_v);
  est.value = est.delta * stable_sum(std::move(values));
  est.reference_V = V;
  est.grid_size = q.n;
  return est;
}

}  // namespace

double lipschitz_estimate(const FiniteLeftQuasigroup& q, const TestFunction& f) {
  const GroupModel& m = *q.model;
  if (q.embedding.size() < 2) return 0.0;
  // Spacing scale: distance from the first point to its nearest neighbor.
  ChartIndex idx(m, q.embedding, 1.0);
  double lip = 0.0;
  for (int i = 0; i < q.n; ++i) {
    const GroupElement& x = q.embedding[static_cast<std::size_t>(i)];
    double fx = f(m, x);
    // Compare against neighbors within a small multiple of the local gap.
    double r = 1.0;
    std::vector<int> near;
    for (int tries = 0; tries < 40; ++tries) {
      near = idx.query(x, r);
      if (near.size() >= 2) break;
      r *= 2.0;
    }
    for (int j : near) {
      if (j == i) continue;
      const GroupElement& y = q.embedding[static_cast<std::size_t>(j)];
      double d = m.distance(x, y);
      if (d <= 0.0) continue;
      lip = std::max(lip, std::abs(f(m, y) - fx) / d);
    }
  }
  return lip;
}

ShiftReport left_shift_check(const FiniteLeftQuasigroup& q, const TestFunction& f,
                             const CompactRegion& V, const std::vector<GroupElement>& shifts,
                             double u_radius) {
  ShiftReport rep;
  rep.lipschitz = lipschitz_estimate(q, f);
  rep.tol = 5.0 * u_radius * rep.lipschitz;
  HaarEstimate base = estimate_functional(q, f, V);
  for (const auto& h : shifts) {
    ShiftMargin sm;
    sm.shift = h;
    sm.i_f = base.value;
    sm.i_shifted = estimate_shifted(q, f, V, h).value;
    sm.margin = sm.i_f - sm.i_shifted;
    sm.violation = sm.margin < -rep.tol;
    rep.margins.push_back(std::move(sm));
  }
  return rep;
}

std::vector<double> invariance_profile(const FiniteLeftQuasigroup& q, const TestFunction& f,
                                       const CompactRegion& V,
                                       const std::vector<GroupElement>& shifts) {
  HaarEstimate base = estimate_functional(q, f, V);
  std::vector<double> out;
  out.reserve(shifts.size());
  for (const auto& h : shifts) {
    double shifted = estimate_shifted(q, f, V, h).value;
    out.push_back(base.value == 0.0 ? 0.0 : std::abs(shifted - base.value) / base.value);
  }
  return out;
}

int translate_cover_bound(const FiniteLeftQuasigroup& q, const CompactRegion& X,
                          double u_radius) {
  const GroupModel& m = *q.model;
  std::vector<GroupElement> points;
  for (const auto& g : q.embedding)
    if (m.in_region(g, X)) points.push_back(g);
  if (points.empty()) return 0;
  return covering_number_greedy(points, q.embedding, u_radius, m).value;
}

}  // namespace qga
