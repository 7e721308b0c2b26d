#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qga/approximation.hpp"
#include "qga/group_models.hpp"

namespace qga {

/// Deterministic permutation-invariant summation: sorts the values, then
/// reduces them with a fixed binary tree.
double stable_sum(std::vector<double> values);

enum class TestFunctionKind { Constant, Bump, Trig, UserSampled };

/// A compactly supported test function on a group model.
struct TestFunction {
  TestFunctionKind kind = TestFunctionKind::Constant;
  std::vector<double> params;
  std::optional<double> analytic_integral;  // normalized Haar, when known
  std::optional<CompactRegion> support;
  std::function<double(const GroupModel&, const GroupElement&)> fn;

  double operator()(const GroupModel& m, const GroupElement& g) const { return fn(m, g); }

  static TestFunction constant(double c);
  /// (1 - (d(x,center)/radius)^2)^2 inside the ball, 0 outside.
  static TestFunction bump(GroupElement center, double radius);
  /// sin^2(2*pi*x0) in the first chart coordinate.
  static TestFunction trig();
  static TestFunction user(std::function<double(const GroupModel&, const GroupElement&)> f,
                           std::optional<CompactRegion> support = std::nullopt);
};

struct HaarEstimate {
  double value = 0.0;
  double delta = 0.0;
  CompactRegion reference_V;
  int grid_size = 0;
};

/// I(f) = delta * sum_h f(j(h)) with delta^-1 = |{h : j(h) in V}|.
/// Throws std::runtime_error when no grid point lands in V.
HaarEstimate estimate_functional(const FiniteLeftQuasigroup& q, const TestFunction& f,
                                 const CompactRegion& V);

struct ShiftMargin {
  GroupElement shift;
  double i_f = 0.0;
  double i_shifted = 0.0;  // I(l_h f), l_h f (a) = f(h * a)
  double margin = 0.0;     // i_f - i_shifted
  bool violation = false;  // margin < -tol
};

struct ShiftReport {
  std::vector<ShiftMargin> margins;
  double tol = 0.0;
  double lipschitz = 0.0;
};

/// Margins I(f) - I(l_h f) per shift; tol = 5 * u_radius * Lip(f) with a
/// finite-difference Lipschitz estimate over the grid.
ShiftReport left_shift_check(const FiniteLeftQuasigroup& q, const TestFunction& f,
                             const CompactRegion& V, const std::vector<GroupElement>& shifts,
                             double u_radius);

/// Relative deviations |I(l_h f) - I(f)| / I(f) per shift.
std::vector<double> invariance_profile(const FiniteLeftQuasigroup& q, const TestFunction& f,
                                       const CompactRegion& V,
                                       const std::vector<GroupElement>& shifts);

/// Max |f(x)-f(y)| / d(x,y) over nearby grid-point pairs.
double lipschitz_estimate(const FiniteLeftQuasigroup& q, const TestFunction& f);

/// Upper bound C for I(f) <= C * sup f: greedy count of radius-u_radius
/// grid-ball translates covering the grid points inside X.
int translate_cover_bound(const FiniteLeftQuasigroup& q, const CompactRegion& X,
                          double u_radius);

}  // namespace qga
