#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace qga {

/// An element of a concrete group model. Coordinates are model-specific;
/// exact (discrete) models keep integer-valued coordinates.
struct GroupElement {
  std::vector<double> coords;
};

bool operator==(const GroupElement& a, const GroupElement& b);

enum class ModelKind { Compact, Discrete, NoncompactContinuous };

/// A box of closed per-coordinate intervals, in model coordinates.
/// For periodic coordinates a span >= period means "the whole circle".
struct CompactRegion {
  std::vector<std::array<double, 2>> bounds;

  int dim() const { return static_cast<int>(bounds.size()); }
};

/// Metric ball of the given radius about the identity.
struct Neighborhood {
  double radius = 0.0;
};

/// How a translated neighborhood is realized: gU (left translation, the
/// default throughout) or Ug (the mirror used by right-quasigroup builds).
enum class Realization { Left, Right };

/// A coordinatized desk-scale model of a locally compact group.
///
/// Every model exposes a per-coordinate "chart": monotone coordinates in
/// which the metric is the max of (possibly wrapped) coordinate gaps. The
/// metric ball of radius r is then exactly a chart box, which keeps
/// neighborhood membership decidable.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  ModelKind kind() const { return kind_; }
  bool unimodular() const { return unimodular_; }
  bool discrete() const { return kind_ == ModelKind::Discrete; }
  /// True when the metric is invariant under left translation, so that
  /// d(x*y^-1, e) <= d(x,e) + d(y,e) holds with no distortion.
  bool invariant_metric() const { return invariant_metric_; }

  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement invert(const GroupElement& a) const = 0;

  /// Chart period of coordinate i; 0 means the coordinate does not wrap.
  virtual double period(int coord) const;
  /// Monotone per-coordinate model->chart map (identity unless overridden).
  virtual double chart_coord(int coord, double v) const;
  virtual double model_coord(int coord, double v) const;

  std::vector<double> to_chart(const GroupElement& a) const;
  GroupElement from_chart(const std::vector<double>& c) const;

  /// Max-of-wrapped-chart-gaps metric.
  double distance(const GroupElement& a, const GroupElement& b) const;

  bool in_region(const GroupElement& a, const CompactRegion& r, double slack = 1e-9) const;
  bool in_ball(const GroupElement& center, double radius, const GroupElement& x,
               double slack = 1e-9) const;

  /// Translated neighborhoods gU are realized by translation of the identity
  /// ball: x lies in center*Ball(e, r) iff distance(e, center^-1 * x) <= r
  /// (mirrored for Realization::Right). Coincides with the metric ball for
  /// invariant-metric models.
  double translate_distance(const GroupElement& center, const GroupElement& x,
                            Realization side = Realization::Left) const;
  bool in_translate(const GroupElement& center, double radius, const GroupElement& x,
                    double slack = 1e-9, Realization side = Realization::Left) const;

  /// Smallest chart box containing the metric ball (it is exactly the ball).
  CompactRegion ball_region(const GroupElement& center, double radius) const;

  /// Chart box containing center*Ball(e, radius) (Ball*center for Right).
  virtual CompactRegion translate_ball_region(const GroupElement& center, double radius,
                                              Realization side = Realization::Left) const;
  /// Chart box containing every f with x in f*Ball(e, radius)
  /// (x in Ball*f for Right).
  virtual CompactRegion translate_center_region(const GroupElement& x, double radius,
                                                Realization side = Realization::Left) const;

  /// Lattice step for a coordinate when the grid is adapted to the given
  /// translation side (denser where translates contract); `prior` holds the
  /// chart values of the coordinates before `coord`.
  virtual double chart_step(int coord, const std::vector<double>& prior, double base,
                            Realization side = Realization::Left) const;

  /// The whole group as a region, for compact models only.
  virtual CompactRegion full_region() const;

  void check_element(const GroupElement& a) const;

 protected:
  GroupModel(std::string name, int dim, ModelKind kind, bool unimodular,
             bool invariant_metric)
      : name_(std::move(name)),
        dim_(dim),
        kind_(kind),
        unimodular_(unimodular),
        invariant_metric_(invariant_metric) {}

  std::string name_;
  int dim_;
  ModelKind kind_;
  bool unimodular_;
  bool invariant_metric_;
};

/// Registry lookup. Names: "circle", "torus", "cyclic:<n>", "zwindow",
/// "affine", "heisenberg".
std::shared_ptr<const GroupModel> make_model(const std::string& name);

inline constexpr std::size_t kDefaultLatticeCap = 200000;

/// Deterministic covering lattice of the region: every region point lies
/// within `spacing` of some returned point (translate sense when `adapted`,
/// via chart_step). Lexicographic chart order.
/// Throws std::runtime_error when the point count would exceed `cap`.
std::vector<GroupElement> lattice_points(const GroupModel& m, const CompactRegion& region,
                                         double spacing,
                                         std::size_t cap = kDefaultLatticeCap,
                                         bool adapted = false,
                                         Realization side = Realization::Left);

}  // namespace qga
