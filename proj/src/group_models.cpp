#include "qga/group_models.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qga {

namespace {

double wrap_unit(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;  // guards against -1e-18 rounding up
  return f;
}

double wrapped_gap(double a, double b, double period) {
  double d = std::fabs(a - b);
  if (period > 0.0) {
    d = std::fmod(d, period);
    d = std::min(d, period - d);
  }
  return d;
}

}  // namespace

bool operator==(const GroupElement& a, const GroupElement& b) {
  return a.coords == b.coords;
}

double GroupModel::period(int) const { return 0.0; }

double GroupModel::chart_coord(int, double v) const { return v; }

double GroupModel::model_coord(int, double v) const { return v; }

std::vector<double> GroupModel::to_chart(const GroupElement& a) const {
  check_element(a);
  std::vector<double> c(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) c[i] = chart_coord(i, a.coords[i]);
  return c;
}

GroupElement GroupModel::from_chart(const std::vector<double>& c) const {
  if (static_cast<int>(c.size()) != dim_)
    throw std::invalid_argument("chart dimension mismatch for model " + name_);
  GroupElement a;
  a.coords.resize(c.size());
  for (int i = 0; i < dim_; ++i) a.coords[i] = model_coord(i, c[i]);
  return a;
}

double GroupModel::distance(const GroupElement& a, const GroupElement& b) const {
  auto ca = to_chart(a);
  auto cb = to_chart(b);
  double d = 0.0;
  for (int i = 0; i < dim_; ++i) d = std::max(d, wrapped_gap(ca[i], cb[i], period(i)));
  return d;
}

bool GroupModel::in_region(const GroupElement& a, const CompactRegion& r, double slack) const {
  if (r.dim() != dim_) throw std::invalid_argument("region dimension mismatch");
  auto c = to_chart(a);
  for (int i = 0; i < dim_; ++i) {
    double lo = chart_coord(i, r.bounds[i][0]);
    double hi = chart_coord(i, r.bounds[i][1]);
    double p = period(i);
    if (p > 0.0 && hi - lo >= p - slack) continue;  // whole circle
    double x = c[i];
    bool inside = (x >= lo - slack && x <= hi + slack);
    if (!inside && p > 0.0)
      inside = (x + p >= lo - slack && x + p <= hi + slack) ||
               (x - p >= lo - slack && x - p <= hi + slack);
    if (!inside) return false;
  }
  return true;
}

bool GroupModel::in_ball(const GroupElement& center, double radius, const GroupElement& x,
                         double slack) const {
  return distance(center, x) <= radius + slack;
}

double GroupModel::translate_distance(const GroupElement& center, const GroupElement& x,
                                      Realization side) const {
  if (invariant_metric_) return distance(center, x);
  if (side == Realization::Left) return distance(identity(), multiply(invert(center), x));
  return distance(identity(), multiply(x, invert(center)));
}

bool GroupModel::in_translate(const GroupElement& center, double radius, const GroupElement& x,
                              double slack, Realization side) const {
  return translate_distance(center, x, side) <= radius + slack;
}

CompactRegion GroupModel::translate_ball_region(const GroupElement& center, double radius,
                                                Realization) const {
  return ball_region(center, radius);
}

CompactRegion GroupModel::translate_center_region(const GroupElement& x, double radius,
                                                  Realization) const {
  return ball_region(x, radius);
}

double GroupModel::chart_step(int, const std::vector<double>&, double base, Realization) const {
  return base;
}

CompactRegion GroupModel::ball_region(const GroupElement& center, double radius) const {
  auto c = to_chart(center);
  CompactRegion r;
  r.bounds.resize(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    r.bounds[i] = {model_coord(i, c[i] - radius), model_coord(i, c[i] + radius)};
  }
  return r;
}

CompactRegion GroupModel::full_region() const {
  throw std::invalid_argument("model " + name_ + " is not compact: a bounded region is required");
}

void GroupModel::check_element(const GroupElement& a) const {
  if (static_cast<int>(a.coords.size()) != dim_)
    throw std::invalid_argument("element dimension mismatch for model " + name_);
}

namespace {

class CircleModel final : public GroupModel {
 public:
  CircleModel() : GroupModel("circle", 1, ModelKind::Compact, true, true) {}

  GroupElement identity() const override { return {{0.0}}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    check_element(a);
    check_element(b);
    return {{wrap_unit(a.coords[0] + b.coords[0])}};
  }

  GroupElement invert(const GroupElement& a) const override {
    check_element(a);
    return {{wrap_unit(-a.coords[0])}};
  }

  double period(int) const override { return 1.0; }

  double model_coord(int, double v) const override { return wrap_unit(v); }

  CompactRegion full_region() const override { return {{{0.0, 1.0}}}; }
};

class TorusModel final : public GroupModel {
 public:
  TorusModel() : GroupModel("torus", 2, ModelKind::Compact, true, true) {}

  GroupElement identity() const override { return {{0.0, 0.0}}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    check_element(a);
    check_element(b);
    return {{wrap_unit(a.coords[0] + b.coords[0]), wrap_unit(a.coords[1] + b.coords[1])}};
  }

  GroupElement invert(const GroupElement& a) const override {
    check_element(a);
    return {{wrap_unit(-a.coords[0]), wrap_unit(-a.coords[1])}};
  }

  double period(int) const override { return 1.0; }

  double model_coord(int, double v) const override { return wrap_unit(v); }

  CompactRegion full_region() const override { return {{{0.0, 1.0}, {0.0, 1.0}}}; }
};

class CyclicModel final : public GroupModel {
 public:
  explicit CyclicModel(long n)
      : GroupModel("cyclic:" + std::to_string(n), 1, ModelKind::Discrete, true, true), n_(n) {
    if (n <= 0) throw std::invalid_argument("cyclic order must be positive");
  }

  GroupElement identity() const override { return {{0.0}}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    check_element(a);
    check_element(b);
    return {{mod(a.coords[0] + b.coords[0])}};
  }

  GroupElement invert(const GroupElement& a) const override {
    check_element(a);
    return {{mod(-a.coords[0])}};
  }

  double period(int) const override { return static_cast<double>(n_); }

  double model_coord(int, double v) const override { return mod(v); }

  CompactRegion full_region() const override {
    return {{{0.0, static_cast<double>(n_)}}};
  }

 private:
  double mod(double v) const {
    double n = static_cast<double>(n_);
    double r = std::fmod(v, n);
    if (r < 0) r += n;
    return r;
  }

  long n_;
};

class ZWindowModel final : public GroupModel {
 public:
  ZWindowModel() : GroupModel("zwindow", 1, ModelKind::Discrete, true, true) {}

  GroupElement identity() const override { return {{0.0}}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    check_element(a);
    check_element(b);
    return {{a.coords[0] + b.coords[0]}};
  }

  GroupElement invert(const GroupElement& a) const override {
    check_element(a);
    return {{-a.coords[0]}};
  }
};

// Maps x |-> a*x + b with a > 0; element coords (a, b). Chart (log a, b)
// keeps inversion continuity at desk scale; the metric is not invariant.
class AffineModel final : public GroupModel {
 public:
  AffineModel() : GroupModel("affine", 2, ModelKind::NoncompactContinuous, false, false) {}

  GroupElement identity() const override { return {{1.0, 0.0}}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    check_element(a);
    check_element(b);
    return {{a.coords[0] * b.coords[0], a.coords[0] * b.coords[1] + a.coords[1]}};
  }

  GroupElement invert(const GroupElement& a) const override {
    check_element(a);
    if (a.coords[0] == 0.0)
      throw std::invalid_argument("affine element with a=0 is not invertible");
    return {{1.0 / a.coords[0], -a.coords[1] / a.coords[0]}};
  }

  double chart_coord(int coord, double v) const override {
    if (coord == 0) {
      if (v <= 0.0) throw std::invalid_argument("affine a-coordinate must be positive");
      return std::log(v);
    }
    return v;
  }

  double model_coord(int coord, double v) const override {
    return coord == 0 ? std::exp(v) : v;
  }

  // Left translation by (a, b) scales the b-extent of a neighborhood by a;
  // right translation shears it by the b-coordinate instead.
  CompactRegion translate_ball_region(const GroupElement& center, double radius,
                                      Realization side) const override {
    double a = center.coords[0];
    double b = center.coords[1];
    double bw = (side == Realization::Left)
                    ? a * radius
                    : radius + (std::exp(radius) - 1.0) * std::fabs(b);
    return {{{a * std::exp(-radius), a * std::exp(radius)}, {b - bw, b + bw}}};
  }

  CompactRegion translate_center_region(const GroupElement& x, double radius,
                                        Realization side) const override {
    double a = x.coords[0];
    double b = x.coords[1];
    double bw = (side == Realization::Left)
                    ? a * radius * std::exp(radius)
                    : radius * std::exp(radius) + (std::exp(radius) - 1.0) * std::fabs(b);
    return {{{a * std::exp(-radius), a * std::exp(radius)}, {b - bw, b + bw}}};
  }

  double chart_step(int coord, const std::vector<double>& prior, double base,
                    Realization side) const override {
    return (side == Realization::Left && coord == 1) ? base * std::exp(prior[0]) : base;
  }
};

// Integer upper-triangular 3x3 matrices, coords (x, y, z) standing for
// [[1,x,z],[0,1,y],[0,0,1]].
class HeisenbergModel final : public GroupModel {
 public:
  HeisenbergModel() : GroupModel("heisenberg", 3, ModelKind::Discrete, true, false) {}

  GroupElement identity() const override { return {{0.0, 0.0, 0.0}}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    check_element(a);
    check_element(b);
    return {{a.coords[0] + b.coords[0], a.coords[1] + b.coords[1],
             a.coords[2] + b.coords[2] + a.coords[0] * b.coords[1]}};
  }

  GroupElement invert(const GroupElement& a) const override {
    check_element(a);
    return {{-a.coords[0], -a.coords[1], a.coords[0] * a.coords[1] - a.coords[2]}};
  }

  CompactRegion translate_ball_region(const GroupElement& center, double radius,
                                      Realization side) const override {
    double skew = std::fabs(side == Realization::Left ? center.coords[0] : center.coords[1]);
    double zw = radius * (1.0 + skew);
    return {{{center.coords[0] - radius, center.coords[0] + radius},
             {center.coords[1] - radius, center.coords[1] + radius},
             {center.coords[2] - zw, center.coords[2] + zw}}};
  }

  CompactRegion translate_center_region(const GroupElement& x, double radius,
                                        Realization side) const override {
    double skew = std::fabs(side == Realization::Left ? x.coords[0] : x.coords[1]);
    double zw = radius * (1.0 + radius + skew);
    return {{{x.coords[0] - radius, x.coords[0] + radius},
             {x.coords[1] - radius, x.coords[1] + radius},
             {x.coords[2] - zw, x.coords[2] + zw}}};
  }
};

}  // namespace

std::shared_ptr<const GroupModel> make_model(const std::string& name) {
  if (name == "circle") return std::make_shared<CircleModel>();
  if (name == "torus") return std::make_shared<TorusModel>();
  if (name == "zwindow") return std::make_shared<ZWindowModel>();
  if (name == "affine") return std::make_shared<AffineModel>();
  if (name == "heisenberg") return std::make_shared<HeisenbergModel>();
  if (name.rfind("cyclic:", 0) == 0) {
    char* end = nullptr;
    long n = std::strtol(name.c_str() + 7, &end, 10);
    if (end == nullptr || *end != '\0' || n <= 0)
      throw std::invalid_argument("bad cyclic order in model name '" + name + "'");
    return std::make_shared<CyclicModel>(n);
  }
  throw std::invalid_argument("unknown model name '" + name + "'");
}

namespace {

std::vector<double> axis_values(const GroupModel& m, int coord, double lo, double hi,
                                double spacing) {
  std::vector<double> axis;
  double p = m.period(coord);
  if (m.discrete()) {
    long step = std::max(1L, static_cast<long>(std::floor(spacing + 1e-9)));
    if (p > 0.0 && hi - lo >= p - 1e-9) {
      long n = static_cast<long>(std::llround(p));
      for (long v = 0; v < n; v += step) axis.push_back(static_cast<double>(v));
    } else {
      long first = static_cast<long>(std::ceil(lo - 1e-9));
      long last = static_cast<long>(std::floor(hi + 1e-9));
      for (long v = first; v <= last; v += step) axis.push_back(static_cast<double>(v));
    }
  } else if (p > 0.0 && hi - lo >= p - 1e-9) {
    // Whole circle: close the wrap with a uniform division.
    long n = std::max(1L, static_cast<long>(std::ceil(p / spacing - 1e-9)));
    double step = p / static_cast<double>(n);
    for (long k = 0; k < n; ++k) axis.push_back(static_cast<double>(k) * step);
  } else {
    for (double v = lo; v <= hi + 1e-12; v += spacing) axis.push_back(v);
  }
  if (axis.empty()) throw std::invalid_argument("region interval produced no lattice values");
  return axis;
}

}  // namespace

std::vector<GroupElement> lattice_points(const GroupModel& m, const CompactRegion& region,
                                         double spacing, std::size_t cap, bool adapted,
                                         Realization side) {
  if (spacing <= 0.0) throw std::invalid_argument("lattice spacing must be positive");
  if (region.dim() != m.dim()) throw std::invalid_argument("region dimension mismatch");

  const int d = m.dim();
  std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    lo[static_cast<std::size_t>(i)] = m.chart_coord(i, region.bounds[static_cast<std::size_t>(i)][0]);
    hi[static_cast<std::size_t>(i)] = m.chart_coord(i, region.bounds[static_cast<std::size_t>(i)][1]);
    if (hi[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)])
      throw std::invalid_argument("empty region interval");
  }

  // Axes are generated coordinate by coordinate so the step may depend on
  // the values already fixed (adapted grids).
  std::vector<GroupElement> out;
  std::vector<double> chart;
  auto recurse = [&](auto&& self, int coord) -> void {
    if (coord == d) {
      if (out.size() >= cap) throw std::runtime_error("lattice point cap exceeded");
      out.push_back(m.from_chart(chart));
      return;
    }
    double step = adapted ? m.chart_step(coord, chart, spacing, side) : spacing;
    auto axis = axis_values(m, coord, lo[static_cast<std::size_t>(coord)],
                            hi[static_cast<std::size_t>(coord)], step);
    for (double v : axis) {
      chart.push_back(v);
      self(self, coord + 1);
      chart.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace qga
