#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qga/chart_index.hpp"
#include "qga/covering.hpp"
#include "qga/group_models.hpp"

namespace qga {

enum class Side { Left, Right };

struct ApproximationProblem {
  std::shared_ptr<const GroupModel> model;
  CompactRegion C;
  Neighborhood U;
  Side side = Side::Left;
};

/// The candidate sets A_{g,h}: for g,h in the core (grid points inside C)
/// the grid points in the O O^-1 translate of g*h; the full grid elsewhere.
/// Stored sparsely: only core pairs are materialized on demand. pair_radius
/// is the verified radius of O O^-1 (2*O.radius for invariant metrics).
class CandidateFamily {
 public:
  CandidateFamily(const GroupModel& m, Cover grid, std::vector<int> core, double o_radius,
                  double pair_radius, Realization realization);

  const Cover& grid() const { return grid_; }
  const std::vector<int>& core() const { return core_; }
  double o_radius() const { return o_radius_; }
  double pair_radius() const { return pair_radius_; }
  Realization realization() const { return realization_; }
  bool is_core(int f_index) const { return core_mask_[static_cast<std::size_t>(f_index)] != 0; }

  /// Candidate set for the pair (g, h), as sorted grid indices.
  std::vector<int> candidates_for(int g_index, int h_index) const;

 private:
  const GroupModel& model_;
  Cover grid_;
  std::vector<int> core_;
  std::vector<char> core_mask_;
  double o_radius_;
  double pair_radius_;
  Realization realization_;
  std::unique_ptr<ChartIndex> index_;
};

struct FiniteLeftQuasigroup {
  std::shared_ptr<const GroupModel> model;
  int n = 0;
  std::vector<std::vector<int>> table;  // table[g][h] = g (.) h
  std::vector<GroupElement> embedding;  // j : index -> group element
  Side side = Side::Left;

  /// Left division /(b, a): the unique x with a (.) x = b (row lookup).
  /// For side = Right, the unique x with x (.) a = b.
  int divide(int b, int a) const;
};

/// Hall failure for one row (column for side=right): the candidate sets of
/// the listed partners have a union smaller than the set count.
struct HallViolation {
  int anchor = 0;                  // grid index of the fixed factor
  std::vector<int> partner_set;    // grid indices h with violating A_{g,h}
  std::vector<int> union_elements; // union of those candidate sets
};

struct HomWitness {
  int x = 0;
  int y = 0;
  double defect = 0.0;
};

struct ApproximationReport {
  bool structure_ok = true;   // rows (or columns) are permutations, j injective
  std::string structure_error;
  double grid_defect = 0.0;
  double hom_defect = 0.0;
  long qualifying_pairs = 0;
  std::optional<HomWitness> worst_pair;
  int retries = 0;
  bool pass = false;
};

/// Picks O with the ball product O O^-1 inside U (sampled verification for
/// non-invariant metrics) and a compact K containing C*C and C*U, inflated
/// by one O radius.
std::pair<Neighborhood, CompactRegion> choose_parameters(
    const ApproximationProblem& p, std::optional<double> forced_radius = std::nullopt);

CandidateFamily build_candidates(const ApproximationProblem& p, Neighborhood O,
                                 const CompactRegion& K, std::size_t cap = kDefaultLatticeCap);

/// One SDR per row (per column for side=right); partners outside the core
/// keep the identity assignment since their candidate set is all of F.
std::variant<FiniteLeftQuasigroup, HallViolation> solve_left_quasigroup(
    const CandidateFamily& cf, const ApproximationProblem& p);

/// Full pipeline with O-refinement: halves the O radius on a Hall violation,
/// up to max_retries times.
std::pair<FiniteLeftQuasigroup, ApproximationReport> build_approximation(
    const ApproximationProblem& p, int max_retries = 4, std::size_t cap = kDefaultLatticeCap);

/// Independent re-check of Definition-3 conditions by dense sampling of C
/// and a full scan of qualifying pairs.
ApproximationReport verify_approximation(const FiniteLeftQuasigroup& q,
                                         const ApproximationProblem& p);

}  // namespace qga
