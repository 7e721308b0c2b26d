#pragma once

#include <optional>
#include <vector>

namespace qga {

/// A family of index subsets F_0..F_{m-1} over a universe {0..n-1}.
struct SetSystem {
  int universe_size = 0;
  std::vector<std::vector<int>> sets;
};

/// Maximum bipartite matching, sets vs universe elements.
/// Returns match[i] = element chosen for set i, or -1. Deterministic:
/// lexicographic augmenting-path selection.
std::vector<int> max_matching(const SetSystem& g);

/// Either a full system of distinct representatives or a Hall violator:
/// a subset S of set indices with |union of F_k, k in S| < |S|.
struct SdrResult {
  std::optional<std::vector<int>> representatives;
  std::optional<std::vector<int>> violator;

  bool ok() const { return representatives.has_value(); }
};

SdrResult sdr(const SetSystem& g);

/// Direct union-size check of a claimed violator.
bool certifies_violation(const SetSystem& g, const std::vector<int>& violator);

}  // namespace qga
