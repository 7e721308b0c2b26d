#include "qga/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace qga {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

void validate(const SetSystem& g) {
  for (const auto& s : g.sets)
    for (int e : s)
      if (e < 0 || e >= g.universe_size)
        throw std::invalid_argument("set system index out of universe range");
}

// Hopcroft-Karp with lexicographic tie-breaking: sets and adjacency are
// processed in ascending index order, which pins the output table.
struct HopcroftKarp {
  const SetSystem& g;
  int m;
  std::vector<std::vector<int>> adj;  // sorted copies
  std::vector<int> match_set;         // set -> element
  std::vector<int> match_elem;        // element -> set
  std::vector<int> dist;

  explicit HopcroftKarp(const SetSystem& sys)
      : g(sys),
        m(static_cast<int>(sys.sets.size())),
        adj(sys.sets),
        match_set(static_cast<std::size_t>(m), -1),
        match_elem(static_cast<std::size_t>(sys.universe_size), -1),
        dist(static_cast<std::size_t>(m), kInf) {
    for (auto& a : adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }

  bool bfs() {
    std::queue<int> q;
    bool reachable_free = false;
    for (int i = 0; i < m; ++i) {
      if (match_set[static_cast<std::size_t>(i)] == -1) {
        dist[static_cast<std::size_t>(i)] = 0;
        q.push(i);
      } else {
        dist[static_cast<std::size_t>(i)] = kInf;
      }
    }
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int e : adj[static_cast<std::size_t>(i)]) {
        int j = match_elem[static_cast<std::size_t>(e)];
        if (j == -1) {
          reachable_free = true;
        } else if (dist[static_cast<std::size_t>(j)] == kInf) {
          dist[static_cast<std::size_t>(j)] = dist[static_cast<std::size_t>(i)] + 1;
          q.push(j);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int i) {
    for (int e : adj[static_cast<std::size_t>(i)]) {
      int j = match_elem[static_cast<std::size_t>(e)];
      if (j == -1 || (dist[static_cast<std::size_t>(j)] == dist[static_cast<std::size_t>(i)] + 1 && dfs(j))) {
        match_set[static_cast<std::size_t>(i)] = e;
        match_elem[static_cast<std::size_t>(e)] = i;
        return true;
      }
    }
    dist[static_cast<std::size_t>(i)] = kInf;
    return false;
  }

  void run() {
    while (bfs()) {
      for (int i = 0; i < m; ++i)
        if (match_set[static_cast<std::size_t>(i)] == -1) dfs(i);
    }
  }
};

}  // namespace

std::vector<int> max_matching(const SetSystem& g) {
  validate(g);
  HopcroftKarp hk(g);
  hk.run();
  return hk.match_set;
}

SdrResult sdr(const SetSystem& g) {
  validate(g);
  HopcroftKarp hk(g);
  hk.run();

  int unmatched = -1;
  for (int i = 0; i < static_cast<int>(g.sets.size()); ++i) {
    if (hk.match_set[static_cast<std::size_t>(i)] == -1) {
      unmatched = i;
      break;
    }
  }
  if (unmatched == -1) return {hk.match_set, std::nullopt};

  // Alternating tree from the unmatched set: every reachable set joins the
  // violator. With a maximum matching |N(S)| = |S| - 1 < |S|.
  std::vector<char> in_s(g.sets.size(), 0);
  std::vector<char> seen_elem(static_cast<std::size_t>(g.universe_size), 0);
  std::queue<int> q;
  q.push(unmatched);
  in_s[static_cast<std::size_t>(unmatched)] = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int e : g.sets[static_cast<std::size_t>(i)]) {
      if (seen_elem[static_cast<std::size_t>(e)]) continue;
      seen_elem[static_cast<std::size_t>(e)] = 1;
      int j = hk.match_elem[static_cast<std::size_t>(e)];
      if (j != -1 && !in_s[static_cast<std::size_t>(j)]) {
        in_s[static_cast<std::size_t>(j)] = 1;
        q.push(j);
      }
    }
  }
  std::vector<int> violator;
  for (int i = 0; i < static_cast<int>(g.sets.size()); ++i)
    if (in_s[static_cast<std::size_t>(i)]) violator.push_back(i);
  return {std::nullopt, violator};
}

bool certifies_violation(const SetSystem& g, const std::vector<int>& violator) {
  std::set<int> uni;
  for (int i : violator) {
    if (i < 0 || i >= static_cast<int>(g.sets.size())) return false;
    uni.insert(g.sets[static_cast<std::size_t>(i)].begin(), g.sets[static_cast<std::size_t>(i)].end());
  }
  return uni.size() < violator.size();
}

}  // namespace qga
