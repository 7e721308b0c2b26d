#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qga {

struct FiniteSemigroup {
  int n = 0;
  std::vector<std::vector<int>> table;
  std::optional<int> zero;

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
};

struct AssocWitness {
  int a = 0, b = 0, c = 0;  // (a*b)*c != a*(b*c)
};

std::optional<AssocWitness> associativity_witness(const std::vector<std::vector<int>>& table);
bool verify_associativity(const std::vector<std::vector<int>>& table);

/// Builds a semigroup from a table, verifying associativity and locating the
/// zero. Throws std::invalid_argument on a non-associative table.
FiniteSemigroup make_semigroup(std::vector<std::vector<int>> table);

/// The unique x with xy = yx = x for all y, if present.
std::optional<int> find_zero(const FiniteSemigroup& s);

/// Smallest ideal containing x (closure under left/right multiplication),
/// as a sorted index set.
std::vector<int> principal_ideal(const FiniteSemigroup& s, int x);

bool is_ideal(const FiniteSemigroup& s, const std::vector<int>& ideal);

/// S = I_0 > I_1 > ... > I_k > {} with no ideal strictly between
/// consecutive entries. Deterministic (lowest-index greedy union).
struct IdealChain {
  std::vector<std::vector<int>> chain;  // sorted index sets; last entry empty
};

IdealChain maximal_ideal_chain(const FiniteSemigroup& s);

/// Rees quotient S/I: carrier (S \ I) plus an adjoined zero at index 0.
struct QuotientResult {
  FiniteSemigroup semigroup;
  std::vector<int> to_quotient;    // original index -> quotient index (0 for members of I)
  std::vector<int> from_quotient;  // quotient index -> original index (-1 for the zero)
};

QuotientResult quotient(const FiniteSemigroup& s, const std::vector<int>& ideal);

/// Quotient of a chain level by the level below it: restricts s to `upper`
/// (an ideal, hence a subsemigroup) and divides out `lower`. The index maps
/// refer to the original semigroup (-1 for the adjoined zero).
QuotientResult chain_quotient(const FiniteSemigroup& s, const std::vector<int>& upper,
                              const std::vector<int>& lower);

enum class Verdict { ZeroSemigroup, ZeroSimple, Group, Other };

struct Classification {
  Verdict verdict = Verdict::Other;
  std::optional<int> unit;                   // for groups
  std::optional<std::vector<int>> bad_ideal; // proper ideal ruling out 0-simple
  std::string detail;
};

Classification classify(const FiniteSemigroup& s);

std::string verdict_name(Verdict v);

/// Rees matrix semigroup S(n, m, H, rho) with adjoined zero at index 0.
/// rho[i][j] is an H index, or -1 for the zero entry.
struct ReesParams {
  int n_rows = 0;
  int m_cols = 0;
  FiniteSemigroup H;  // must be a group
  std::vector<std::vector<int>> rho;

  bool regular() const;
};

/// Element (i, j, h) sits at index 1 + (i*m + j)*|H| + h.
FiniteSemigroup rees_construct(const ReesParams& p);
int rees_index(const ReesParams& p, int i, int j, int h);

/// Subsemigroup x*S*x with the carrier recorded as original indices.
struct SandwichResult {
  FiniteSemigroup semigroup;
  std::vector<int> carrier;  // sandwich index -> original index
};

SandwichResult sandwich(const FiniteSemigroup& s, int x);

/// Staged group recovery: ideal chain, quotient at the near_unit level,
/// classification, sandwich at near_unit, zero stripping, group check.
struct GroupExtraction {
  bool ok = false;
  std::string failed_stage;  // empty on success
  std::string detail;
  FiniteSemigroup group;
  std::vector<int> embedding;  // group index -> index in the input semigroup
};

GroupExtraction extract_group(const FiniteSemigroup& s, int near_unit);

}  // namespace qga
