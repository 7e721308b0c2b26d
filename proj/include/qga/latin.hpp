#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qga/group_models.hpp"

namespace qga {

struct LatinSquare {
  int order = 0;
  std::vector<std::vector<int>> table;
};

/// First violation found scanning rows then columns.
struct LatinViolation {
  bool in_row = true;
  int line = 0;      // row or column index
  int position = 0;  // offset of the duplicate within the line
  int symbol = 0;
};

/// nullopt means the table is a latin square on symbols 0..n-1.
std::optional<LatinViolation> latin_violation(const std::vector<std::vector<int>>& table);
bool verify_latin(const std::vector<std::vector<int>>& table);

/// A partially filled n x n table over symbols 0..num_symbols-1 with no
/// row/column repeats among filled cells. num_symbols may exceed the order.
class PartialLatinSquare {
 public:
  using CellMap = std::map<std::pair<int, int>, int>;

  /// Validates the invariants; throws std::invalid_argument on violation.
  PartialLatinSquare(int order, int num_symbols, CellMap cells);

  int order() const { return order_; }
  int num_symbols() const { return num_symbols_; }
  const CellMap& cells() const { return cells_; }

 private:
  int order_;
  int num_symbols_;
  CellMap cells_;
};

/// A finite fragment of a discrete group: the elements S, with products
/// recorded when they land in the window universe (defaults to S plus every
/// pairwise product).
struct GroupWindow {
  std::shared_ptr<const GroupModel> model;
  std::vector<GroupElement> elements;
  std::optional<std::vector<GroupElement>> universe;  // nullopt: unrestricted
};

/// Partial operation table of a group window. Symbol i < |S| is element i;
/// products outside S get fresh symbols in first-appearance order.
struct WindowPartial {
  PartialLatinSquare partial;
  std::vector<GroupElement> symbol_elements;  // symbol index -> group element
};

WindowPartial window_to_partial(const GroupWindow& w);

/// Extends an r x n latin rectangle on n symbols by one row (the SDR step;
/// always succeeds for a valid rectangle).
std::vector<std::vector<int>> extend_rectangle(const std::vector<std::vector<int>>& rect);

/// Completes a partial to a latin square of order max(2n, k); the result
/// restricted to the filled cells equals the partial.
LatinSquare embed_partial(const PartialLatinSquare& p);

}  // namespace qga
