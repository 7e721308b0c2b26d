#include "qga/latin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qga/matching.hpp"

namespace qga {

std::optional<LatinViolation> latin_violation(const std::vector<std::vector<int>>& table) {
  int n = static_cast<int>(table.size());
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(table[static_cast<std::size_t>(i)].size()) != n)
      throw std::invalid_argument("latin table is not square");

  std::vector<int> seen(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), -1);
    for (int j = 0; j < n; ++j) {
      int s = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (s < 0 || s >= n) return LatinViolation{true, i, j, s};
      if (seen[static_cast<std::size_t>(s)] >= 0) return LatinViolation{true, i, j, s};
      seen[static_cast<std::size_t>(s)] = j;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), -1);
    for (int i = 0; i < n; ++i) {
      int s = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (seen[static_cast<std::size_t>(s)] >= 0) return LatinViolation{false, j, i, s};
      seen[static_cast<std::size_t>(s)] = i;
    }
  }
  return std::nullopt;
}

bool verify_latin(const std::vector<std::vector<int>>& table) {
  return !latin_violation(table).has_value();
}

PartialLatinSquare::PartialLatinSquare(int order, int num_symbols, CellMap cells)
    : order_(order), num_symbols_(num_symbols), cells_(std::move(cells)) {
  if (order_ <= 0) throw std::invalid_argument("partial latin square order must be positive");
  if (num_symbols_ < 0) throw std::invalid_argument("negative symbol count");
  std::vector<std::vector<char>> row_used(static_cast<std::size_t>(order_),
                                          std::vector<char>(static_cast<std::size_t>(num_symbols_), 0));
  std::vector<std::vector<char>> col_used = row_used;
  for (const auto& [rc, s] : cells_) {
    auto [r, c] = rc;
    if (r < 0 || r >= order_ || c < 0 || c >= order_)
      throw std::invalid_argument("partial latin square cell out of range");
    if (s < 0 || s >= num_symbols_)
      throw std::invalid_argument("partial latin square symbol out of range");
    if (row_used[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)])
      throw std::invalid_argument("symbol " + std::to_string(s) + " repeats in row " + std::to_string(r));
    if (col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)])
      throw std::invalid_argument("symbol " + std::to_string(s) + " repeats in column " + std::to_string(c));
    row_used[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = 1;
    col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = 1;
  }
}

namespace {

std::vector<long long> element_key(const GroupModel& m, const GroupElement& e) {
  m.check_element(e);
  std::vector<long long> k;
  k.reserve(e.coords.size());
  for (double c : e.coords) k.push_back(std::llround(c));
  return k;
}

}  // namespace

WindowPartial window_to_partial(const GroupWindow& w) {
  if (!w.model) throw std::invalid_argument("group window has no model");
  const GroupModel& m = *w.model;
  if (!m.discrete()) throw std::invalid_argument("group windows require a discrete model");

  const int n = static_cast<int>(w.elements.size());
  if (n == 0) throw std::invalid_argument("empty group window");

  std::map<std::vector<long long>, int> sym_of;
  std::vector<GroupElement> symbol_elements;
  for (int i = 0; i < n; ++i) {
    auto key = element_key(m, w.elements[static_cast<std::size_t>(i)]);
    if (!sym_of.emplace(key, i).second)
      throw std::invalid_argument("group window elements are not distinct");
    symbol_elements.push_back(w.elements[static_cast<std::size_t>(i)]);
  }

  std::optional<std::map<std::vector<long long>, GroupElement>> universe;
  if (w.universe) {
    universe.emplace();
    for (const auto& u : *w.universe) universe->emplace(element_key(m, u), u);
    for (const auto& e : w.elements)
      if (!universe->count(element_key(m, e)))
        throw std::invalid_argument("window universe must contain the window elements");
  }

  PartialLatinSquare::CellMap cells;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      GroupElement prod = m.multiply(w.elements[static_cast<std::size_t>(i)], w.elements[static_cast<std::size_t>(j)]);
      auto key = element_key(m, prod);
      if (universe && !universe->count(key)) continue;
      auto it = sym_of.find(key);
      int s;
      if (it == sym_of.end()) {
        s = static_cast<int>(symbol_elements.size());
        sym_of.emplace(key, s);
        symbol_elements.push_back(prod);
      } else {
        s = it->second;
      }
      cells[{i, j}] = s;
    }
  }

  PartialLatinSquare p(n, static_cast<int>(symbol_elements.size()), std::move(cells));
  return {std::move(p), std::move(symbol_elements)};
}

std::vector<std::vector<int>> extend_rectangle(const std::vector<std::vector<int>>& rect) {
  if (rect.empty()) throw std::invalid_argument("empty rectangle");
  const int ncols = static_cast<int>(rect.front().size());
  const int nrows = static_cast<int>(rect.size());
  if (nrows >= ncols) throw std::invalid_argument("rectangle already square");
  std::vector<std::vector<char>> col_used(static_cast<std::size_t>(ncols),
                                          std::vector<char>(static_cast<std::size_t>(ncols), 0));
  for (const auto& row : rect) {
    if (static_cast<int>(row.size()) != ncols) throw std::invalid_argument("ragged rectangle");
    std::vector<char> row_used(static_cast<std::size_t>(ncols), 0);
    for (int c = 0; c < ncols; ++c) {
      int s = row[static_cast<std::size_t>(c)];
      if (s < 0 || s >= ncols) throw std::invalid_argument("rectangle symbol out of range");
      if (row_used[static_cast<std::size_t>(s)] || col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)])
        throw std::invalid_argument("input is not a latin rectangle");
      row_used[static_cast<std::size_t>(s)] = 1;
      col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = 1;
    }
  }

  SetSystem sys;
  sys.universe_size = ncols;
  sys.sets.resize(static_cast<std::size_t>(ncols));
  for (int c = 0; c < ncols; ++c)
    for (int s = 0; s < ncols; ++s)
      if (!col_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]) sys.sets[static_cast<std::size_t>(c)].push_back(s);

  SdrResult res = sdr(sys);
  if (!res.ok())
    throw std::logic_error("rectangle extension SDR failed (impossible for a latin rectangle)");

  auto out = rect;
  out.push_back(*res.representatives);
  return out;
}

namespace {

// Matching between rows and symbols for one new column, saturating all rows
// and forced to use every listed critical symbol.
struct ColumnMatcher {
  int n_rows;
  int n_syms;
  const std::vector<std::vector<char>>& row_has;  // row_has[i][s]
  std::vector<int> match_row;                     // row -> symbol
  std::vector<int> match_sym;                     // symbol -> row

  ColumnMatcher(int rows, int syms, const std::vector<std::vector<char>>& has)
      : n_rows(rows), n_syms(syms), row_has(has),
        match_row(static_cast<std::size_t>(rows), -1),
        match_sym(static_cast<std::size_t>(syms), -1) {}

  bool augment_from_symbol(int s, std::vector<char>& visited_rows) {
    for (int i = 0; i < n_rows; ++i) {
      if (row_has[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]) continue;
      if (visited_rows[static_cast<std::size_t>(i)]) continue;
      visited_rows[static_cast<std::size_t>(i)] = 1;
      int s2 = match_row[static_cast<std::size_t>(i)];
      if (s2 == -1 || augment_from_symbol(s2, visited_rows)) {
        match_row[static_cast<std::size_t>(i)] = s;
        match_sym[static_cast<std::size_t>(s)] = i;
        return true;
      }
    }
    return false;
  }

  bool augment_from_row(int i, std::vector<char>& visited_syms) {
    for (int s = 0; s < n_syms; ++s) {
      if (row_has[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]) continue;
      if (visited_syms[static_cast<std::size_t>(s)]) continue;
      visited_syms[static_cast<std::size_t>(s)] = 1;
      int i2 = match_sym[static_cast<std::size_t>(s)];
      if (i2 == -1 || augment_from_row(i2, visited_syms)) {
        match_row[static_cast<std::size_t>(i)] = s;
        match_sym[static_cast<std::size_t>(s)] = i;
        return true;
      }
    }
    return false;
  }
};

LatinSquare cyclic_square(int r) {
  LatinSquare sq;
  sq.order = r;
  sq.table.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) sq.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % r;
  return sq;
}

}  // namespace

LatinSquare embed_partial(const PartialLatinSquare& p) {
  const int n = p.order();
  const int k = p.num_symbols();
  const int r = std::max(2 * n, k);

  if (p.cells().empty()) return cyclic_square(r);

  // Block completion: fill every empty cell of the n x n frame over the r
  // symbols, row by row via SDR. With r >= 2n the Hall condition always
  // holds for the per-row candidate sets.
  std::vector<std::vector<int>> block(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<std::vector<char>> row_used(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(r), 0));
  std::vector<std::vector<char>> col_used = row_used;
  for (const auto& [rc, s] : p.cells()) {
    auto [i, j] = rc;
    block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    row_used[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = 1;
    col_used[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = 1;
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> empty_cols;
    for (int j = 0; j < n; ++j)
      if (block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0) empty_cols.push_back(j);
    if (empty_cols.empty()) continue;
    SetSystem sys;
    sys.universe_size = r;
    for (int j : empty_cols) {
      std::vector<int> allowed;
      for (int s = 0; s < r; ++s)
        if (!row_used[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] && !col_used[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)])
          allowed.push_back(s);
      sys.sets.push_back(std::move(allowed));
    }
    SdrResult res = sdr(sys);
    if (!res.ok()) throw std::logic_error("block completion SDR failed (violates the order bound)");
    for (std::size_t t = 0; t < empty_cols.size(); ++t) {
      int j = empty_cols[t];
      int s = (*res.representatives)[t];
      block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      row_used[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = 1;
      col_used[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = 1;
    }
  }

  // Column extension to an n x r rectangle. Symbols whose occurrence count
  // sits at the Ryser bound n+q-r are forced into the next column.
  std::vector<int> occ(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ++occ[static_cast<std::size_t>(block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])];
  std::vector<std::vector<int>> rect = block;  // grows to n x r
  std::vector<std::vector<char>> row_has(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) row_has[static_cast<std::size_t>(i)][static_cast<std::size_t>(block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] = 1;

  for (int q = n; q < r; ++q) {
    ColumnMatcher matcher(n, r, row_has);
    std::vector<char> scratch;
    for (int s = 0; s < r; ++s) {
      if (occ[static_cast<std::size_t>(s)] != n + q - r) continue;
      scratch.assign(static_cast<std::size_t>(n), 0);
      if (!matcher.augment_from_symbol(s, scratch))
        throw std::logic_error("critical symbol cannot be placed (internal error)");
    }
    for (int i = 0; i < n; ++i) {
      if (matcher.match_row[static_cast<std::size_t>(i)] != -1) continue;
      scratch.assign(static_cast<std::size_t>(r), 0);
      if (!matcher.augment_from_row(i, scratch))
        throw std::logic_error("column extension matching failed (internal error)");
    }
    for (int i = 0; i < n; ++i) {
      int s = matcher.match_row[static_cast<std::size_t>(i)];
      rect[static_cast<std::size_t>(i)].push_back(s);
      row_has[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = 1;
      ++occ[static_cast<std::size_t>(s)];
    }
  }

  // Row extension to the full square.
  while (static_cast<int>(rect.size()) < r) rect = extend_rectangle(rect);

  LatinSquare sq{r, std::move(rect)};
  if (!verify_latin(sq.table)) throw std::logic_error("embedding produced a non-latin table");
  for (const auto& [rc, s] : p.cells()) {
    if (sq.table[static_cast<std::size_t>(rc.first)][static_cast<std::size_t>(rc.second)] != s)
      throw std::logic_error("embedding moved a filled cell");
  }
  return sq;
}

}  // namespace qga
