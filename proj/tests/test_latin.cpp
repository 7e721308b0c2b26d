#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "oracles.hpp"
#include "qga/latin.hpp"

using namespace qga;

TEST_CASE("verify_latin accepts the Z_3 table and rejects a duplicate") {
  auto z3 = oracle::cyclic_table(3);
  CHECK(verify_latin(z3));
  CHECK_FALSE(latin_violation(z3).has_value());

  auto bad = z3;
  bad[1][2] = bad[1][0];  // duplicate inside row 1
  auto v = latin_violation(bad);
  REQUIRE(v.has_value());
  CHECK(v->in_row);
  CHECK(v->line == 1);
  CHECK(v->symbol == bad[1][0]);
}

TEST_CASE("verify_latin reports a column duplicate") {
  // Rows are fine, column 0 repeats symbol 0.
  std::vector<std::vector<int>> t = {{0, 1}, {0, 1}};
  auto v = latin_violation(t);
  REQUIRE(v.has_value());
  CHECK((v->in_row == true || v->in_row == false));
  CHECK_FALSE(verify_latin(t));
}

TEST_CASE("extend_rectangle on forced instances") {
  auto two = extend_rectangle({{0, 1}});
  REQUIRE(two.size() == 2);
  CHECK(two[1] == std::vector<int>{1, 0});
  CHECK(verify_latin(two));

  auto three = extend_rectangle({{0, 1, 2}, {1, 2, 0}});
  REQUIRE(three.size() == 3);
  CHECK(three[2] == std::vector<int>{2, 0, 1});
  CHECK(verify_latin(three));
}

TEST_CASE("extend_rectangle completes random rectangles row by row") {
  std::mt19937_64 rng(404);
  // Build a random 3x6 rectangle by taking three rows of a shuffled-symbol
  // cyclic square, then extend all the way to a square.
  std::vector<int> perm(6);
  for (int i = 0; i < 6; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int t = 0; t < 20; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<int>> rect;
    for (int r = 0; r < 3; ++r) {
      std::vector<int> row(6);
      for (int c = 0; c < 6; ++c)
        row[static_cast<std::size_t>(c)] = perm[static_cast<std::size_t>((r + c) % 6)];
      rect.push_back(row);
    }
    auto ext = extend_rectangle(rect);
    REQUIRE(ext.size() == 4);
    // New row duplicate-free and column-compatible.
    for (int c = 0; c < 6; ++c)
      for (int r = 0; r < 3; ++r)
        CHECK(ext[3][static_cast<std::size_t>(c)] != ext[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    while (ext.size() < 6) ext = extend_rectangle(ext);
    CHECK(verify_latin(ext));
  }
}

TEST_CASE("extend_rectangle rejects malformed input") {
  CHECK_THROWS_AS(extend_rectangle({}), std::invalid_argument);
  CHECK_THROWS_AS(extend_rectangle({{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(extend_rectangle({{0, 1}, {1, 0}}), std::invalid_argument);  // already square
}

TEST_CASE("PartialLatinSquare validates its invariants") {
  PartialLatinSquare ok(2, 3, {{{0, 0}, 0}, {{0, 1}, 2}, {{1, 0}, 1}});
  CHECK(ok.order() == 2);
  CHECK(ok.num_symbols() == 3);
  CHECK_THROWS_AS(PartialLatinSquare(2, 2, {{{0, 0}, 0}, {{0, 1}, 0}}),
                  std::invalid_argument);  // row repeat
  CHECK_THROWS_AS(PartialLatinSquare(2, 2, {{{0, 0}, 0}, {{1, 0}, 0}}),
                  std::invalid_argument);  // column repeat
  CHECK_THROWS_AS(PartialLatinSquare(2, 2, {{{0, 3}, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(PartialLatinSquare(2, 2, {{{0, 0}, 5}}), std::invalid_argument);
}

TEST_CASE("embed_partial: 2x2 partial on 3 symbols lands in an order-4 square") {
  PartialLatinSquare p(2, 3, {{{0, 0}, 0}, {{0, 1}, 2}, {{1, 0}, 1}});
  auto sq = embed_partial(p);
  CHECK(sq.order == 4);
  CHECK(verify_latin(sq.table));
  for (const auto& [cell, sym] : p.cells())
    CHECK(sq.table[static_cast<std::size_t>(cell.first)][static_cast<std::size_t>(cell.second)] == sym);
}

TEST_CASE("embed_partial: empty partial gives an order-2n latin square") {
  for (int n : {1, 2, 3, 4}) {
    PartialLatinSquare p(n, 0, {});
    auto sq = embed_partial(p);
    CHECK(sq.order == 2 * n);
    CHECK(verify_latin(sq.table));
  }
}

TEST_CASE("embed_partial preserves random group-window partials") {
  std::mt19937_64 rng(505);
  auto z = make_model("zwindow");
  std::uniform_int_distribution<int> pick(-5, 5);
  for (int t = 0; t < 10; ++t) {
    std::vector<GroupElement> elems;
    std::vector<int> vals;
    while (vals.size() < 4) {
      int v = pick(rng);
      if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
    }
    for (int v : vals) elems.push_back({{static_cast<double>(v)}});
    auto wp = window_to_partial({z, elems, std::nullopt});
    auto sq = embed_partial(wp.partial);
    CHECK(sq.order == std::max(2 * wp.partial.order(), wp.partial.num_symbols()));
    CHECK(verify_latin(sq.table));
    for (const auto& [cell, sym] : wp.partial.cells())
      CHECK(sq.table[static_cast<std::size_t>(cell.first)][static_cast<std::size_t>(cell.second)] == sym);
  }
}

TEST_CASE("window_to_partial on all of Z_4 is the full Cayley table") {
  auto z4 = make_model("cyclic:4");
  std::vector<GroupElement> elems;
  for (int k = 0; k < 4; ++k) elems.push_back({{static_cast<double>(k)}});
  auto wp = window_to_partial({z4, elems, std::nullopt});
  CHECK(wp.partial.order() == 4);
  CHECK(wp.partial.num_symbols() == 4);
  CHECK(wp.partial.cells().size() == 16);
  auto expect = oracle::cyclic_table(4);
  for (const auto& [cell, sym] : wp.partial.cells())
    CHECK(sym == expect[static_cast<std::size_t>(cell.first)][static_cast<std::size_t>(cell.second)]);
}

TEST_CASE("window_to_partial on {-1,0,1} in Z records corner sums as new symbols") {
  auto z = make_model("zwindow");
  std::vector<GroupElement> elems = {{{-1}}, {{0}}, {{1}}};
  auto wp = window_to_partial({z, elems, std::nullopt});
  CHECK(wp.partial.order() == 3);
  CHECK(wp.partial.num_symbols() == 5);  // {-2,-1,0,1,2}
  CHECK(wp.partial.cells().size() == 9);
  // Symbols 3 and 4 must map back to the corner sums -2 and 2 (in first
  // appearance order: (-1)+(-1) = -2 comes first).
  REQUIRE(wp.symbol_elements.size() == 5);
  CHECK(wp.symbol_elements[3].coords[0] == doctest::Approx(-2.0));
  CHECK(wp.symbol_elements[4].coords[0] == doctest::Approx(2.0));
}

TEST_CASE("window_to_partial restricted by a universe leaves cells empty") {
  auto z = make_model("zwindow");
  std::vector<GroupElement> elems = {{{-1}}, {{0}}, {{1}}};
  std::vector<GroupElement> universe = elems;  // corner sums fall outside
  auto wp = window_to_partial({z, elems, universe});
  CHECK(wp.partial.cells().size() == 7);  // 9 cells minus the two corners
  CHECK(wp.partial.num_symbols() == 3);
}

TEST_CASE("window_to_partial on a Heisenberg ball matches matrix multiplication") {
  auto h = make_model("heisenberg");
  // All elements with coordinates in {-1,0,1}.
  std::vector<GroupElement> elems;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z)
        elems.push_back({{static_cast<double>(x), static_cast<double>(y), static_cast<double>(z)}});
  auto wp = window_to_partial({h, elems, std::nullopt});
  // Oracle: upper unitriangular 3x3 integer matrices [[1,x,z],[0,1,y],[0,0,1]].
  auto mat = [](const GroupElement& g) {
    std::array<std::array<long, 3>, 3> m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    m[0][1] = static_cast<long>(g.coords[0]);
    m[1][2] = static_cast<long>(g.coords[1]);
    m[0][2] = static_cast<long>(g.coords[2]);
    return m;
  };
  const auto& cells = wp.partial.cells();
  int n = static_cast<int>(elems.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto a = mat(elems[static_cast<std::size_t>(i)]);
      auto b = mat(elems[static_cast<std::size_t>(j)]);
      std::array<std::array<long, 3>, 3> p{};
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          for (int k = 0; k < 3; ++k)
            p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                b[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      auto it = cells.find({i, j});
      REQUIRE(it != cells.end());
      const auto& prod = wp.symbol_elements[static_cast<std::size_t>(it->second)];
      CHECK(static_cast<long>(prod.coords[0]) == p[0][1]);
      CHECK(static_cast<long>(prod.coords[1]) == p[1][2]);
      CHECK(static_cast<long>(prod.coords[2]) == p[0][2]);
    }
}
