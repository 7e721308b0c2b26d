#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qga/config.hpp"
#include "qga/serialize.hpp"

using namespace qga;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "qga_serialize_test";
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("region and element round trips") {
  CompactRegion r{{{0.5, 2.0}, {-1.0, 1.0}}};
  auto r2 = region_from_json(region_to_json(r));
  CHECK(r2.bounds == r.bounds);

  GroupElement g{{0.25, -3.5}};
  auto g2 = element_from_json(element_to_json(g));
  CHECK(g2.coords == g.coords);
}

TEST_CASE("approximation artifact round trip preserves everything") {
  auto m = make_model("circle");
  ApproximationProblem p{m, m->full_region(), {0.2}, Side::Left};
  auto [q, rep] = build_approximation(p);
  auto j = approximation_to_json(q, p, rep);
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("model") == "circle");
  CHECK(j.at("side") == "left");
  CHECK(j.at("n") == q.n);
  CHECK(j.at("table").size() == static_cast<std::size_t>(q.n) * static_cast<std::size_t>(q.n));

  auto [q2, p2] = approximation_from_json(j);
  CHECK(q2.n == q.n);
  CHECK(q2.table == q.table);
  CHECK(q2.side == q.side);
  REQUIRE(q2.embedding.size() == q.embedding.size());
  for (std::size_t i = 0; i < q.embedding.size(); ++i)
    CHECK(q2.embedding[i].coords == q.embedding[i].coords);
  CHECK(p2.model->name() == "circle");
  CHECK(p2.U.radius == p.U.radius);
  CHECK(p2.C.bounds == p.C.bounds);

  // Serialize again: byte-identical artifact.
  CHECK(approximation_to_json(q2, p2, rep).dump(2) == j.dump(2));
}

TEST_CASE("malformed approximation artifacts name the offending field") {
  auto m = make_model("circle");
  ApproximationProblem p{m, m->full_region(), {0.2}, Side::Left};
  auto [q, rep] = build_approximation(p);
  auto good = approximation_to_json(q, p, rep);

  auto no_model = good;
  no_model.erase("model");
  CHECK_THROWS_WITH_AS(approximation_from_json(no_model), doctest::Contains("model"),
                       std::runtime_error);

  auto bad_table = good;
  bad_table["table"] = json::array({1, 2, 3});
  CHECK_THROWS_WITH_AS(approximation_from_json(bad_table), doctest::Contains("table"),
                       std::runtime_error);

  auto bad_side = good;
  bad_side["side"] = "sideways";
  CHECK_THROWS_WITH_AS(approximation_from_json(bad_side), doctest::Contains("side"),
                       std::runtime_error);

  auto bad_version = good;
  bad_version["schema_version"] = 99;
  CHECK_THROWS_WITH_AS(approximation_from_json(bad_version),
                       doctest::Contains("schema_version"), std::runtime_error);
}

TEST_CASE("semigroup JSON round trip") {
  FiniteSemigroup s;
  s.n = 3;
  s.table = {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
  s.zero = 0;
  auto j = semigroup_to_json(s);
  CHECK(j.at("schema_version") == kSchemaVersion);
  auto s2 = semigroup_from_json(j);
  CHECK(s2.n == 3);
  CHECK(s2.table == s.table);
  CHECK(s2.zero == s.zero);

  auto bad = j;
  bad["table"][1] = json::array({0, 1});  // ragged row
  CHECK_THROWS(semigroup_from_json(bad));
}

TEST_CASE("latin JSON shape") {
  LatinSquare sq{2, {{0, 1}, {1, 0}}};
  auto j = latin_to_json(sq);
  CHECK(j.at("order") == 2);
  CHECK(j.at("table") == json::array({json::array({0, 1}), json::array({1, 0})}));
}

TEST_CASE("atomic_write_file leaves no temp files and replaces content") {
  TempDir tmp;
  auto target = (tmp.path / "artifact.json").string();
  atomic_write_file(target, "first");
  CHECK(read_file(target) == "first");
  atomic_write_file(target, "second version");
  CHECK(read_file(target) == "second version");
  int entries = 0;
  for (const auto& e : std::filesystem::directory_iterator(tmp.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);  // no leftover temp files
  CHECK_THROWS_AS(read_file((tmp.path / "missing.json").string()), std::runtime_error);
}

TEST_CASE("config grammar: comments, arrays, errors") {
  auto c = Config::parse_text(
      "# experiment\n"
      "model = circle\n"
      "\n"
      "u_radius = 0.2\n"
      "spacings = 0.1, 0.01, 0.001\n"
      "retries=3\n");
  CHECK(c.get_string("model") == "circle");
  CHECK(c.get_double("u_radius") == 0.2);
  CHECK(c.get_doubles("spacings") == std::vector<double>{0.1, 0.01, 0.001});
  CHECK(c.get_int("retries") == 3);
  CHECK(c.get_int("absent", 7) == 7);
  CHECK_FALSE(c.has("absent"));

  CHECK_THROWS_WITH_AS(Config::parse_text("just a line\n"), doctest::Contains("line 1"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(Config::parse_text("a = 1\na = 2\n"), doctest::Contains("duplicate"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(c.get_double("model"), doctest::Contains("model"), std::runtime_error);
  CHECK_THROWS_WITH_AS(c.get_string("missing"), doctest::Contains("missing"),
                       std::runtime_error);
}
