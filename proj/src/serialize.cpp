#include "qga/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qga {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::runtime_error(std::string("missing field: ") + key);
  return *it;
}

}  // namespace

json region_to_json(const CompactRegion& r) {
  json out = json::array();
  for (const auto& b : r.bounds) out.push_back(json::array({b[0], b[1]}));
  return out;
}

CompactRegion region_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("region must be an array of [lo, hi] pairs");
  CompactRegion r;
  for (const auto& b : j) {
    if (!b.is_array() || b.size() != 2) throw std::runtime_error("region bound must be [lo, hi]");
    r.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
  }
  return r;
}

json element_to_json(const GroupElement& g) { return json(g.coords); }

GroupElement element_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("element must be an array of numbers");
  return GroupElement{j.get<std::vector<double>>()};
}

json report_to_json(const ApproximationReport& r) {
  json j;
  j["structure_ok"] = r.structure_ok;
  if (!r.structure_error.empty()) j["structure_error"] = r.structure_error;
  j["grid_defect"] = r.grid_defect;
  j["hom_defect"] = r.hom_defect;
  j["qualifying_pairs"] = r.qualifying_pairs;
  if (r.worst_pair)
    j["worst_pair"] = {{"x", r.worst_pair->x}, {"y", r.worst_pair->y}, {"defect", r.worst_pair->defect}};
  j["retries"] = r.retries;
  j["pass"] = r.pass;
  return j;
}

json approximation_to_json(const FiniteLeftQuasigroup& q, const ApproximationProblem& p,
                           const ApproximationReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["model"] = p.model->name();
  j["C"] = region_to_json(p.C);
  j["U"] = p.U.radius;
  j["side"] = (p.side == Side::Left) ? "left" : "right";
  j["n"] = q.n;
  json table = json::array();
  for (const auto& row : q.table)
    for (int v : row) table.push_back(v);
  j["table"] = std::move(table);
  json emb = json::array();
  for (const auto& g : q.embedding) emb.push_back(element_to_json(g));
  j["embedding"] = std::move(emb);
  j["report"] = report_to_json(report);
  return j;
}

std::pair<FiniteLeftQuasigroup, ApproximationProblem> approximation_from_json(const json& j) {
  if (need(j, "schema_version").get<int>() != kSchemaVersion)
    throw std::runtime_error("unsupported schema_version");
  ApproximationProblem p;
  p.model = make_model(need(j, "model").get<std::string>());
  p.C = region_from_json(need(j, "C"));
  p.U.radius = need(j, "U").get<double>();
  std::string side = need(j, "side").get<std::string>();
  if (side != "left" && side != "right") throw std::runtime_error("side must be left or right");
  p.side = (side == "left") ? Side::Left : Side::Right;

  FiniteLeftQuasigroup q;
  q.model = p.model;
  q.side = p.side;
  q.n = need(j, "n").get<int>();
  if (q.n <= 0) throw std::runtime_error("n must be positive");
  const json& table = need(j, "table");
  if (!table.is_array() || static_cast<int>(table.size()) != q.n * q.n)
    throw std::runtime_error("table must hold n*n entries");
  q.table.assign(static_cast<std::size_t>(q.n), std::vector<int>(static_cast<std::size_t>(q.n), 0));
  for (int i = 0; i < q.n * q.n; ++i) {
    int v = table[static_cast<std::size_t>(i)].get<int>();
    if (v < 0 || v >= q.n) throw std::runtime_error("table entry out of range");
    q.table[static_cast<std::size_t>(i / q.n)][static_cast<std::size_t>(i % q.n)] = v;
  }
  const json& emb = need(j, "embedding");
  if (!emb.is_array() || static_cast<int>(emb.size()) != q.n)
    throw std::runtime_error("embedding must hold n elements");
  for (const auto& e : emb) {
    GroupElement g = element_from_json(e);
    p.model->check_element(g);
    q.embedding.push_back(std::move(g));
  }
  return {std::move(q), std::move(p)};
}

json latin_to_json(const LatinSquare& sq) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["order"] = sq.order;
  j["table"] = sq.table;
  return j;
}

json semigroup_to_json(const FiniteSemigroup& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = s.n;
  j["table"] = s.table;
  if (s.zero)
    j["zero"] = *s.zero;
  else
    j["zero"] = nullptr;
  return j;
}

FiniteSemigroup semigroup_from_json(const json& j) {
  const json& table = need(j, "table");
  if (!table.is_array()) throw std::runtime_error("table must be an array of rows");
  FiniteSemigroup s = make_semigroup(table.get<std::vector<std::vector<int>>>());
  if (need(j, "n").get<int>() != s.n) throw std::runtime_error("n does not match table size");
  return s;
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qga
