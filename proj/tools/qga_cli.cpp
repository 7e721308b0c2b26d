#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qga/approximation.hpp"
#include "qga/config.hpp"
#include "qga/haar.hpp"
#include "qga/latin.hpp"
#include "qga/semigroup.hpp"
#include "qga/serialize.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "json";
  int threads = 1;  // accepted for interface compatibility; results never depend on it
};

std::string num(double v) { return json(v).dump(); }

qga::CompactRegion parse_region(const qga::Config& cfg, const qga::GroupModel& m,
                                const std::string& key) {
  std::vector<double> vals = cfg.get_doubles(key);
  if (static_cast<int>(vals.size()) != 2 * m.dim())
    throw std::runtime_error("config field " + key + " needs " + std::to_string(2 * m.dim()) +
                             " numbers (lo,hi per coordinate)");
  qga::CompactRegion r;
  for (int i = 0; i < m.dim(); ++i)
    r.bounds.push_back({vals[static_cast<std::size_t>(2 * i)], vals[static_cast<std::size_t>(2 * i + 1)]});
  return r;
}

qga::ApproximationProblem parse_problem(const qga::Config& cfg) {
  qga::ApproximationProblem p;
  p.model = qga::make_model(cfg.get_string("model"));
  p.C = parse_region(cfg, *p.model, "region");
  p.U.radius = cfg.get_double("u_radius");
  if (p.U.radius <= 0.0) throw std::runtime_error("config field u_radius must be positive");
  std::string side = cfg.get_string("side", "left");
  if (side != "left" && side != "right")
    throw std::runtime_error("config field side must be left or right");
  p.side = (side == "left") ? qga::Side::Left : qga::Side::Right;
  return p;
}

void write_artifact(const CommonOpts& opts, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(opts.out_dir);
  qga::atomic_write_file(opts.out_dir + "/" + name, body);
}

int cmd_build(const CommonOpts& opts) {
  qga::ApproximationProblem p;
  long max_retries, cap;
  try {
    qga::Config cfg = qga::Config::parse_file(opts.config_path);
    p = parse_problem(cfg);
    max_retries = cfg.get_int("max_retries", 4);
    cap = cfg.get_int("cap", static_cast<long>(qga::kDefaultLatticeCap));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    auto [q, report] = qga::build_approximation(p, static_cast<int>(max_retries),
                                                static_cast<std::size_t>(cap));
    write_artifact(opts, "approximation.json", qga::approximation_to_json(q, p, report).dump(2) + "\n");
    write_artifact(opts, "report.json", qga::report_to_json(report).dump(2) + "\n");
    if (!report.pass) {
      std::cerr << "verification failed: grid_defect=" << num(report.grid_defect)
                << " hom_defect=" << num(report.hom_defect) << "\n";
      return kExitVerification;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitConstruction;
  }
}

int cmd_verify(const CommonOpts& opts) {
  std::string artifact_path;
  qga::Config cfg;
  try {
    cfg = qga::Config::parse_file(opts.config_path);
    artifact_path = cfg.get_string("artifact");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    auto parsed = json::parse(qga::read_file(artifact_path));
    auto [q, p] = qga::approximation_from_json(parsed);
    if (cfg.has("model") && cfg.get_string("model") != p.model->name()) {
      std::cerr << "config error: model mismatch (config " << cfg.get_string("model")
                << ", artifact " << p.model->name() << ")\n";
      return kExitConfig;
    }
    qga::ApproximationReport report = qga::verify_approximation(q, p);
    write_artifact(opts, "report.json", qga::report_to_json(report).dump(2) + "\n");
    if (!report.pass) {
      std::cerr << "verification failed";
      if (!report.structure_error.empty()) std::cerr << ": " << report.structure_error;
      if (report.worst_pair)
        std::cerr << " (worst pair " << report.worst_pair->x << "," << report.worst_pair->y
                  << " defect " << num(report.worst_pair->defect) << ")";
      std::cerr << "\n";
      return kExitVerification;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  }
}

qga::TestFunction parse_function(const qga::Config& cfg, const qga::GroupModel& m) {
  std::string kind = cfg.get_string("function", "constant");
  if (kind == "constant") return qga::TestFunction::constant(cfg.get_double("constant_value", 1.0));
  if (kind == "trig") return qga::TestFunction::trig();
  if (kind == "bump") {
    std::vector<double> center = cfg.get_doubles("bump_center");
    if (static_cast<int>(center.size()) != m.dim())
      throw std::runtime_error("config field bump_center needs one value per coordinate");
    return qga::TestFunction::bump(qga::GroupElement{center}, cfg.get_double("bump_radius"));
  }
  throw std::runtime_error("config field function must be constant, trig, or bump");
}

/// Identity-table quasigroup over a uniform grid, for functional sweeps.
qga::FiniteLeftQuasigroup uniform_quasigroup(std::shared_ptr<const qga::GroupModel> m,
                                             const qga::CompactRegion& region, double spacing,
                                             std::size_t cap) {
  qga::FiniteLeftQuasigroup q;
  q.model = m;
  q.embedding = qga::lattice_points(*m, region, spacing, cap);
  q.n = static_cast<int>(q.embedding.size());
  q.table.assign(static_cast<std::size_t>(q.n), {});
  for (auto& row : q.table) {
    row.resize(static_cast<std::size_t>(q.n));
    for (int i = 0; i < q.n; ++i) row[static_cast<std::size_t>(i)] = i;
  }
  return q;
}

int cmd_haar(const CommonOpts& opts) {
  try {
    qga::Config cfg = qga::Config::parse_file(opts.config_path);
    auto model = qga::make_model(cfg.get_string("model"));
    qga::CompactRegion region = parse_region(cfg, *model, "region");
    double u_radius = cfg.get_double("u_radius");
    if (u_radius <= 0.0) throw std::runtime_error("config field u_radius must be positive");
    std::vector<double> spacings = cfg.get_doubles("spacings");
    qga::TestFunction f = parse_function(cfg, *model);

    std::vector<qga::GroupElement> shifts;
    if (cfg.has("shifts")) {
      std::vector<double> raw = cfg.get_doubles("shifts");
      if (raw.size() % static_cast<std::size_t>(model->dim()) != 0)
        throw std::runtime_error("config field shifts length must be a multiple of the dimension");
      for (std::size_t i = 0; i < raw.size(); i += static_cast<std::size_t>(model->dim())) {
        std::vector<double> c(raw.begin() + static_cast<long>(i),
                              raw.begin() + static_cast<long>(i) + model->dim());
        shifts.push_back(model->from_chart(c));
      }
    }
    long cap = cfg.get_int("cap", static_cast<long>(qga::kDefaultLatticeCap));

    json rows = json::array();
    std::string csv = "spacing,grid_size,value";
    for (std::size_t k = 0; k < shifts.size(); ++k) csv += ",margin_" + std::to_string(k);
    csv += "\n";
    for (double spacing : spacings) {
      if (spacing <= 0.0) throw std::runtime_error("config field spacings must be positive");
      qga::FiniteLeftQuasigroup q =
          uniform_quasigroup(model, region, spacing, static_cast<std::size_t>(cap));
      qga::HaarEstimate est = qga::estimate_functional(q, f, region);
      qga::ShiftReport sr = qga::left_shift_check(q, f, region, shifts, u_radius);
      json row = {{"spacing", spacing}, {"grid_size", est.grid_size}, {"value", est.value}};
      json margins = json::array();
      csv += num(spacing) + "," + std::to_string(est.grid_size) + "," + num(est.value);
      for (const auto& sm : sr.margins) {
        margins.push_back(sm.margin);
        csv += "," + num(sm.margin);
      }
      row["margins"] = std::move(margins);
      rows.push_back(std::move(row));
      csv += "\n";
    }
    if (opts.format == "csv") {
      write_artifact(opts, "haar.csv", csv);
    } else {
      json out = {{"schema_version", qga::kSchemaVersion}, {"rows", rows}};
      write_artifact(opts, "haar.json", out.dump(2) + "\n");
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_latin(const CommonOpts& opts) {
  std::shared_ptr<const qga::GroupModel> model;
  qga::GroupWindow w;
  try {
    qga::Config cfg = qga::Config::parse_file(opts.config_path);
    model = qga::make_model(cfg.get_string("model"));
    std::vector<double> raw = cfg.get_doubles("elements");
    if (raw.size() % static_cast<std::size_t>(model->dim()) != 0)
      throw std::runtime_error("config field elements length must be a multiple of the dimension");
    w.model = model;
    for (std::size_t i = 0; i < raw.size(); i += static_cast<std::size_t>(model->dim()))
      w.elements.push_back(qga::GroupElement{std::vector<double>(
          raw.begin() + static_cast<long>(i), raw.begin() + static_cast<long>(i) + model->dim())});
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    qga::WindowPartial wp = qga::window_to_partial(w);
    qga::LatinSquare sq = qga::embed_partial(wp.partial);
    json out = qga::latin_to_json(sq);
    json symbols = json::array();
    for (const auto& g : wp.symbol_elements) symbols.push_back(qga::element_to_json(g));
    out["symbols"] = std::move(symbols);
    out["window_size"] = static_cast<int>(w.elements.size());
    json cells = json::array();
    for (const auto& [rc, sym] : wp.partial.cells())
      cells.push_back(json::array({rc.first, rc.second, sym}));
    out["window_cells"] = std::move(cells);
    write_artifact(opts, "latin.json", out.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitConstruction;
  }
}

int cmd_semigroup(const CommonOpts& opts) {
  std::string table_file;
  long near_unit;
  try {
    qga::Config cfg = qga::Config::parse_file(opts.config_path);
    table_file = cfg.get_string("table_file");
    near_unit = cfg.get_int("near_unit");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    qga::FiniteSemigroup s = qga::semigroup_from_json(json::parse(qga::read_file(table_file)));
    qga::IdealChain chain = qga::maximal_ideal_chain(s);
    json out;
    out["schema_version"] = qga::kSchemaVersion;
    out["n"] = s.n;
    out["chain"] = chain.chain;
    json quotients = json::array();
    for (std::size_t i = 0; i + 1 < chain.chain.size(); ++i) {
      qga::QuotientResult qr = qga::chain_quotient(s, chain.chain[i], chain.chain[i + 1]);
      quotients.push_back(qga::verdict_name(qga::classify(qr.semigroup).verdict));
    }
    out["quotient_verdicts"] = std::move(quotients);
    qga::GroupExtraction ex = qga::extract_group(s, static_cast<int>(near_unit));
    json exj;
    exj["ok"] = ex.ok;
    if (ex.ok) {
      exj["group"] = qga::semigroup_to_json(ex.group);
      exj["embedding"] = ex.embedding;
    } else {
      exj["failed_stage"] = ex.failed_stage;
      exj["detail"] = ex.detail;
    }
    out["extraction"] = std::move(exj);
    write_artifact(opts, "semigroup.json", out.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "analysis failed: " << e.what() << "\n";
    return kExitConstruction;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quasigroup approximation toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  int rc = kExitOk;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "config file path")->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", opts.threads, "worker count (never affects results)");
  };

  auto* build = app.add_subcommand("build", "construct and verify an approximation");
  add_common(build);
  build->callback([&] { rc = cmd_build(opts); });
  auto* verify = app.add_subcommand("verify", "re-verify a stored approximation artifact");
  add_common(verify);
  verify->callback([&] { rc = cmd_verify(opts); });
  auto* haar = app.add_subcommand("haar", "functional estimates over a refinement sweep");
  add_common(haar);
  haar->callback([&] { rc = cmd_haar(opts); });
  auto* latin = app.add_subcommand("latin", "embed a group window into a latin square");
  add_common(latin);
  latin->callback([&] { rc = cmd_latin(opts); });
  auto* semigroup = app.add_subcommand("semigroup", "ideal chain analysis and group extraction");
  add_common(semigroup);
  semigroup->callback([&] { rc = cmd_semigroup(opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int parse_rc = app.exit(e);
    return parse_rc == 0 ? 0 : kExitConfig;
  }
  return rc;
}
