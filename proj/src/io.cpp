#include "wsn/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wsn::io {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i];
  return v;
}

json points_to_json(const Eigen::MatrixX2d& pts) {
  json out = json::array();
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    out.push_back({pts(i, 0), pts(i, 1)});
  return out;
}

Eigen::MatrixX2d points_from_json(const json& j) {
  Eigen::MatrixX2d pts(static_cast<Eigen::Index>(j.size()), 2);
  for (size_t i = 0; i < j.size(); ++i) {
    pts(static_cast<Eigen::Index>(i), 0) = j[i][0];
    pts(static_cast<Eigen::Index>(i), 1) = j[i][1];
  }
  return pts;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = j[static_cast<size_t>(r)][static_cast<size_t>(c)];
  return m;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  const json j = json::parse(json_text);
  ScenarioConfig cfg;

  const json& region = j.at("region");
  if (region.contains("rect")) {
    const auto& r = region.at("rect");
    if (r.size() != 4)
      throw std::invalid_argument("region.rect needs [x0, y0, x1, y1]");
    cfg.region = ConvexRegion::rectangle(r[0], r[1], r[2], r[3]);
  } else if (region.contains("polygon")) {
    std::vector<Vec2> verts;
    for (const auto& v : region.at("polygon"))
      verts.push_back(Vec2(v[0].get<double>(), v[1].get<double>()));
    cfg.region = ConvexRegion(std::move(verts));
  } else {
    throw std::invalid_argument("region needs either 'rect' or 'polygon'");
  }

  cfg.grid = j.at("grid");
  const json& density = j.at("density");
  if (density.contains("uniform_total")) {
    cfg.density.kind = DensitySpec::Kind::Uniform;
    cfg.density.uniform_total = density.at("uniform_total");
  } else if (density.contains("samples_per_m2")) {
    cfg.density.kind = DensitySpec::Kind::Samples;
    const auto& rows = density.at("samples_per_m2");
    cfg.density.samples.resize(static_cast<Eigen::Index>(rows.size()),
                               static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < rows[r].size(); ++c)
        cfg.density.samples(static_cast<Eigen::Index>(r),
                            static_cast<Eigen::Index>(c)) = rows[r][c];
  } else {
    throw std::invalid_argument(
        "density needs 'uniform_total' or 'samples_per_m2'");
  }

  cfg.n_aps = j.at("n_aps");
  cfg.n_bss = j.at("n_bss");
  cfg.rb_bps = j.at("rb_bps");
  cfg.bandwidth_hz = j.at("bandwidth_hz");
  cfg.noise_density_w_per_hz = j.at("noise_density_w_per_hz");
  cfg.carrier_wavelength_m = j.at("carrier_wavelength_m");
  cfg.ap_tx_gain = vector_from_json(j.at("ap_tx_gain"));
  cfg.ap_rx_gain = vector_from_json(j.at("ap_rx_gain"));
  cfg.ap_loss = vector_from_json(j.at("ap_loss"));
  cfg.bs_rx_gain = vector_from_json(j.at("bs_rx_gain"));
  cfg.sensor_tx_gain = j.at("sensor_tx_gain");
  cfg.sensor_loss = j.at("sensor_loss");
  cfg.tradeoff = j.at("tradeoff");
  cfg.outage_eps = j.at("outage_eps");
  cfg.tau = j.value("tau", 1e-4);
  cfg.max_iters = j.value("max_iters", 200);
  cfg.seed = j.value("seed", std::uint64_t{1});
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  json verts = json::array();
  for (const auto& v : cfg.region.vertices()) verts.push_back({v.x(), v.y()});
  j["region"] = {{"polygon", verts}};
  j["grid"] = cfg.grid;
  if (cfg.density.kind == DensitySpec::Kind::Uniform) {
    j["density"] = {{"uniform_total", cfg.density.uniform_total}};
  } else {
    json rows = json::array();
    for (Eigen::Index r = 0; r < cfg.density.samples.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < cfg.density.samples.cols(); ++c)
        row.push_back(cfg.density.samples(r, c));
      rows.push_back(row);
    }
    j["density"] = {{"samples_per_m2", rows}};
  }
  j["n_aps"] = cfg.n_aps;
  j["n_bss"] = cfg.n_bss;
  j["rb_bps"] = cfg.rb_bps;
  j["bandwidth_hz"] = cfg.bandwidth_hz;
  j["noise_density_w_per_hz"] = cfg.noise_density_w_per_hz;
  j["carrier_wavelength_m"] = cfg.carrier_wavelength_m;
  j["ap_tx_gain"] = vector_to_json(cfg.ap_tx_gain);
  j["ap_rx_gain"] = vector_to_json(cfg.ap_rx_gain);
  j["ap_loss"] = vector_to_json(cfg.ap_loss);
  j["bs_rx_gain"] = vector_to_json(cfg.bs_rx_gain);
  j["sensor_tx_gain"] = cfg.sensor_tx_gain;
  j["sensor_loss"] = cfg.sensor_loss;
  j["tradeoff"] = cfg.tradeoff;
  j["outage_eps"] = cfg.outage_eps;
  j["tau"] = cfg.tau;
  j["max_iters"] = cfg.max_iters;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string canon = scenario_to_json(cfg);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

ResultDocument make_result_document(const ScenarioConfig& cfg,
                                    const RunResult& run,
                                    const std::string& algorithm,
                                    double wall_time_s) {
  ResultDocument doc;
  doc.config_hash = config_hash(cfg);
  doc.algorithm = algorithm;
  doc.seed = cfg.seed;
  doc.power = run.final_power;
  doc.ap_positions = run.dep.p;
  doc.bs_positions = run.dep.q;
  doc.flows = run.flows.f;
  doc.cell_owner = run.part.owner;
  doc.iterations = run.iterations;
  doc.converged = run.trace.status == OptimizationTrace::Status::Converged;
  doc.wall_time_s = wall_time_s;
  return doc;
}

std::string result_to_json(const ResultDocument& doc) {
  json j;
  j["config_hash"] = doc.config_hash;
  j["algorithm"] = doc.algorithm;
  j["seed"] = doc.seed;
  j["power"] = {{"sensor_w", doc.power.sensor_power},
                {"ap_w", doc.power.ap_power},
                {"weighted_total_w", doc.power.weighted_total},
                {"weighted_total_mw", doc.power.weighted_total * 1e3},
                {"weighted_total_dbm",
                 doc.power.weighted_total > 0
                     ? 10.0 * std::log10(doc.power.weighted_total * 1e3)
                     : -std::numeric_limits<double>::infinity()}};
  j["ap_positions_m"] = points_to_json(doc.ap_positions);
  j["bs_positions_m"] = points_to_json(doc.bs_positions);
  j["flows_bps"] = matrix_to_json(doc.flows);
  json owners = json::array();
  for (Eigen::Index i = 0; i < doc.cell_owner.size(); ++i)
    owners.push_back(doc.cell_owner[i]);
  j["cell_owner"] = owners;
  j["iterations"] = doc.iterations;
  j["converged"] = doc.converged;
  j["wall_time_s"] = doc.wall_time_s;
  return j.dump(2);
}

ResultDocument parse_result(const std::string& json_text) {
  const json j = json::parse(json_text);
  ResultDocument doc;
  doc.config_hash = j.at("config_hash");
  doc.algorithm = j.at("algorithm");
  doc.seed = j.at("seed");
  doc.power.sensor_power = j.at("power").at("sensor_w");
  doc.power.ap_power = j.at("power").at("ap_w");
  doc.power.weighted_total = j.at("power").at("weighted_total_w");
  doc.ap_positions = points_from_json(j.at("ap_positions_m"));
  doc.bs_positions = points_from_json(j.at("bs_positions_m"));
  doc.flows = matrix_from_json(j.at("flows_bps"));
  const auto& owners = j.at("cell_owner");
  doc.cell_owner.resize(static_cast<Eigen::Index>(owners.size()));
  for (size_t i = 0; i < owners.size(); ++i)
    doc.cell_owner[static_cast<Eigen::Index>(i)] = owners[i];
  doc.iterations = j.at("iterations");
  doc.converged = j.at("converged");
  doc.wall_time_s = j.at("wall_time_s");
  return doc;
}

ResultDocument load_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open result file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_result(ss.str());
}

void save_result(const ResultDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write result file: " + path.string());
  out << result_to_json(doc) << '\n';
}

void write_trace_csv(const OptimizationTrace& trace,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
  out << "iter,d_total_w,sensor_w,ap_w,step\n";
  out << std::setprecision(17);
  for (const auto& rec : trace.records)
    out << rec.iter << ',' << rec.d_total << ',' << rec.sensor << ','
        << rec.ap << ',' << rec.step << '\n';
}

std::string reports_to_json(const std::string& suite, std::uint64_t seed,
                            const std::vector<oracle::OracleReport>& reports) {
  json j;
  j["suite"] = suite;
  j["seed"] = seed;
  json items = json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    items.push_back({{"quantity", r.quantity},
                     {"oracle_value", r.oracle_value},
                     {"artifact_value", r.artifact_value},
                     {"relative_gap", r.relative_gap},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
    all_pass = all_pass && r.pass;
  }
  j["reports"] = items;
  j["all_pass"] = all_pass;
  return j.dump(2);
}

void write_geometry_csv(const DensityGrid& grid, const Partition& part,
                        const Deployment& dep,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write geometry file: " + path.string());
  out << "kind,x_m,y_m,owner_or_index\n";
  out << std::setprecision(17);
  for (int idx : grid.region_cells) {
    const Vec2 c = grid.center(idx);
    out << "cell," << c.x() << ',' << c.y() << ',' << part.owner[idx] << '\n';
  }
  for (Eigen::Index n = 0; n < dep.p.rows(); ++n)
    out << "ap," << dep.p(n, 0) << ',' << dep.p(n, 1) << ',' << n << '\n';
  for (Eigen::Index m = 0; m < dep.q.rows(); ++m)
    out << "bs," << dep.q(m, 0) << ',' << dep.q(m, 1) << ',' << m << '\n';
}

}  // namespace wsn::io
