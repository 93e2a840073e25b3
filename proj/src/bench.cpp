#include "gmcs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "gmcs/errors.hpp"
#include "gmcs/filterbank.hpp"
#include "gmcs/filters.hpp"
#include "gmcs/linalg.hpp"
#include "gmcs/multichannel.hpp"
#include "gmcs/rng.hpp"
#include "gmcs/sampling.hpp"
#include "gmcs/signal_models.hpp"
#include "gmcs/spectral.hpp"

namespace gmcs {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(ErrorCode::config, "bad boolean for " + key + ": " + v);
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (...) {
    fail(ErrorCode::config, "bad integer for " + key + ": " + v);
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (...) {
    fail(ErrorCode::config, "bad number for " + key + ": " + v);
  }
}

std::string graph_type_name(GraphType t) {
  switch (t) {
    case GraphType::sensor: return "sensor";
    case GraphType::swissroll: return "swissroll";
    case GraphType::bipartite: return "bipartite";
    case GraphType::edge_list: return "edgelist";
  }
  return "?";
}

std::string model_name(SignalModel m) { return m == SignalModel::pws ? "pws" : "ubp"; }
std::string kernels_name(KernelFamily k) {
  return k == KernelFamily::meyer ? "meyer" : "mexhat";
}
std::string mode_name(FilterMode m) { return m == FilterMode::exact ? "exact" : "poly"; }
std::string sss_name(SssMode m) { return m == SssMode::exact ? "exact" : "neumann"; }

// dB values can be -inf (exact recovery); JSON and CSV keep them as strings
ordered_json db_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

std::string db_csv(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return fmt_g17(v);
}

struct RunOutput {
  RunResult result;
  // signals of run 0 for the optional dump
  Eigen::VectorXd x, x_mcs, x_ch0, x_ch1;
  Graph graph;
};

RunOutput execute_run(const ExperimentConfig& cfg, int run_index,
                      const Graph* preloaded) {
  RunOutput out;
  RunResult& rr = out.result;
  rr.run = run_index;
  rr.seed = split_seed(cfg.seed, static_cast<std::uint64_t>(run_index));
  const std::uint64_t graph_seed =
      split_seed(cfg.fixed_graph ? cfg.seed : rr.seed, 0xA11CEull);
  const std::uint64_t signal_seed = split_seed(rr.seed, 0xBEA7ull);
  const std::uint64_t cluster_seed = split_seed(graph_seed, 0xC1ull);

  std::optional<BipartitePartition> part;
  switch (cfg.graph_type) {
    case GraphType::sensor:
      out.graph = random_sensor_graph(cfg.n, cfg.knn, graph_seed);
      break;
    case GraphType::swissroll:
      out.graph = swiss_roll_graph(cfg.n, cfg.knn, graph_seed);
      break;
    case GraphType::bipartite: {
      auto [g, p] = random_bipartite_graph(cfg.nl, cfg.nh, cfg.edge_prob, graph_seed);
      out.graph = std::move(g);
      part = std::move(p);
      break;
    }
    case GraphType::edge_list:
      out.graph = *preloaded;
      break;
  }
  const int n = out.graph.order();
  const int k = cfg.k > 0 ? cfg.k : n / 2;
  if (k < 1 || k >= n) fail(ErrorCode::config, "K must satisfy 1 <= K < N");

  auto lap = std::make_shared<Eigen::MatrixXd>(
      laplacian(out.graph, LaplacianKind::combinatorial));
  auto dec = std::make_shared<SpectralDecomposition>(
      eigendecompose(*lap, LaplacianKind::combinatorial));
  const double lmax = dec->lambda_max();

  auto kernel_pair = cfg.kernels == KernelFamily::meyer ? meyer_pair(lmax)
                                                        : mexican_hat_pair(lmax);
  FilterPtr f0, f1;
  if (cfg.filter_mode == FilterMode::exact) {
    f0 = make_exact_filter(dec, kernel_pair.first);
    f1 = make_exact_filter(dec, kernel_pair.second);
  } else {
    f0 = make_chebyshev_filter(lap, chebyshev_fit(kernel_pair.first, cfg.cheb_order, lmax));
    f1 = make_chebyshev_filter(lap, chebyshev_fit(kernel_pair.second, cfg.cheb_order, lmax));
  }

  Eigen::MatrixXd a0, a1;
  SignalDraw signal;
  if (cfg.model == SignalModel::pws) {
    const int bw = cfg.bandwidth > 0 ? cfg.bandwidth : std::max(1, k / 4);
    const PwsGenerators gen = pws_generators(out.graph, *dec, cfg.clusters, bw, cluster_seed);
    a0 = gen.indicators;
    a1 = gen.bandlimited;
    signal = draw_pws(gen, signal_seed);
  } else {
    const UbpGenerators gen = ubp_generators(*dec);
    a0 = gen.a0;
    a1 = gen.a1;
    signal = draw_ubp(gen, signal_seed);
  }

  // filtered generator columns, shared by the selection matrices, the
  // correction blocks and the single-channel paths
  const Eigen::MatrixXd f00 = f0->apply_matrix(a0);
  const Eigen::MatrixXd f01 = f0->apply_matrix(a1);
  const Eigen::MatrixXd f10 = f1->apply_matrix(a0);
  const Eigen::MatrixXd f11 = f1->apply_matrix(a1);

  Eigen::MatrixXd z0 = f00 * f00.transpose();
  z0 = 0.5 * (z0 + z0.transpose()).eval();
  Eigen::MatrixXd z1 = f11 * f11.transpose();
  z1 = 0.5 * (z1 + z1.transpose()).eval();

  TwoChannelSssOptions sss_opt;
  sss_opt.ridge = cfg.ridge;
  sss_opt.gamma = cfg.beta;
  sss_opt.denom_floor = cfg.denom_floor;
  sss_opt.neumann = cfg.sss == SssMode::neumann;
  const TwoChannelSssResult sel = sss_two_channel(z0, z1, k, sss_opt);
  rr.min_denominator = sel.min_denominator;

  ChannelSpec ch0{f0, a0, sel.set0};
  ChannelSpec ch1{f1, a1, sel.set1};
  const McsSystem sys = make_mcs(ch0, ch1, n);

  CorrectionMatrix corr;
  const int k0 = static_cast<int>(a0.cols());
  const int k1 = static_cast<int>(a1.cols());
  corr.m_sa.resize(sel.set0.size() + sel.set1.size(), k0 + k1);
  corr.m_sa.topLeftCorner(sel.set0.size(), k0) = select_rows(f00, sel.set0);
  corr.m_sa.topRightCorner(sel.set0.size(), k1) = select_rows(f01, sel.set0);
  corr.m_sa.bottomLeftCorner(sel.set1.size(), k0) = select_rows(f10, sel.set1);
  corr.m_sa.bottomRightCorner(sel.set1.size(), k1) = select_rows(f11, sel.set1);
  {
    PinvResult pr = pseudo_inverse(corr.m_sa, cfg.pinv_tol);
    corr.pinv = std::move(pr.pinv);
    corr.rank = pr.rank;
    corr.cond = pr.cond;
  }

  const McsRecovery rec = recover_mcs(sys, corr, signal.x);
  rr.cond_m_sa = corr.cond;
  rr.rank_m_sa = corr.rank;

  auto single = [&](const ChannelSpec& ch, const Eigen::MatrixXd& filtered_gen) {
    const Eigen::VectorXd y = apply_sampling(ch, signal.x);
    const PinvResult pr = pseudo_inverse(select_rows(filtered_gen, ch.sampling_set),
                                         cfg.pinv_tol);
    return Eigen::VectorXd(ch.generator * (pr.pinv * y));
  };
  const Eigen::VectorXd x_ch0 = single(ch0, f00);
  const Eigen::VectorXd x_ch1 = single(ch1, f11);

  rr.mse_mcs = (signal.x - rec.x_hat).squaredNorm() / n;
  rr.mse_ch0 = (signal.x - x_ch0).squaredNorm() / n;
  rr.mse_ch1 = (signal.x - x_ch1).squaredNorm() / n;
  rr.db_mcs = mse_db(signal.x, rec.x_hat);
  rr.db_ch0 = mse_db(signal.x, x_ch0);
  rr.db_ch1 = mse_db(signal.x, x_ch1);

  if (cfg.graph_type == GraphType::bipartite && part && cfg.nl == cfg.nh) {
    const BgfbSystem bank = build_bgfb(out.graph, *part, BgfbKernelChoice::meyer());
    const PrCheck pr = check_pr(bank);
    const BipartiteEquivalenceReport th = verify_bipartite_equivalence(bank);
    rr.pr = PrColumns{pr.defect, th.cross_term, th.recon_identity, th.sa_gap, th.sb_gap};
  }

  out.x = signal.x;
  out.x_mcs = rec.x_hat;
  out.x_ch0 = x_ch0;
  out.x_ch1 = x_ch1;
  return out;
}

}  // namespace

double mse_db(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat) {
  if (x.size() != x_hat.size()) fail(ErrorCode::invalid_argument, "length mismatch");
  const double mse = (x - x_hat).squaredNorm() / static_cast<double>(x.size());
  if (mse == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(mse);
}

void apply_config_override(ExperimentConfig& cfg, const std::string& key,
                           const std::string& value) {
  const std::string v = trim(value);
  if (key == "graph") {
    if (v == "sensor") cfg.graph_type = GraphType::sensor;
    else if (v == "swissroll") cfg.graph_type = GraphType::swissroll;
    else if (v == "bipartite") cfg.graph_type = GraphType::bipartite;
    else if (v == "edgelist" || v == "edge_list") cfg.graph_type = GraphType::edge_list;
    else fail(ErrorCode::config, "unknown graph type: " + v);
  } else if (key == "n") cfg.n = static_cast<int>(parse_long(v, key));
  else if (key == "knn") cfg.knn = static_cast<int>(parse_long(v, key));
  else if (key == "nl") cfg.nl = static_cast<int>(parse_long(v, key));
  else if (key == "nh") cfg.nh = static_cast<int>(parse_long(v, key));
  else if (key == "edge_prob") cfg.edge_prob = parse_double(v, key);
  else if (key == "graph_path") cfg.graph_path = v;
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(v, key));
  else if (key == "model") {
    if (v == "pws") cfg.model = SignalModel::pws;
    else if (v == "ubp") cfg.model = SignalModel::ubp;
    else fail(ErrorCode::config, "unknown model: " + v);
  } else if (key == "kernels") {
    if (v == "meyer") cfg.kernels = KernelFamily::meyer;
    else if (v == "mexhat" || v == "mexican_hat") cfg.kernels = KernelFamily::mexican_hat;
    else fail(ErrorCode::config, "unknown kernel family: " + v);
  } else if (key == "mode") {
    if (v == "exact") cfg.filter_mode = FilterMode::exact;
    else if (v == "poly") cfg.filter_mode = FilterMode::poly;
    else fail(ErrorCode::config, "unknown filter mode: " + v);
  } else if (key == "order") cfg.cheb_order = static_cast<int>(parse_long(v, key));
  else if (key == "k") cfg.k = static_cast<int>(parse_long(v, key));
  else if (key == "clusters") cfg.clusters = static_cast<int>(parse_long(v, key));
  else if (key == "bandwidth") cfg.bandwidth = static_cast<int>(parse_long(v, key));
  else if (key == "runs") cfg.runs = static_cast<int>(parse_long(v, key));
  else if (key == "sss") {
    if (v == "exact") cfg.sss = SssMode::exact;
    else if (v == "neumann") cfg.sss = SssMode::neumann;
    else fail(ErrorCode::config, "unknown sss mode: " + v);
  } else if (key == "beta") cfg.beta = parse_double(v, key);
  else if (key == "ridge") cfg.ridge = parse_double(v, key);
  else if (key == "pinv_tol") cfg.pinv_tol = parse_double(v, key);
  else if (key == "denom_floor") cfg.denom_floor = parse_double(v, key);
  else if (key == "fixed_graph") cfg.fixed_graph = parse_bool(v, key);
  else if (key == "timings") cfg.emit_timings = parse_bool(v, key);
  else if (key == "output") cfg.output_path = v;
  else if (key == "format") {
    if (v != "json" && v != "csv") fail(ErrorCode::config, "unknown format: " + v);
    cfg.output_format = v;
  } else if (key == "dump") cfg.dump_path = v;
  else fail(ErrorCode::config, "unknown config key: " + key);
}

ExperimentConfig parse_config_string(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::config, "line " + std::to_string(lineno) + " is not key = value");
    apply_config_override(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "graph = " << graph_type_name(cfg.graph_type) << "\n";
  out << "n = " << cfg.n << "\n";
  out << "knn = " << cfg.knn << "\n";
  out << "nl = " << cfg.nl << "\n";
  out << "nh = " << cfg.nh << "\n";
  out << "edge_prob = " << fmt_g17(cfg.edge_prob) << "\n";
  if (!cfg.graph_path.empty()) out << "graph_path = " << cfg.graph_path << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "model = " << model_name(cfg.model) << "\n";
  out << "kernels = " << kernels_name(cfg.kernels) << "\n";
  out << "mode = " << mode_name(cfg.filter_mode) << "\n";
  out << "order = " << cfg.cheb_order << "\n";
  out << "k = " << cfg.k << "\n";
  out << "clusters = " << cfg.clusters << "\n";
  out << "bandwidth = " << cfg.bandwidth << "\n";
  out << "runs = " << cfg.runs << "\n";
  out << "sss = " << sss_name(cfg.sss) << "\n";
  out << "beta = " << fmt_g17(cfg.beta) << "\n";
  out << "ridge = " << fmt_g17(cfg.ridge) << "\n";
  out << "pinv_tol = " << fmt_g17(cfg.pinv_tol) << "\n";
  out << "denom_floor = " << fmt_g17(cfg.denom_floor) << "\n";
  out << "fixed_graph = " << (cfg.fixed_graph ? "true" : "false") << "\n";
  out << "timings = " << (cfg.emit_timings ? "true" : "false") << "\n";
  if (!cfg.output_path.empty()) out << "output = " << cfg.output_path << "\n";
  out << "format = " << cfg.output_format << "\n";
  if (!cfg.dump_path.empty()) out << "dump = " << cfg.dump_path << "\n";
  return out.str();
}

RecoveryReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) fail(ErrorCode::config, "runs must be at least 1");
  for (double tol : {cfg.beta, cfg.ridge, cfg.denom_floor})
    if (tol >= 0.0 && tol == 0.0)
      fail(ErrorCode::config, "explicit tolerances must be positive");
  if (cfg.pinv_tol <= 0.0) fail(ErrorCode::config, "pinv_tol must be positive");

  Graph preloaded;
  if (cfg.graph_type == GraphType::edge_list) {
    if (cfg.graph_path.empty()) fail(ErrorCode::config, "edgelist graph needs graph_path");
    preloaded = load_edge_list(cfg.graph_path).graph;
  }
  const int n_expected = cfg.graph_type == GraphType::edge_list ? preloaded.order()
                         : cfg.graph_type == GraphType::bipartite ? cfg.nl + cfg.nh
                                                                  : cfg.n;
  if (cfg.k >= 0 && (cfg.k < 1 || cfg.k >= n_expected))
    fail(ErrorCode::config, "K must satisfy 1 <= K < N");

  RecoveryReport report;
  report.config = cfg;
  double sum_mse[3] = {0, 0, 0};
  double sum_db[3] = {0, 0, 0};
  int ok_runs = 0;
  for (int r = 0; r < cfg.runs; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult rr;
    try {
      RunOutput ro = execute_run(cfg, r, &preloaded);
      rr = ro.result;
      if (r == 0 && !cfg.dump_path.empty())
        emit_signal_dump(ro.graph, ro.x, ro.x_mcs, ro.x_ch0, ro.x_ch1, cfg.dump_path);
    } catch (const Error& e) {
      rr.run = r;
      rr.seed = split_seed(cfg.seed, static_cast<std::uint64_t>(r));
      rr.failed = true;
      rr.error = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rr.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.total_wall_ms += rr.wall_ms;
    if (!rr.failed) {
      ++ok_runs;
      sum_mse[0] += rr.mse_mcs;
      sum_mse[1] += rr.mse_ch0;
      sum_mse[2] += rr.mse_ch1;
      sum_db[0] += rr.db_mcs;
      sum_db[1] += rr.db_ch0;
      sum_db[2] += rr.db_ch1;
    } else {
      ++report.failed_runs;
    }
    report.runs.push_back(std::move(rr));
  }

  auto aggregate = [&](int i) {
    Aggregate a;
    if (ok_runs == 0) {
      a.mean_db_of_mse = std::numeric_limits<double>::quiet_NaN();
      a.mean_of_dbs = std::numeric_limits<double>::quiet_NaN();
      return a;
    }
    const double mean_mse = sum_mse[i] / ok_runs;
    a.mean_db_of_mse = mean_mse > 0.0 ? 10.0 * std::log10(mean_mse)
                                      : -std::numeric_limits<double>::infinity();
    a.mean_of_dbs = sum_db[i] / ok_runs;
    return a;
  };
  report.mcs = aggregate(0);
  report.ch0 = aggregate(1);
  report.ch1 = aggregate(2);

  if (!cfg.output_path.empty())
    emit_report(report, cfg.output_format, cfg.output_path);
  return report;
}

std::string report_to_json(const RecoveryReport& report) {
  const ExperimentConfig& cfg = report.config;
  ordered_json j;
  ordered_json jc;
  jc["graph"] = graph_type_name(cfg.graph_type);
  jc["n"] = cfg.n;
  jc["knn"] = cfg.knn;
  jc["nl"] = cfg.nl;
  jc["nh"] = cfg.nh;
  jc["edge_prob"] = cfg.edge_prob;
  jc["graph_path"] = cfg.graph_path;
  jc["seed"] = cfg.seed;
  jc["model"] = model_name(cfg.model);
  jc["kernels"] = kernels_name(cfg.kernels);
  jc["mode"] = mode_name(cfg.filter_mode);
  jc["order"] = cfg.cheb_order;
  jc["k"] = cfg.k;
  jc["clusters"] = cfg.clusters;
  jc["bandwidth"] = cfg.bandwidth;
  jc["runs"] = cfg.runs;
  jc["sss"] = sss_name(cfg.sss);
  jc["beta"] = cfg.beta;
  jc["ridge"] = cfg.ridge;
  jc["pinv_tol"] = cfg.pinv_tol;
  jc["denom_floor"] = cfg.denom_floor;
  jc["fixed_graph"] = cfg.fixed_graph;
  j["config"] = std::move(jc);

  ordered_json jr = ordered_json::array();
  for (const RunResult& r : report.runs) {
    ordered_json row;
    row["run"] = r.run;
    row["seed"] = r.seed;
    row["failed"] = r.failed;
    if (r.failed) {
      row["error"] = r.error;
    } else {
      row["mse"] = {{"mcs", r.mse_mcs}, {"ch0", r.mse_ch0}, {"ch1", r.mse_ch1}};
      row["mse_db"] = {{"mcs", db_json(r.db_mcs)},
                       {"ch0", db_json(r.db_ch0)},
                       {"ch1", db_json(r.db_ch1)}};
      row["cond_m_sa"] = r.cond_m_sa;
      row["rank_m_sa"] = r.rank_m_sa;
      row["min_denominator"] = r.min_denominator;
      if (r.pr) {
        row["pr"] = {{"defect", r.pr->defect},
                     {"cross_term", r.pr->cross_term},
                     {"recon_identity", r.pr->recon_identity},
                     {"sa_gap", r.pr->sa_gap},
                     {"sb_gap", r.pr->sb_gap}};
      }
    }
    if (cfg.emit_timings) row["wall_ms"] = r.wall_ms;
    jr.push_back(std::move(row));
  }
  j["runs"] = std::move(jr);

  ordered_json ja;
  ja["mean_db_of_mse"] = {{"mcs", db_json(report.mcs.mean_db_of_mse)},
                          {"ch0", db_json(report.ch0.mean_db_of_mse)},
                          {"ch1", db_json(report.ch1.mean_db_of_mse)}};
  ja["mean_of_dbs"] = {{"mcs", db_json(report.mcs.mean_of_dbs)},
                       {"ch0", db_json(report.ch0.mean_of_dbs)},
                       {"ch1", db_json(report.ch1.mean_of_dbs)}};
  ja["failed_runs"] = report.failed_runs;
  if (cfg.emit_timings) ja["total_wall_ms"] = report.total_wall_ms;
  j["aggregate"] = std::move(ja);
  return j.dump(2) + "\n";
}

std::string report_to_csv(const RecoveryReport& report) {
  std::ostringstream out;
  std::istringstream cfg_text(config_to_text(report.config));
  std::string line;
  while (std::getline(cfg_text, line)) out << "# " << line << "\n";
  out << "run,seed,failed,mse_mcs_db,mse_ch0_db,mse_ch1_db,cond_m_sa,rank_m_sa,"
         "min_denominator,pr_defect,pr_cross_term,pr_recon_identity,pr_sa_gap,pr_sb_gap";
  if (report.config.emit_timings) out << ",wall_ms";
  out << ",error\n";
  for (const RunResult& r : report.runs) {
    out << r.run << "," << r.seed << "," << (r.failed ? 1 : 0) << ",";
    if (r.failed) {
      out << ",,,,,,,,,,";
    } else {
      out << db_csv(r.db_mcs) << "," << db_csv(r.db_ch0) << "," << db_csv(r.db_ch1) << ","
          << fmt_g17(r.cond_m_sa) << "," << r.rank_m_sa << "," << fmt_g17(r.min_denominator)
          << ",";
      if (r.pr) {
        out << fmt_g17(r.pr->defect) << "," << fmt_g17(r.pr->cross_term) << ","
            << fmt_g17(r.pr->recon_identity) << "," << fmt_g17(r.pr->sa_gap) << ","
            << fmt_g17(r.pr->sb_gap);
      } else {
        out << ",,,,";
      }
    }
    if (report.config.emit_timings) out << "," << fmt_g17(r.wall_ms);
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << "," << err << "\n";
  }
  out << "# mean_db_of_mse mcs=" << db_csv(report.mcs.mean_db_of_mse)
      << " ch0=" << db_csv(report.ch0.mean_db_of_mse)
      << " ch1=" << db_csv(report.ch1.mean_db_of_mse) << "\n";
  out << "# mean_of_dbs mcs=" << db_csv(report.mcs.mean_of_dbs)
      << " ch0=" << db_csv(report.ch0.mean_of_dbs)
      << " ch1=" << db_csv(report.ch1.mean_of_dbs) << "\n";
  return out.str();
}

void emit_report(const RecoveryReport& report, const std::string& format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write report: " + path);
  if (format == "json")
    out << report_to_json(report);
  else if (format == "csv")
    out << report_to_csv(report);
  else
    fail(ErrorCode::config, "unknown report format: " + format);
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

void emit_signal_dump(const Graph& g, const Eigen::VectorXd& original,
                      const Eigen::VectorXd& mcs, const Eigen::VectorXd& ch0,
                      const Eigen::VectorXd& ch1, const std::string& path) {
  const int n = g.order();
  if (original.size() != n || mcs.size() != n || ch0.size() != n || ch1.size() != n)
    fail(ErrorCode::invalid_argument, "signal length differs from vertex count");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write dump: " + path);
  out << "vertex,x,y,original,mcs,ch0,ch1\n";
  for (int i = 0; i < n; ++i) {
    double x = 0.0, y = 0.0;
    if (g.coords && g.coords->cols() >= 2) {
      x = (*g.coords)(i, 0);
      y = (*g.coords)(i, 1);
    }
    out << i << "," << fmt_g17(x) << "," << fmt_g17(y) << "," << fmt_g17(original(i)) << ","
        << fmt_g17(mcs(i)) << "," << fmt_g17(ch0(i)) << "," << fmt_g17(ch1(i)) << "\n";
  }
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

std::string report_summary(const RecoveryReport& report) {
  std::ostringstream out;
  auto db = [](double v) {
    if (std::isinf(v) && v < 0) return std::string("-inf");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  out << "runs " << report.runs.size() << " (" << report.failed_runs << " failed), "
      << "mean MSE dB (of mean): mcs " << db(report.mcs.mean_db_of_mse) << ", ch0 "
      << db(report.ch0.mean_db_of_mse) << ", ch1 " << db(report.ch1.mean_db_of_mse)
      << ", wall " << db(report.total_wall_ms / 1000.0) << " s";
  return out.str();
}

}  // namespace gmcs
