#include "gmcs/graphmcs.h"

#include <cstring>
#include <string>

#include "gmcs/bench.hpp"
#include "gmcs/errors.hpp"
#include "gmcs/filterbank.hpp"
#include "gmcs/filters.hpp"
#include "gmcs/graph.hpp"
#include "gmcs/multichannel.hpp"
#include "gmcs/sampling.hpp"
#include "gmcs/signal_models.hpp"
#include "gmcs/spectral.hpp"

struct gmcs_graph {
  gmcs::Graph g;
};

struct gmcs_config {
  gmcs::ExperimentConfig cfg;
};

struct gmcs_report {
  gmcs::RecoveryReport report;
};

namespace {

thread_local std::string g_last_error;

gmcs_status map_code(gmcs::ErrorCode code) {
  switch (code) {
    case gmcs::ErrorCode::invalid_argument: return GMCS_ERR_ARGUMENT;
    case gmcs::ErrorCode::io: return GMCS_ERR_IO;
    case gmcs::ErrorCode::config: return GMCS_ERR_CONFIG;
    case gmcs::ErrorCode::numeric: return GMCS_ERR_NUMERIC;
    case gmcs::ErrorCode::internal: return GMCS_ERR_INTERNAL;
  }
  return GMCS_ERR_INTERNAL;
}

template <typename Fn>
gmcs_status guarded(Fn&& fn) {
  try {
    fn();
    return GMCS_OK;
  } catch (const gmcs::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GMCS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GMCS_ERR_INTERNAL;
  }
}

gmcs_status require(bool ok, const char* message) {
  if (ok) return GMCS_OK;
  g_last_error = message;
  return GMCS_ERR_ARGUMENT;
}

struct ChannelSpecString {
  gmcs::KernelFamily family = gmcs::KernelFamily::meyer;
  gmcs::FilterMode mode = gmcs::FilterMode::poly;
  int order = 50;
};

ChannelSpecString parse_channels(const std::string& spec) {
  ChannelSpecString out;
  std::string rest = spec;
  auto next = [&rest]() {
    const auto comma = rest.find(',');
    std::string tok = rest.substr(0, comma);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    return tok;
  };
  const std::string family = next();
  if (family == "meyer") out.family = gmcs::KernelFamily::meyer;
  else if (family == "mexhat" || family == "mexican_hat")
    out.family = gmcs::KernelFamily::mexican_hat;
  else gmcs::fail(gmcs::ErrorCode::invalid_argument, "unknown kernel family: " + family);
  if (!rest.empty()) {
    const std::string mode = next();
    if (mode == "exact") out.mode = gmcs::FilterMode::exact;
    else if (mode == "poly") out.mode = gmcs::FilterMode::poly;
    else gmcs::fail(gmcs::ErrorCode::invalid_argument, "unknown filter mode: " + mode);
  }
  if (!rest.empty()) {
    try {
      out.order = std::stoi(rest);
    } catch (...) {
      gmcs::fail(gmcs::ErrorCode::invalid_argument, "bad polynomial order: " + rest);
    }
    if (out.order < 0)
      gmcs::fail(gmcs::ErrorCode::invalid_argument, "polynomial order must be >= 0");
  }
  return out;
}

}  // namespace

extern "C" {

const char* gmcs_version(void) { return "0.1.0"; }

const char* gmcs_last_error(void) { return g_last_error.c_str(); }

gmcs_status gmcs_graph_sensor(int n, int k, unsigned long long seed, gmcs_graph** out) {
  if (gmcs_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new gmcs_graph{gmcs::random_sensor_graph(n, k, seed)}; });
}

gmcs_status gmcs_graph_swiss_roll(int n, int k, unsigned long long seed, gmcs_graph** out) {
  if (gmcs_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new gmcs_graph{gmcs::swiss_roll_graph(n, k, seed)}; });
}

gmcs_status gmcs_graph_bipartite(int nl, int nh, double p, unsigned long long seed,
                                 gmcs_graph** out) {
  if (gmcs_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] {
    auto [g, part] = gmcs::random_bipartite_graph(nl, nh, p, seed);
    (void)part;  // recoverable from the vertex layout: [0, nl) and [nl, nl+nh)
    *out = new gmcs_graph{std::move(g)};
  });
}

gmcs_status gmcs_graph_load(const char* path, gmcs_graph** out) {
  if (gmcs_status s = require(out != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { *out = new gmcs_graph{gmcs::load_edge_list(path).graph}; });
}

gmcs_status gmcs_graph_save(const gmcs_graph* g, const char* path) {
  if (gmcs_status s = require(g != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { gmcs::save_edge_list(g->g, path); });
}

int gmcs_graph_order(const gmcs_graph* g) { return g ? g->g.order() : -1; }

void gmcs_graph_free(gmcs_graph* g) { delete g; }

gmcs_status gmcs_config_create(gmcs_config** out) {
  if (gmcs_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new gmcs_config{}; });
}

gmcs_status gmcs_config_load(const char* path, gmcs_config** out) {
  if (gmcs_status s = require(out != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { *out = new gmcs_config{gmcs::parse_config_file(path)}; });
}

gmcs_status gmcs_config_set(gmcs_config* cfg, const char* key, const char* value) {
  if (gmcs_status s =
          require(cfg != nullptr && key != nullptr && value != nullptr, "null argument"))
    return s;
  return guarded([&] { gmcs::apply_config_override(cfg->cfg, key, value); });
}

void gmcs_config_free(gmcs_config* cfg) { delete cfg; }

gmcs_status gmcs_run_experiment(const gmcs_config* cfg, gmcs_report** out) {
  if (gmcs_status s = require(cfg != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new gmcs_report{gmcs::run_experiment(cfg->cfg)}; });
}

gmcs_status gmcs_report_write(const gmcs_report* report, const char* format,
                              const char* path) {
  if (gmcs_status s = require(report != nullptr && format != nullptr && path != nullptr,
                              "null argument"))
    return s;
  return guarded([&] { gmcs::emit_report(report->report, format, path); });
}

gmcs_status gmcs_report_mean_mse_db(const gmcs_report* report, const char* method,
                                    double* out) {
  if (gmcs_status s = require(report != nullptr && method != nullptr && out != nullptr,
                              "null argument"))
    return s;
  const std::string m = method;
  if (m == "mcs") *out = report->report.mcs.mean_db_of_mse;
  else if (m == "ch0") *out = report->report.ch0.mean_db_of_mse;
  else if (m == "ch1") *out = report->report.ch1.mean_db_of_mse;
  else return require(false, "unknown method (want mcs, ch0 or ch1)");
  return GMCS_OK;
}

int gmcs_report_failed_runs(const gmcs_report* report) {
  return report ? report->report.failed_runs : -1;
}

gmcs_status gmcs_report_summary(const gmcs_report* report, char* buf, int buflen) {
  if (gmcs_status s = require(report != nullptr && buf != nullptr && buflen > 0,
                              "null or empty buffer"))
    return s;
  return guarded([&] {
    const std::string text = gmcs::report_summary(report->report);
    std::snprintf(buf, static_cast<std::size_t>(buflen), "%s", text.c_str());
  });
}

void gmcs_report_free(gmcs_report* report) { delete report; }

gmcs_status gmcs_select_sampling_set(const gmcs_graph* g, const char* channels,
                                     const char* model, int k, unsigned long long seed,
                                     int* set_out) {
  if (gmcs_status s = require(g != nullptr && channels != nullptr && model != nullptr &&
                                  set_out != nullptr,
                              "null argument"))
    return s;
  return guarded([&] {
    const ChannelSpecString ch = parse_channels(channels);
    const int n = g->g.order();
    if (k < 1 || k >= n)
      gmcs::fail(gmcs::ErrorCode::invalid_argument, "need 1 <= k < vertex count");

    auto lap = std::make_shared<Eigen::MatrixXd>(
        gmcs::laplacian(g->g, gmcs::LaplacianKind::combinatorial));
    auto dec = std::make_shared<gmcs::SpectralDecomposition>(
        gmcs::eigendecompose(*lap, gmcs::LaplacianKind::combinatorial));
    const double lmax = dec->lambda_max();
    auto pair = ch.family == gmcs::KernelFamily::meyer ? gmcs::meyer_pair(lmax)
                                                       : gmcs::mexican_hat_pair(lmax);
    gmcs::FilterPtr f0, f1;
    if (ch.mode == gmcs::FilterMode::exact) {
      f0 = gmcs::make_exact_filter(dec, pair.first);
      f1 = gmcs::make_exact_filter(dec, pair.second);
    } else {
      f0 = gmcs::make_chebyshev_filter(lap, gmcs::chebyshev_fit(pair.first, ch.order, lmax));
      f1 = gmcs::make_chebyshev_filter(lap, gmcs::chebyshev_fit(pair.second, ch.order, lmax));
    }

    Eigen::MatrixXd a0, a1;
    const std::string model_str = model;
    if (model_str == "ubp") {
      const gmcs::UbpGenerators gen = gmcs::ubp_generators(*dec);
      a0 = gen.a0;
      a1 = gen.a1;
    } else if (model_str == "pws") {
      const gmcs::PwsGenerators gen =
          gmcs::pws_generators(g->g, *dec, 4, std::max(1, k / 4), seed);
      a0 = gen.indicators;
      a1 = gen.bandlimited;
    } else {
      gmcs::fail(gmcs::ErrorCode::invalid_argument, "unknown model (want ubp or pws)");
    }

    const Eigen::MatrixXd z0 = gmcs::build_z(*f0, a0);
    const Eigen::MatrixXd z1 = gmcs::build_z(*f1, a1);
    const gmcs::TwoChannelSssResult sel = gmcs::sss_two_channel(z0, z1, k, {});
    for (int i = 0; i < k; ++i) set_out[i] = sel.set0[i];
  });
}

gmcs_status gmcs_verify_pr(const gmcs_graph* g, const int* low, int nlow, const int* high,
                           int nhigh, const char* kernels, gmcs_pr_result* out) {
  if (gmcs_status s = require(g != nullptr && low != nullptr && high != nullptr &&
                                  kernels != nullptr && out != nullptr,
                              "null argument"))
    return s;
  return guarded([&] {
    gmcs::BipartitePartition part;
    part.low_set.assign(low, low + nlow);
    part.high_set.assign(high, high + nhigh);
    const std::string family = kernels;
    gmcs::BgfbKernelChoice choice;
    if (family == "meyer") choice = gmcs::BgfbKernelChoice::meyer();
    else if (family == "ideal") choice = gmcs::BgfbKernelChoice::ideal();
    else gmcs::fail(gmcs::ErrorCode::invalid_argument, "unknown kernels (want meyer or ideal)");
    const gmcs::BgfbSystem bank = gmcs::build_bgfb(g->g, part, choice);
    const gmcs::PrCheck pr = gmcs::check_pr(bank);
    const gmcs::BipartiteEquivalenceReport th = gmcs::verify_bipartite_equivalence(bank);
    out->pr_defect = pr.defect;
    out->cross_term = th.cross_term;
    out->recon_identity = th.recon_identity;
    out->sa_gap = th.sa_gap;
    out->sb_gap = th.sb_gap;
  });
}

}  // extern "C"
