#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "gmcs/graphmcs.h"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gmcs_capi_" + name)).string();
}

}  // namespace

TEST_CASE("graph handles: create, save, load, free") {
  gmcs_graph* g = nullptr;
  REQUIRE(gmcs_graph_sensor(32, 5, 7, &g) == GMCS_OK);
  CHECK(gmcs_graph_order(g) == 32);

  const std::string path = temp_path("graph.txt");
  REQUIRE(gmcs_graph_save(g, path.c_str()) == GMCS_OK);
  gmcs_graph* loaded = nullptr;
  REQUIRE(gmcs_graph_load(path.c_str(), &loaded) == GMCS_OK);
  CHECK(gmcs_graph_order(loaded) == 32);
  gmcs_graph_free(loaded);
  gmcs_graph_free(g);
}

TEST_CASE("errors surface through status codes and the message accessor") {
  gmcs_graph* g = nullptr;
  const gmcs_status s = gmcs_graph_load("/nonexistent/graph.txt", &g);
  CHECK(s == GMCS_ERR_IO);
  CHECK(std::strlen(gmcs_last_error()) > 0);
  CHECK(g == nullptr);

  CHECK(gmcs_graph_sensor(10, 4, 1, nullptr) == GMCS_ERR_ARGUMENT);
  CHECK(gmcs_graph_order(nullptr) == -1);
}

TEST_CASE("experiment through the C surface") {
  gmcs_config* cfg = nullptr;
  REQUIRE(gmcs_config_create(&cfg) == GMCS_OK);
  REQUIRE(gmcs_config_set(cfg, "n", "48") == GMCS_OK);
  REQUIRE(gmcs_config_set(cfg, "k", "24") == GMCS_OK);
  REQUIRE(gmcs_config_set(cfg, "runs", "1") == GMCS_OK);
  REQUIRE(gmcs_config_set(cfg, "mode", "exact") == GMCS_OK);
  CHECK(gmcs_config_set(cfg, "bogus", "1") == GMCS_ERR_CONFIG);

  gmcs_report* report = nullptr;
  REQUIRE(gmcs_run_experiment(cfg, &report) == GMCS_OK);
  CHECK(gmcs_report_failed_runs(report) == 0);

  double mcs_db = 0.0;
  REQUIRE(gmcs_report_mean_mse_db(report, "mcs", &mcs_db) == GMCS_OK);
  CHECK(mcs_db <= -150.0);
  double ch0_db = 0.0;
  REQUIRE(gmcs_report_mean_mse_db(report, "ch0", &ch0_db) == GMCS_OK);
  CHECK(ch0_db >= -40.0);
  CHECK(gmcs_report_mean_mse_db(report, "nope", &ch0_db) == GMCS_ERR_ARGUMENT);

  const std::string json_path = temp_path("report.json");
  REQUIRE(gmcs_report_write(report, "json", json_path.c_str()) == GMCS_OK);
  CHECK(std::filesystem::file_size(json_path) > 100);
  CHECK(gmcs_report_write(report, "yaml", json_path.c_str()) == GMCS_ERR_CONFIG);

  char summary[256];
  REQUIRE(gmcs_report_summary(report, summary, sizeof(summary)) == GMCS_OK);
  CHECK(std::strlen(summary) > 10);

  gmcs_report_free(report);
  gmcs_config_free(cfg);
}

TEST_CASE("config files load through the C surface") {
  const std::string path = temp_path("config.txt");
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("n = 40\nk = 20\nruns = 1\nmode = exact\n", f);
    fclose(f);
  }
  gmcs_config* cfg = nullptr;
  REQUIRE(gmcs_config_load(path.c_str(), &cfg) == GMCS_OK);
  gmcs_report* report = nullptr;
  REQUIRE(gmcs_run_experiment(cfg, &report) == GMCS_OK);
  CHECK(gmcs_report_failed_runs(report) == 0);
  gmcs_report_free(report);
  gmcs_config_free(cfg);
}

TEST_CASE("sampling set selection through the C surface") {
  gmcs_graph* g = nullptr;
  REQUIRE(gmcs_graph_sensor(32, 5, 3, &g) == GMCS_OK);
  std::vector<int> set(16, -1);
  REQUIRE(gmcs_select_sampling_set(g, "meyer,exact", "ubp", 16, 1, set.data()) == GMCS_OK);
  std::vector<char> seen(32, 0);
  for (int v : set) {
    CHECK(v >= 0);
    CHECK(v < 32);
    CHECK(!seen[v]);
    seen[v] = 1;
  }
  // the same call is deterministic
  std::vector<int> again(16, -1);
  REQUIRE(gmcs_select_sampling_set(g, "meyer,exact", "ubp", 16, 1, again.data()) == GMCS_OK);
  CHECK(set == again);
  CHECK(gmcs_select_sampling_set(g, "meyer,exact", "nope", 4, 1, set.data()) ==
        GMCS_ERR_ARGUMENT);
  gmcs_graph_free(g);
}

TEST_CASE("perfect-reconstruction verification through the C surface") {
  gmcs_graph* g = nullptr;
  REQUIRE(gmcs_graph_bipartite(8, 8, 0.5, 2, &g) == GMCS_OK);
  std::vector<int> low, high;
  for (int i = 0; i < 8; ++i) low.push_back(i);
  for (int i = 8; i < 16; ++i) high.push_back(i);
  gmcs_pr_result result{};
  REQUIRE(gmcs_verify_pr(g, low.data(), 8, high.data(), 8, "meyer", &result) == GMCS_OK);
  CHECK(result.pr_defect <= 1e-8);
  CHECK(result.cross_term <= 1e-8);
  CHECK(result.recon_identity <= 1e-8);
  CHECK(result.sa_gap <= 1e-8);
  CHECK(result.sb_gap <= 1e-8);
  CHECK(gmcs_verify_pr(g, low.data(), 8, high.data(), 8, "fancy", &result) ==
        GMCS_ERR_ARGUMENT);
  gmcs_graph_free(g);
}
