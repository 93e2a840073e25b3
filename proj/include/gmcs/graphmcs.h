/* C API for the graph multi-channel sampling library.
 *
 * All functions return GMCS_OK (0) on success; on failure they return a
 * nonzero status and gmcs_last_error() describes what went wrong (the message
 * is thread-local and valid until the next failing call on that thread).
 * Handles are opaque and must be released with the matching *_free function.
 */

#ifndef GMCS_GRAPHMCS_H
#define GMCS_GRAPHMCS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GMCS_OK = 0,
  GMCS_ERR_ARGUMENT = 1,
  GMCS_ERR_IO = 2,
  GMCS_ERR_CONFIG = 3,
  GMCS_ERR_NUMERIC = 4,
  GMCS_ERR_INTERNAL = 5
} gmcs_status;

typedef struct gmcs_graph gmcs_graph;
typedef struct gmcs_config gmcs_config;
typedef struct gmcs_report gmcs_report;

const char* gmcs_version(void);
const char* gmcs_last_error(void);

/* ---- graphs ---- */

gmcs_status gmcs_graph_sensor(int n, int k, unsigned long long seed, gmcs_graph** out);
gmcs_status gmcs_graph_swiss_roll(int n, int k, unsigned long long seed, gmcs_graph** out);
/* bipartite graphs report their partition as vertices [0, nl) and [nl, nl+nh) */
gmcs_status gmcs_graph_bipartite(int nl, int nh, double p, unsigned long long seed,
                                 gmcs_graph** out);
gmcs_status gmcs_graph_load(const char* path, gmcs_graph** out);
gmcs_status gmcs_graph_save(const gmcs_graph* g, const char* path);
/* vertex count; -1 when g is NULL */
int gmcs_graph_order(const gmcs_graph* g);
void gmcs_graph_free(gmcs_graph* g);

/* ---- experiment configuration ---- */

gmcs_status gmcs_config_create(gmcs_config** out);
gmcs_status gmcs_config_load(const char* path, gmcs_config** out);
/* same keys as the config file; overrides one entry */
gmcs_status gmcs_config_set(gmcs_config* cfg, const char* key, const char* value);
void gmcs_config_free(gmcs_config* cfg);

/* ---- experiments ---- */

gmcs_status gmcs_run_experiment(const gmcs_config* cfg, gmcs_report** out);
gmcs_status gmcs_report_write(const gmcs_report* report, const char* format,
                              const char* path);
/* method is one of "mcs", "ch0", "ch1"; returns 10 log10(mean MSE) */
gmcs_status gmcs_report_mean_mse_db(const gmcs_report* report, const char* method,
                                    double* out);
int gmcs_report_failed_runs(const gmcs_report* report);
/* human-readable one-paragraph summary; truncates to buflen */
gmcs_status gmcs_report_summary(const gmcs_report* report, char* buf, int buflen);
void gmcs_report_free(gmcs_report* report);

/* ---- sampling set selection ----
 * channels: "<family>,<mode>[,<order>]", family in {meyer, mexhat},
 *           mode in {exact, poly}; order defaults to 50.
 * model:    "ubp" or "pws" (pws uses 4 clusters and bandwidth k/4).
 * set_out must hold k ints; receives the picks in selection order. */
gmcs_status gmcs_select_sampling_set(const gmcs_graph* g, const char* channels,
                                     const char* model, int k, unsigned long long seed,
                                     int* set_out);

/* ---- filter-bank verification ----
 * kernels is "meyer" or "ideal". low/high must partition [0, n). */
typedef struct {
  double pr_defect;
  double cross_term;
  double recon_identity;
  double sa_gap;
  double sb_gap;
} gmcs_pr_result;

gmcs_status gmcs_verify_pr(const gmcs_graph* g, const int* low, int nlow, const int* high,
                           int nhigh, const char* kernels, gmcs_pr_result* out);

#ifdef __cplusplus
}
#endif

#endif /* GMCS_GRAPHMCS_H */
