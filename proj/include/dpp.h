#ifndef DPP_H
#define DPP_H

/* C interface to the double-porosity/permeability verification engine.
 * All entry points are synchronous; a session owns the report and error
 * buffers returned by the accessors, which stay valid until the next run on
 * the same session or its destruction. */

#ifdef __cplusplus
extern "C" {
#endif

#define DPP_OK 0
#define DPP_SUITE_FAILURE 1
#define DPP_INPUT_ERROR 2
#define DPP_NUMERICAL_ERROR 3

typedef struct dpp_session dpp_session;

dpp_session* dpp_session_create(void);
void dpp_session_destroy(dpp_session* session);

/* Run a scenario given as JSON text. `overrides_json` may be NULL or a JSON
 * object with any of "suites" (array of strings), "seed" (integer), and
 * "levels" (integer), replacing the corresponding scenario fields. When
 * `out_dir` is non-NULL, report.json, series/*.csv and any requested
 * fields/*.vtk are written beneath it. Returns a DPP_* status code. */
int dpp_run_scenario_text(dpp_session* session, const char* scenario_json,
                          const char* overrides_json, const char* out_dir);

/* Same, reading the scenario from a file. */
int dpp_run_scenario_file(dpp_session* session, const char* path,
                          const char* overrides_json, const char* out_dir);

/* Report document of the last run ("" before the first run). */
const char* dpp_report_json(const dpp_session* session);

/* Human-readable description of the last failure ("" if none). */
const char* dpp_last_error(const dpp_session* session);

const char* dpp_version(void);

#ifdef __cplusplus
}
#endif

#endif /* DPP_H */
