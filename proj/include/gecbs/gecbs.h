#ifndef GECBS_H
#define GECBS_H

/* C interface to the gecbs solver library. Every function returns a status
 * code; on failure gecbs_last_error() describes the problem for the calling
 * thread. Strings returned through char** are owned by the caller and must be
 * released with gecbs_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GECBS_BUILDING)
#    define GECBS_API __declspec(dllexport)
#  else
#    define GECBS_API __declspec(dllimport)
#  endif
#else
#  define GECBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gecbs_status {
    GECBS_OK = 0,
    GECBS_UNSOLVED = 1,
    GECBS_INVALID_INPUT = 2,
    GECBS_MALFORMED = 3,
    GECBS_IO_ERROR = 4,
    GECBS_INTERNAL = 5
} gecbs_status;

typedef struct gecbs_scenario gecbs_scenario;
typedef struct gecbs_run gecbs_run;

GECBS_API const char* gecbs_version(void);
GECBS_API const char* gecbs_last_error(void);
GECBS_API void gecbs_string_free(char* s);

/* Scenarios */
GECBS_API gecbs_status gecbs_scenario_load(const char* path, gecbs_scenario** out);
GECBS_API gecbs_status gecbs_scenario_parse(const char* json_text, gecbs_scenario** out);
GECBS_API gecbs_status gecbs_scenario_to_json(const gecbs_scenario* scenario, char** out);
GECBS_API const char* gecbs_scenario_name(const gecbs_scenario* scenario);
GECBS_API int gecbs_scenario_agent_count(const gecbs_scenario* scenario);
GECBS_API void gecbs_scenario_free(gecbs_scenario* scenario);

/* Solving. Unset fields keep the scenario's solver settings. */
typedef struct gecbs_solve_options {
    const char* algorithm; /* NULL: keep */
    double w;              /* <= 0: keep */
    double timeout_ms;     /* < 0: keep */
    int64_t max_expansions; /* < 0: keep */
    uint64_t seed;
    int override_seed; /* non-zero: use `seed` */
} gecbs_solve_options;

GECBS_API void gecbs_solve_options_init(gecbs_solve_options* options);
/* Returns GECBS_OK when a run record was produced, solved or not. */
GECBS_API gecbs_status gecbs_solve(const gecbs_scenario* scenario, const gecbs_solve_options* options,
                                   gecbs_run** out);

/* Run records (RUN.json) */
GECBS_API gecbs_status gecbs_run_load(const char* path, gecbs_run** out);
GECBS_API gecbs_status gecbs_run_save(const gecbs_run* run, const char* path);
GECBS_API gecbs_status gecbs_run_to_json(const gecbs_run* run, char** out);
GECBS_API int gecbs_run_solved(const gecbs_run* run);
GECBS_API const char* gecbs_run_status(const gecbs_run* run);
GECBS_API const char* gecbs_run_algorithm(const gecbs_run* run);
GECBS_API double gecbs_run_runtime_ms(const gecbs_run* run);
GECBS_API double gecbs_run_cost(const gecbs_run* run);
GECBS_API double gecbs_run_lb(const gecbs_run* run);
GECBS_API int64_t gecbs_run_hl_expansions(const gecbs_run* run);
GECBS_API int64_t gecbs_run_ll_calls(const gecbs_run* run);
/* Cost after shortcutting; negative when the run was not shortcut. */
GECBS_API double gecbs_run_shortcut_cost(const gecbs_run* run);
GECBS_API void gecbs_run_free(gecbs_run* run);

/* Shortcuts the run's solution in place. GECBS_UNSOLVED when it has none. */
GECBS_API gecbs_status gecbs_run_shortcut(gecbs_run* run, int passes);

/* Verifies the run's solution (and its shortcut solution, when present)
 * against the scenario. *clean is 1 when no violation was found; *report
 * (optional) receives a JSON list of violations. GECBS_UNSOLVED when the run
 * holds no solution. */
GECBS_API gecbs_status gecbs_verify(const gecbs_scenario* scenario, const gecbs_run* run, int* clean,
                                    char** report);

/* Instance generation: writes `count` scenario files into out_dir. */
GECBS_API gecbs_status gecbs_generate(const char* template_name_or_path, int count, uint64_t seed,
                                      const char* out_dir, int* written);

typedef struct gecbs_bench_options {
    const char* algorithms; /* comma separated */
    double w;               /* <= 0: keep */
    double timeout_ms;      /* < 0: keep */
    int64_t max_expansions; /* < 0: keep */
    int jobs;               /* <= 0: hardware concurrency */
    int shortcut_passes;
    const char* frames_path;  /* NULL: no frames file */
    const char* summary_path; /* NULL: no aggregate CSV */
} gecbs_bench_options;

GECBS_API void gecbs_bench_options_init(gecbs_bench_options* options);
/* Runs every scenario in dir with every algorithm and writes the CSV to
 * out_csv. *table (optional) receives the aggregate table as text. */
GECBS_API gecbs_status gecbs_bench(const char* dir, const gecbs_bench_options* options, const char* out_csv,
                                   char** table);

#ifdef __cplusplus
}
#endif

#endif
