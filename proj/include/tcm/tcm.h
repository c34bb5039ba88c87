#ifndef TCM_TCM_H
#define TCM_TCM_H

#include <stddef.h>
#include <stdint.h>

#if defined(TCM_BUILDING_LIBRARY)
#define TCM_API __attribute__((visibility("default")))
#else
#define TCM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
enum {
  TCM_OK = 0,
  TCM_ERR_INTERNAL = 1,
  TCM_ERR_CONFIG = 2,       /* config, parameter and input-series errors */
  TCM_ERR_NUMERIC = 3,      /* CFL guard */
  TCM_ERR_IO = 4,           /* I/O and checksum errors */
  TCM_ERR_CHECK_FAILED = 5  /* an asserted check failed */
};

typedef struct tcm_config tcm_config;
typedef struct tcm_simulation tcm_simulation;

TCM_API const char* tcm_version(void);

/* Message and error-kind name of the last failure on this thread. */
TCM_API const char* tcm_last_error(void);
TCM_API const char* tcm_last_error_kind(void);

/* Plain-text summary of the last command run on this thread. */
TCM_API const char* tcm_last_summary(void);

TCM_API int tcm_config_default(tcm_config** out);
TCM_API int tcm_config_load(const char* path, tcm_config** out);
TCM_API int tcm_config_parse(const char* text, tcm_config** out);
TCM_API int tcm_config_set(tcm_config* cfg, const char* section, const char* key,
                           const char* value);
/* Copies the text form (NUL terminated) when it fits; *needed gets its size
   including the terminator. */
TCM_API int tcm_config_to_text(const tcm_config* cfg, char* buffer, size_t capacity,
                               size_t* needed);
TCM_API void tcm_config_free(tcm_config* cfg);

TCM_API int tcm_simulation_create(const tcm_config* cfg, tcm_simulation** out);
TCM_API int tcm_simulation_step(tcm_simulation* sim, int steps);
TCM_API double tcm_simulation_time(const tcm_simulation* sim);
TCM_API int tcm_simulation_grid_size(const tcm_simulation* sim);
TCM_API int tcm_simulation_energy(const tcm_simulation* sim, double* energy);
/* Physical samples of "u1", "u2", "v1", "v2" or "theta", row-major (iy*n+ix);
   `count` must be n*n. */
TCM_API int tcm_simulation_field(const tcm_simulation* sim, const char* name, double* buffer,
                                 size_t count);
TCM_API void tcm_simulation_free(tcm_simulation* sim);

/* `out_dir` may be NULL to use the config's output directory. */
TCM_API int tcm_run(const tcm_config* cfg, const char* out_dir);
/* `source` is a completed run directory or a config file. */
TCM_API int tcm_check(const char* source, const char* out_dir);
TCM_API int tcm_check_config(const tcm_config* cfg, const char* out_dir);
TCM_API int tcm_sweep_eps(const tcm_config* const* levels, size_t count, const char* out_dir);
TCM_API int tcm_sweep_eps_levels(const tcm_config* base, const double* eps, size_t count,
                                 const char* out_dir);
/* shape: "random_band" or "single_mode". */
TCM_API int tcm_twin(const tcm_config* cfg, double delta, const char* shape, uint64_t seed,
                     const char* out_dir);
/* fit != 0 fits the minimal K (clipped at k_min); otherwise k is used, with
   k <= 0 meaning 1. */
TCM_API int tcm_gronwall(const char* csv_path, int fit, double k, double k_min, double tol,
                         const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif
