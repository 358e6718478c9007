/* memkin: molecular memristor kinetic model, C interface.
 *
 * Objects are opaque handles released with the matching *_free call. Every call that
 * can fail returns a memkin_status; on failure memkin_last_error() describes the
 * problem for the calling thread. Strings returned through char** are allocated by
 * the library and released with memkin_string_free.
 */
#ifndef MEMKIN_H
#define MEMKIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(MEMKIN_BUILDING)
#define MEMKIN_API __attribute__((visibility("default")))
#else
#define MEMKIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum memkin_status {
    MEMKIN_OK = 0,
    MEMKIN_ERR_PARSE = 1,      /* malformed config text */
    MEMKIN_ERR_VALIDATION = 2, /* parameters or arguments violate a constraint */
    MEMKIN_ERR_MODEL = 3,      /* solver or physics failure (stalled layer, quadrature, ...) */
    MEMKIN_ERR_IO = 4,
    MEMKIN_ERR_INTERNAL = 5
} memkin_status;

typedef struct memkin_params memkin_params;
typedef struct memkin_trace memkin_trace;
typedef struct memkin_phase memkin_phase;

MEMKIN_API const char* memkin_version(void);
MEMKIN_API const char* memkin_last_error(void);
MEMKIN_API void memkin_string_free(char* s);

/* 0 restores the default (MEMKIN_THREADS, else hardware concurrency). */
MEMKIN_API void memkin_set_threads(int n);

/* ---- parameters ---- */

MEMKIN_API memkin_status memkin_params_defaults(memkin_params** out);
MEMKIN_API memkin_status memkin_params_parse(const char* text, memkin_params** out);
MEMKIN_API memkin_status memkin_params_load(const char* path, memkin_params** out);
MEMKIN_API memkin_status memkin_params_clone(const memkin_params* p, memkin_params** out);
MEMKIN_API void memkin_params_free(memkin_params* p);

/* Raw assignment; call memkin_params_validate afterwards. */
MEMKIN_API memkin_status memkin_params_set(memkin_params* p, const char* key, const char* value);
MEMKIN_API memkin_status memkin_params_get(const memkin_params* p, const char* key, double* out);
/* warnings (may be NULL) receives newline-separated warnings, empty when none. */
MEMKIN_API memkin_status memkin_params_validate(const memkin_params* p, char** warnings);
MEMKIN_API memkin_status memkin_params_serialize(const memkin_params* p, char** out);
MEMKIN_API memkin_status memkin_params_to_json(const memkin_params* p, char** out);

MEMKIN_API double memkin_thermal_energy(double T);

/* ---- nucleation layout ---- */

typedef struct memkin_layout_info {
    double a1, a2;
    int n_layers;
    int n_stalled;
} memkin_layout_info;

/* first_passage may be NULL, else holds N_z entries (-1 for stalled layers). */
MEMKIN_API memkin_status memkin_layout(const memkin_params* p, double V_write, int depression,
                                       memkin_layout_info* info, int* first_passage);

/* ---- traces ---- */

typedef enum memkin_mode { MEMKIN_POTENTIATION = 0, MEMKIN_DEPRESSION = 1, MEMKIN_CYCLE = 2, MEMKIN_DC = 3 } memkin_mode;

typedef struct memkin_point {
    double level; /* pulse index, or voltage for dc sweeps */
    double current_A;
    double f22, f31, f11, f00;
} memkin_point;

typedef struct memkin_linearity {
    double nu_P, nu_D, mu_P, mu_D;
    int n_max_P, n_max_D;
    int has_P, has_D;
    int defined_P, defined_D;
} memkin_linearity;

typedef struct memkin_conservation {
    double max_current_dev;
    double max_norm_dev;
    double max_fraction_dev;
} memkin_conservation;

MEMKIN_API memkin_status memkin_run_potentiation(const memkin_params* p, int stride, memkin_trace** out);
MEMKIN_API memkin_status memkin_run_depression(const memkin_params* p, double start_fraction, int stride,
                                               memkin_trace** out);
MEMKIN_API memkin_status memkin_run_cycle(const memkin_params* p, int n_stop, int stride, memkin_trace** out);
MEMKIN_API memkin_status memkin_dc_sweep(const memkin_params* p, double V_start, double V_stop, double V_step,
                                         memkin_trace** out);
MEMKIN_API void memkin_trace_free(memkin_trace* t);

MEMKIN_API size_t memkin_trace_length(const memkin_trace* t);
MEMKIN_API memkin_mode memkin_trace_mode(const memkin_trace* t);
/* Index of the first depression point of a cycle trace, 0 otherwise. */
MEMKIN_API size_t memkin_trace_split(const memkin_trace* t);
MEMKIN_API memkin_status memkin_trace_point(const memkin_trace* t, size_t i, memkin_point* out);
MEMKIN_API memkin_status memkin_trace_linearity(const memkin_trace* t, memkin_linearity* out);
MEMKIN_API memkin_status memkin_trace_conservation(const memkin_trace* t, memkin_conservation* out);
MEMKIN_API memkin_status memkin_trace_params(const memkin_trace* t, memkin_params** out);
MEMKIN_API memkin_status memkin_trace_svg(const memkin_trace* t, int log_y, char** out);

/* ---- scenarios ---- */

typedef struct memkin_interface_report {
    int stalled;
    int n_stalled;
    double nu_P, nu_P_baseline, nu_ratio;
    double df_spread, df_spread_baseline;
    char diagnostic[256];
} memkin_interface_report;

MEMKIN_API memkin_status memkin_interface_scenario(const memkin_params* modified, const memkin_params* baseline,
                                                   int stride, memkin_interface_report* out);

typedef struct memkin_arrhenius_result {
    double E_a;
    double attempt_frequency;
    double fit_residual;
    double max_pair_spread;
} memkin_arrhenius_result;

/* rates may be NULL, else receives n_pairs * n_temps values, row-major by pair. */
MEMKIN_API memkin_status memkin_arrhenius(const memkin_params* p, const double* temperatures, size_t n_temps,
                                          const int* pairs, size_t n_pairs, memkin_arrhenius_result* out,
                                          double* rates);

/* NULL axes select the default grid. */
MEMKIN_API memkin_status memkin_phase_diagram(const memkin_params* p, const double* rates_per_us, size_t n_rates,
                                              const double* amplitudes_V, size_t n_amplitudes, int stride,
                                              memkin_phase** out);
MEMKIN_API void memkin_phase_free(memkin_phase* d);

typedef struct memkin_phase_cell {
    double rate_per_us, amplitude_V;
    double nu_P, nu_D, nu_P_norm, nu_D_norm;
    const char* error; /* NULL for a good cell; owned by the diagram */
} memkin_phase_cell;

MEMKIN_API void memkin_phase_dims(const memkin_phase* d, size_t* n_amplitudes, size_t* n_rates);
MEMKIN_API memkin_status memkin_phase_cell_at(const memkin_phase* d, size_t amplitude_index, size_t rate_index,
                                              memkin_phase_cell* out);
MEMKIN_API double memkin_phase_start_fraction(const memkin_phase* d);

/* cells receives size*size bytes (0 or 1), row-major. */
MEMKIN_API memkin_status memkin_xy_map(const memkin_params* p, int n, uint64_t seed, int size, unsigned char* cells,
                                       double* target);
MEMKIN_API memkin_status memkin_xy_map_svg(const unsigned char* cells, int size, const char* title, char** out);

#ifdef __cplusplus
}
#endif

#endif
