#ifndef ORKA_H
#define ORKA_H

/* C interface to the ORKA reconstruction library.
 *
 * All objects are opaque handles; every call that can fail returns an
 * orka_status. Handles returned through out-parameters are owned by the
 * caller and must be released with the matching _free function.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orka_status {
    ORKA_OK = 0,
    ORKA_E_INVALID = 1,   /* bad argument or malformed input */
    ORKA_E_BUDGET = 2,    /* graph node budget exceeded */
    ORKA_E_IO = 3,        /* file read/write failure */
    ORKA_E_NOMEM = 4,
    ORKA_E_INTERNAL = 5
} orka_status;

typedef struct orka_matrix orka_matrix;
typedef struct orka_object orka_object;   /* one extracted object estimate */

/* mu value meaning "constant object" (exact mean projection solve) */
double orka_mu_infinity(void);

/* Human-readable detail for the most recent failing call on this thread. */
const char* orka_last_error(void);

/* ---- matrices ---------------------------------------------------------- */

orka_status orka_matrix_create(size_t rows, size_t cols, orka_matrix** out);
void orka_matrix_free(orka_matrix* m);

size_t orka_matrix_rows(const orka_matrix* m);
size_t orka_matrix_cols(const orka_matrix* m);
/* frame shape of one column; (rows, 1) unless the matrix is a clip */
size_t orka_matrix_frame_rows(const orka_matrix* m);
size_t orka_matrix_frame_cols(const orka_matrix* m);
orka_status orka_matrix_set_frame_shape(orka_matrix* m, size_t fr, size_t fc);

/* column-major storage, rows*cols entries; valid until the matrix is freed */
double* orka_matrix_data(orka_matrix* m);
const double* orka_matrix_data_const(const orka_matrix* m);

/* format: 0 = auto (sniff magic / extension), 1 = csv, 2 = binary */
orka_status orka_matrix_load(const char* path, int format, orka_matrix** out);
orka_status orka_matrix_save(const orka_matrix* m, const char* path, int format);

orka_status orka_matrix_normalize_columns(orka_matrix* m);
orka_status orka_psnr(const orka_matrix* ref, const orka_matrix* x, double* out_db);

/* ---- synthetic data ---------------------------------------------------- */

orka_status orka_gen_gap_matrix(orka_matrix** out);

/* clean scene plus ground-truth shifts (truth_x has n entries, may be NULL) */
orka_status orka_gen_pulse_scene(size_t m, size_t n, double velocity, double width,
                                 double form_drift, int add_noise, double noise_psnr_db,
                                 uint64_t seed, orka_matrix** out_data,
                                 orka_matrix** out_clean, long* truth_x);

orka_status orka_gen_moving_square(size_t frame_rows, size_t frame_cols, size_t frames,
                                   long vx, long vy, size_t square, double amplitude,
                                   uint64_t seed, orka_matrix** out_clip,
                                   long* truth_x, long* truth_y);

orka_status orka_gen_random(size_t rows, size_t cols, uint64_t seed,
                            int normalize_columns, orka_matrix** out);

/* ---- extraction -------------------------------------------------------- */

typedef struct orka_params {
    double mu;              /* >= 0, or orka_mu_infinity() */
    long lipschitz;         /* C */
    size_t k_band;          /* K */
    int dims;               /* 1 or 2 */
    int workers;            /* worker threads for the correlation stage */
    uint64_t node_budget;   /* 0 = library default */
    int method;             /* 0 = auto, 1 = fft, 2 = direct */
} orka_params;

void orka_params_init(orka_params* p);  /* fills in defaults */

orka_status orka_extract(const orka_matrix* d, const orka_params* p, orka_object** out);

/* Residual peeling: params[i] drives iteration i. residual (optional out)
 * receives what is left after all subtractions. */
orka_status orka_decompose(const orka_matrix* d, const orka_params* params,
                           size_t n_objects, orka_object** out_objects,
                           orka_matrix** out_residual);

void orka_object_free(orka_object* o);

/* the reconstructed object U (borrowed; freed with the object) */
const orka_matrix* orka_object_u(const orka_object* o);
/* shifts; y may be NULL for 1-D runs */
orka_status orka_object_shifts(const orka_object* o, long* x, long* y, size_t* n);
double orka_object_objective(const orka_object* o);
double orka_object_tau(const orka_object* o);
uint64_t orka_object_nodes_per_partition(const orka_object* o);
/* stage: 0 correlate, 1 kernel, 2 graph, 3 solve */
double orka_object_stage_seconds(const orka_object* o, int stage);

/* contribution of the object to the data: S_lambda(U) */
orka_status orka_object_contribution(const orka_object* o, orka_matrix** out);

/* ---- oracle ------------------------------------------------------------ */

/* exhaustive tau_K maximizer for desk-scale inputs */
orka_status orka_brute_force(const orka_matrix* d, double mu, long c, size_t k_band,
                             int dims, uint64_t enum_budget, long* out_x, long* out_y,
                             double* out_tau);

/* tau_K of a given shift vector (x required, y only for dims = 2) */
orka_status orka_tau(const orka_matrix* d, double mu, long c, size_t k_band, int dims,
                     const long* x, const long* y, double* out_tau);

#ifdef __cplusplus
}
#endif

#endif /* ORKA_H */
