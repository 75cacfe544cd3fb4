/* C interface to the hawkdove library.
 *
 * Every function returns an hd_status; on failure hd_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the caller,
 * who releases them with the matching *_destroy function (NULL is accepted).
 *
 * Strategy order is fixed as HH, HD, DH, DD. Reduced states are (x, y, z) with
 * w = 1 - x - y - z. Equilibrium ids are 1..7 for P1..P7.
 */
#ifndef HAWKDOVE_H
#define HAWKDOVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HAWKDOVE_BUILDING)
#    define HD_API __declspec(dllexport)
#  else
#    define HD_API __declspec(dllimport)
#  endif
#else
#  define HD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd_status {
  HD_OK = 0,
  HD_ERR_INVALID_ARGUMENT = 1,
  HD_ERR_UNDEFINED_POINT = 2,
  HD_ERR_SINGULAR_JACOBIAN = 3,
  HD_ERR_NO_CONVERGENCE = 4,
  HD_ERR_INVALID_START = 5,
  HD_ERR_STEP_FAILURE = 6,
  HD_ERR_IO = 7,
  HD_ERR_OUT_OF_RANGE = 8,
  HD_ERR_INTERNAL = 99
} hd_status;

/* Classification tags; HD_UNDEFINED marks P3/P6 at c = 0. */
typedef enum hd_class {
  HD_STABLE_NODE = 0,
  HD_UNSTABLE_NODE,
  HD_SADDLE,
  HD_NH_STABLE,
  HD_NH_UNSTABLE,
  HD_NH_SADDLE,
  HD_NON_HYPERBOLIC,
  HD_DEGENERATE,
  HD_UNDEFINED,
  HD_NO_CLASS = -1
} hd_class;

typedef enum hd_terminal {
  HD_TERMINAL_CONVERGED = 0,
  HD_TERMINAL_TIME_LIMIT = 1,
  HD_TERMINAL_STEP_FAILURE = 2
} hd_terminal;

typedef enum hd_line {
  HD_LINE_V_EQ_C = 0,
  HD_LINE_C_EQ_0,
  HD_LINE_V_EQ_0,
  HD_LINE_C_EQ_2V,
  HD_LINE_UNEXPLAINED,
  HD_LINE_COUNT
} hd_line;

typedef struct hd_params {
  double v;
  double c;
} hd_params;

typedef struct hd_eigenvalue {
  double re;
  double im;
} hd_eigenvalue;

typedef struct hd_equilibrium {
  int id; /* 1..7 */
  double coords[3];
  int defined;
  int in_simplex;
  hd_eigenvalue eigenvalues[3];
  int classification; /* hd_class */
  int predicate_class;    /* hd_class, HD_NO_CLASS when no region predicate applies */
  int agrees;
  unsigned coincides_mask; /* bit (k-1) set when the point coincides with Pk */
} hd_equilibrium;

typedef struct hd_grid {
  double v_min, v_max, c_min, c_max;
  size_t n_v, n_c;
} hd_grid;

typedef struct hd_transition {
  int equilibrium; /* 1..7 */
  int from;        /* hd_class */
  int to;
  double v0, c0, v1, c1;
} hd_transition;

typedef struct hd_nash_report {
  double candidate[4];
  int source; /* 1..7, or 0 when not taken from the catalog */
  int via_stability;
  int via_best_response;
  double margin;
  unsigned support_mask; /* bit i for strategy i in HH, HD, DH, DD order */
} hd_nash_report;

typedef struct hd_integration_config {
  double rtol;
  double atol;
  double t_end;
  double max_step;
  double convergence_eps;
  double record_stride;
} hd_integration_config;

typedef struct hd_rest_point {
  double z;
  double slope;
  int stability; /* 0 stable, 1 unstable, 2 degenerate */
} hd_rest_point;

typedef struct hd_catalog hd_catalog;
typedef struct hd_region_map hd_region_map;
typedef struct hd_transitions hd_transitions;
typedef struct hd_nash_list hd_nash_list;
typedef struct hd_trajectory hd_trajectory;

HD_API const char* hd_version(void);
HD_API const char* hd_last_error(void);
HD_API const char* hd_class_name(int cls);
HD_API const char* hd_line_name(int line);
HD_API const char* hd_terminal_name(int terminal);
HD_API int hd_equilibrium_from_name(const char* name); /* 1..7, 0 if unknown */

/* payoffs and fields */
HD_API hd_status hd_payoff_matrix(hd_params p, double out[16]);
HD_API hd_status hd_average_payoff(hd_params p, const double s[4], double* out);
HD_API hd_status hd_field_4d(hd_params p, const double s[4], double out[4]);
HD_API hd_status hd_field_3d(hd_params p, const double s[3], double out[3]);
HD_API hd_status hd_consistency_residual(hd_params p, const double s[3], double* out);

/* linear analysis; matrices are row-major */
HD_API hd_status hd_jacobian(hd_params p, const double s[3], double out[9]);
HD_API hd_status hd_eigenvalues(const double jac[9], hd_eigenvalue out[3]);
HD_API hd_status hd_classify(const hd_eigenvalue eig[3], int* cls);

/* equilibrium catalog */
HD_API hd_status hd_catalog_create(hd_params p, hd_catalog** out);
HD_API hd_status hd_catalog_get(const hd_catalog* cat, int id, hd_equilibrium* out);
HD_API void hd_catalog_destroy(hd_catalog* cat);
HD_API hd_status hd_refine(hd_params p, const double guess[3], double out[3], int* iterations, int* used_pseudo_inverse);

/* bifurcation */
HD_API void hd_grid_default(hd_grid* out);
HD_API hd_status hd_scan(const hd_grid* grid, unsigned threads, hd_region_map** out);
HD_API hd_status hd_region_map_grid(const hd_region_map* map, hd_grid* out);
HD_API hd_status hd_region_map_node(const hd_region_map* map, size_t iv, size_t ic, double* v, double* c);
HD_API hd_status hd_region_map_tag(const hd_region_map* map, size_t iv, size_t ic, int id, int* cls);
HD_API hd_status hd_region_map_write_csv(const hd_region_map* map, const char* path);
HD_API void hd_region_map_destroy(hd_region_map* map);
HD_API hd_status hd_detect_transitions(const hd_region_map* map, hd_transitions** out);
HD_API hd_status hd_transitions_count(const hd_transitions* t, int line, size_t* count);
HD_API hd_status hd_transitions_get(const hd_transitions* t, int line, size_t index, hd_transition* out);
HD_API void hd_transitions_destroy(hd_transitions* t);
HD_API hd_status hd_linearized_field(hd_params p, int id, double matrix[9], double affine[3]);

/* Nash equilibria */
HD_API hd_status hd_nash_via_stability(hd_params p, hd_nash_list** out);
HD_API hd_status hd_nash_list_size(const hd_nash_list* list, size_t* size);
HD_API hd_status hd_nash_list_get(const hd_nash_list* list, size_t index, hd_nash_report* out);
HD_API hd_status hd_nash_list_write_json(const hd_nash_list* list, const char* path);
HD_API void hd_nash_list_destroy(hd_nash_list* list);
HD_API hd_status hd_best_response_check(hd_params p, const double sigma[4], hd_nash_report* out);
HD_API double hd_nash_tolerance(hd_params p);

/* two-strategy game; form: 0 auto, 1 factored, 2 limit */
HD_API hd_status hd_two_f(hd_params p, double z, int form, double* out);
HD_API hd_status hd_two_f_prime(hd_params p, double z, double* out);
HD_API hd_status hd_two_classify(hd_params p, hd_rest_point out[3], size_t* count);
/* which: 0 for z = 0, 1 for z = 1, 2 for z = v/c; mask bit (k-1) for Pk */
HD_API hd_status hd_two_correspondence(int which, unsigned* mask);
HD_API hd_status hd_two_integrate(hd_params p, double z0, const hd_integration_config* cfg, hd_trajectory** out);

/* integration */
HD_API void hd_integration_config_default(hd_integration_config* out);
HD_API hd_status hd_integrate(hd_params p, const double s0[3], const hd_integration_config* cfg, hd_trajectory** out);
/* starts holds n triples; out[i] is NULL and status[i] set when item i fails.
 * Returns HD_OK, or the status of the first failing item. */
HD_API hd_status hd_batch_integrate(hd_params p, const double* starts, size_t n, const hd_integration_config* cfg,
                                    unsigned threads, hd_trajectory** out, hd_status* status);
HD_API hd_status hd_random_interior_starts(uint64_t seed, size_t n, double* out);

/* Trajectory handles cover both the 3D run (dimension 3, samples t,x,y,z,w) and
 * the two-strategy run (dimension 1, samples t,z). */
HD_API size_t hd_trajectory_dimension(const hd_trajectory* t);
HD_API size_t hd_trajectory_size(const hd_trajectory* t);
HD_API hd_status hd_trajectory_sample(const hd_trajectory* t, size_t index, double* out);
HD_API hd_status hd_trajectory_terminal(const hd_trajectory* t, int* terminal, int* equilibrium);
HD_API size_t hd_trajectory_clamp_count(const hd_trajectory* t);
HD_API hd_status hd_trajectory_write_csv(const hd_trajectory* t, const char* path);
HD_API hd_status hd_trajectory_write_sidecar(const hd_trajectory* t, const char* path);
HD_API void hd_trajectory_destroy(hd_trajectory* t);

#ifdef __cplusplus
}
#endif

#endif /* HAWKDOVE_H */
