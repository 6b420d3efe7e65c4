/* geomom - differential geometry of coordinate level-surfaces and the
 * momentum operators built on them, behind a C ABI.
 *
 * Conventions:
 *   - charts are opaque, immutable handles; free them with gm_chart_free
 *   - point arrays follow the chart's coordinate declaration order
 *   - every function returning gm_status sets a thread-local message
 *     retrievable with gm_last_error() on failure
 *   - char* results are heap-allocated; release them with gm_string_free
 */
#ifndef GEOMOM_H
#define GEOMOM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define GM_MAX_DIM 8

typedef enum gm_status {
  GM_OK = 0,
  GM_ERR_PARSE = 1,          /* lexical, syntax, or chart-semantic error */
  GM_ERR_DOMAIN = 2,         /* evaluation outside a function's domain */
  GM_ERR_SINGULAR = 3,       /* rank-deficient Jacobian (coordinate degeneracy) */
  GM_ERR_NOT_ORTHOGONAL = 4, /* slicing coordinate not metric-orthogonal */
  GM_ERR_GRID = 5,           /* malformed grid spec or grid mismatch */
  GM_ERR_INVALID = 6,        /* bad argument (unknown name, null pointer, ...) */
  GM_ERR_INTERNAL = 7
} gm_status;

typedef struct gm_chart gm_chart;

const char* gm_version(void);
const char* gm_last_error(void);
void gm_string_free(char* s);

/* ---- charts ---------------------------------------------------------- */

gm_status gm_chart_from_catalog(const char* name, gm_chart** out);
gm_status gm_chart_from_text(const char* text, gm_chart** out);
gm_status gm_chart_from_file(const char* path, gm_chart** out);
/* copy with one parameter rebound (handles stay immutable) */
gm_status gm_chart_with_param(const gm_chart* chart, const char* name, double value,
                              gm_chart** out);
void gm_chart_free(gm_chart* chart);

const char* gm_chart_name(const gm_chart* chart);
int gm_chart_dim(const gm_chart* chart);
const char* gm_chart_coord_name(const gm_chart* chart, int index);
int gm_chart_coord_periodic(const gm_chart* chart, int index);
/* unbounded sides come back as +/- infinity */
gm_status gm_chart_coord_bounds(const gm_chart* chart, int index, double* lo, double* hi);
int gm_chart_param_count(const gm_chart* chart);
const char* gm_chart_param_name(const gm_chart* chart, int index);
double gm_chart_param_value(const gm_chart* chart, int index);
/* NULL when the chart designates no normal coordinate */
const char* gm_chart_normal(const gm_chart* chart);

int gm_catalog_count(void);
const char* gm_catalog_name(int index);
gm_status gm_catalog_json(char** json_out);

/* ---- pointwise geometry ---------------------------------------------- */

typedef struct gm_metric_data {
  int dim;
  double g[GM_MAX_DIM * GM_MAX_DIM];     /* row-major metric */
  double g_inv[GM_MAX_DIM * GM_MAX_DIM];
  double sqrt_g;
  int has_lame;                          /* metric diagonal within 1e-10 */
  double lame[GM_MAX_DIM];
} gm_metric_data;

gm_status gm_metric(const gm_chart* chart, const double* point, gm_metric_data* out);

typedef struct gm_slice_data {
  int dim;
  int surface_dim;
  double n[GM_MAX_DIM];       /* unit normal, along +d(embedding)/d(normal coord) */
  double g00;
  double sqrt_h;
  double m_sum;               /* trace of the shape operator */
  double m_avg;               /* m_sum / surface_dim */
  double m_vec[GM_MAX_DIM];   /* m_sum * n */
  /* dual tangent basis r^mu, row-major: row = surface coordinate in chart
   * declaration order (normal skipped), GM_MAX_DIM entries per row */
  double r_dual[(GM_MAX_DIM - 1) * GM_MAX_DIM];
} gm_slice_data;

gm_status gm_slice_geometry(const gm_chart* chart, const double* point,
                            const char* normal_coord, gm_slice_data* out);

/* (1/sqrt(g00)) d0 ln sqrt(g); equals -m_sum on gaussian-normal slicings */
gm_status gm_normal_log_derivative(const gm_chart* chart, const double* point,
                                   const char* normal_coord, double* out);
/* sum_mu r^mu . d_mu n; equals -m_sum on every admissible slicing */
gm_status gm_weingarten_contraction(const gm_chart* chart, const double* point,
                                    const char* normal_coord, double* out);

typedef enum gm_slice_class {
  GM_GAUSSIAN_NORMAL = 0, /* g_{0 mu} = 0 and g_00 independent of xi^0 */
  GM_ORTHOGONAL_ONLY = 1, /* g_{0 mu} = 0 only */
  GM_GENERAL = 2
} gm_slice_class;

gm_status gm_validate_gaussian_normal(const gm_chart* chart, const char* normal_coord,
                                      uint64_t seed, int sample_count, double* max_offdiag,
                                      double* max_d0_g00, gm_slice_class* verdict);

/* ---- verification and reporting -------------------------------------- */

/* Geometry summary at one point (Lame coefficients, canonical-momentum
 * coefficients, per-slice curvature data) as a deterministic JSON object. */
gm_status gm_inspect_json(const gm_chart* chart, const double* point, char** json_out);

/* Runs one named check ("hermiticity", "decomposition", "orthogonality",
 * "curvature", "gn-metric", or "all") and returns a JSON array of reports:
 *   { "check": str, "chart": str, "config": {..},
 *     "residuals": [{"grid": str, "value": num}],
 *     "convergence_order": num|null, "tolerance": num,
 *     "verdict": "pass"|"fail" }
 * options_json (may be NULL or "{}") accepts:
 *   seed (int), fd_order (2|4), hbar (num>0), grids ([int,...] ladder),
 *   grid ([int,...] per-axis finest level), at ({coord: value}),
 *   normal (str), coord (str), negative_control (bool)
 * A failing verdict is still GM_OK; the status reports construction errors. */
gm_status gm_verify(const gm_chart* chart, const char* check, const char* options_json,
                    char** reports_json_out);

#ifdef __cplusplus
}
#endif

#endif /* GEOMOM_H */
