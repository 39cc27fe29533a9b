/*
 * lorcomp — numerical triangle comparison for Lorentzian pre-length spaces.
 *
 * C interface over the core library: opaque space handles, status codes,
 * JSON documents for options and results. Strings returned through `char**`
 * are heap-allocated; release them with lorcomp_string_free().
 */

#ifndef LORCOMP_H
#define LORCOMP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lorcomp_space lorcomp_space;

typedef enum lorcomp_status {
  LORCOMP_OK = 0,
  LORCOMP_ERR_INVALID_ARGUMENT = 1,
  LORCOMP_ERR_CONFIG = 2,
  LORCOMP_ERR_INVARIANT = 3,
  LORCOMP_ERR_UNKNOWN_POINT = 4,
  LORCOMP_ERR_NO_CURVE = 5,
  LORCOMP_ERR_OUT_OF_CHART = 6,
  LORCOMP_ERR_SIZE_BOUNDS = 7,
  LORCOMP_ERR_INFEASIBLE = 8,
  LORCOMP_ERR_EMPTY_SAMPLE = 9,
  LORCOMP_ERR_INVALID_CURVE = 10,
  LORCOMP_ERR_INTERNAL = 11
} lorcomp_status;

/* Ordered pair classification returned by lorcomp_relation. */
enum {
  LORCOMP_REL_EQUAL = 0,
  LORCOMP_REL_CHRONOLOGICAL = 1,
  LORCOMP_REL_CAUSAL_ONLY = 2,
  LORCOMP_REL_UNRELATED = 3
};

const char* lorcomp_version(void);

/* Message for the most recent error on this thread. */
const char* lorcomp_last_error(void);

void lorcomp_string_free(char* s);

/* Builds a space from a JSON config document, e.g. {"type":"taxicab"}. */
lorcomp_status lorcomp_space_create(const char* config_json,
                                    lorcomp_space** out_space);

/* Presets: "minkowski", "taxicab", "ds:<k>", "ads:<k>". */
lorcomp_status lorcomp_space_create_preset(const char* preset,
                                           lorcomp_space** out_space);

void lorcomp_space_destroy(lorcomp_space* space);

lorcomp_status lorcomp_space_descriptor(const lorcomp_space* space,
                                        char** out_json);

/* Time separation between chart events (px,pt) -> (qx,qt). */
lorcomp_status lorcomp_tau(const lorcomp_space* space, double px, double pt,
                           double qx, double qt, double* out_tau);

lorcomp_status lorcomp_relation(const lorcomp_space* space, double px,
                                double pt, double qx, double qt,
                                int* out_relation);

/*
 * Curvature-bound certification. options_json fields (all optional unless
 * noted):
 *   "k": number (default 0), "direction": "below"|"above",
 *   "k_grid": [numbers] — produces a per-k scan document instead,
 *   "seed", "triangles", "pairs", "mode": "full"|"cevian", "tolerance",
 *   "variant": "canonical"|"staircase", "sweep_variants": bool,
 *   "region": {"x0","x1","t0","t1"}, "scale": number,
 *   "inject_paper_triangle": bool, "min_side", "max_witnesses".
 * The report's verdict.status is "consistent" or "violated".
 */
lorcomp_status lorcomp_certify(const lorcomp_space* space,
                               const char* options_json,
                               char** out_report_json);

/* Four-detector agreement report for a lower bound at options "k". */
lorcomp_status lorcomp_cross_check(const lorcomp_space* space,
                                   const char* options_json, char** out_json);

/* Re-evaluates every witness of a report produced by lorcomp_certify. */
lorcomp_status lorcomp_replay_report(const char* report_json, char** out_json);

/*
 * Comparison-triangle inspection without an instance space.
 * options: {"k": number, "sides": [a,b,c], "realize": bool}
 * Reports the size-bound verdict, the three signed comparison angles, and
 * (with realize) the canonical vertex coordinates.
 */
lorcomp_status lorcomp_triangle_info(const char* options_json,
                                     char** out_json);

/*
 * Angle machinery over a triangle in an instance space.
 * options: {"op": "angle"|"theta"|"firstvar"|"adjacent",
 *           "vertices": [[x,t],[x,t],[x,t]], "vertex": "x"|"y"|"z",
 *           "k": number, "s"/"t": numbers (theta),
 *           "schedule": {"s0","t0","rho","tol","max_steps"},
 *           "fv": {"t0","rho","steps","max_over_variants"},
 *           "m_offset": number (adjacent), "variant": name}
 */
lorcomp_status lorcomp_angle(const lorcomp_space* space,
                             const char* options_json, char** out_json);

/* SVG figure for a certification report. */
lorcomp_status lorcomp_render_svg(const char* report_json, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* LORCOMP_H */
