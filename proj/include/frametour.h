/* frametour — frame-to-frame tour interpolation, projection pursuit and
 * guided tours behind a plain C interface.
 *
 * All functions that can fail either return a null pointer or a non-zero
 * ft_status; ft_last_error() then holds a human-readable message for the
 * calling thread. Objects returned by ft_*_create/read/compute functions are
 * owned by the caller and released with the matching ft_*_destroy.
 * Matrix buffers are row-major doubles.
 */
#ifndef FRAMETOUR_H
#define FRAMETOUR_H

#include <stdint.h>

#if defined(_WIN32)
#define FT_API __declspec(dllexport)
#else
#define FT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ft_status {
  FT_OK = 0,
  FT_ERROR_INVALID_INPUT = 2, /* bad arguments, malformed or degenerate input */
  FT_ERROR_NUMERICAL = 3,     /* a numerical procedure failed to converge    */
  FT_ERROR_IO = 4             /* filesystem failure                          */
} ft_status;

FT_API const char* ft_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
FT_API const char* ft_last_error(void);

typedef struct ft_frame ft_frame;
typedef struct ft_dataset ft_dataset;
typedef struct ft_path ft_path;
typedef struct ft_trace ft_trace;
typedef struct ft_pca ft_pca;

/* ---- frames: p x d orthonormal projection bases, d in {1, 2} ---- */

FT_API ft_frame* ft_frame_create(int p, int d, const double* row_major);
FT_API ft_frame* ft_frame_read_csv(const char* path); /* headerless numeric CSV */
FT_API ft_frame* ft_frame_random(int p, int d, uint64_t seed);
FT_API void ft_frame_destroy(ft_frame* frame);

FT_API int ft_frame_rows(const ft_frame* frame);
FT_API int ft_frame_cols(const ft_frame* frame);
/* 1 if the loaded frame needed (and got) mild re-orthonormalization. */
FT_API int ft_frame_was_repaired(const ft_frame* frame);
FT_API ft_status ft_frame_copy_data(const ft_frame* frame, double* out_row_major);
FT_API ft_status ft_frame_write_csv(const ft_frame* frame, const char* path);

/* max |a_ij - b_ij|; negative on shape mismatch. */
FT_API double ft_frame_max_abs_diff(const ft_frame* a, const ft_frame* b);
/* max-norm distance between the projectors of the two planes; negative on error. */
FT_API double ft_frame_plane_error(const ft_frame* a, const ft_frame* b);

/* ---- datasets: n x p numeric tables with named columns ---- */

FT_API ft_dataset* ft_dataset_read_csv(const char* path);
FT_API ft_dataset* ft_dataset_generate_sine(int n, double noise_sd, uint64_t seed);
FT_API ft_dataset* ft_dataset_generate_sine_in_noise(int n, double noise_sd, uint64_t seed);
FT_API ft_dataset* ft_dataset_standardize(const ft_dataset* dataset);
/* Sign-flips the named columns (comma-separated list). */
FT_API ft_dataset* ft_dataset_negate_columns(const ft_dataset* dataset, const char* columns);
FT_API void ft_dataset_destroy(ft_dataset* dataset);

FT_API int ft_dataset_rows(const ft_dataset* dataset);
FT_API int ft_dataset_cols(const ft_dataset* dataset);
FT_API const char* ft_dataset_column_name(const ft_dataset* dataset, int col);
FT_API ft_status ft_dataset_write_csv(const ft_dataset* dataset, const char* path);

/* ---- interpolation paths ---- */

/* Frame-to-frame path reaching the target frame exactly. */
FT_API ft_path* ft_path_givens(const ft_frame* start, const ft_frame* target, int nsteps);
/* Step count chosen so each step rotates by at most delta radians. */
FT_API ft_path* ft_path_givens_auto(const ft_frame* start, const ft_frame* target, double delta);
/* Plane-to-plane geodesic path; the final frame may spin within the plane. */
FT_API ft_path* ft_path_geodesic(const ft_frame* start, const ft_frame* target, int nsteps);
FT_API ft_path* ft_path_geodesic_auto(const ft_frame* start, const ft_frame* target, double delta);
FT_API ft_path* ft_path_read(const char* file); /* CSV or JSON written by ft_path_write */
FT_API void ft_path_destroy(ft_path* path);

FT_API int ft_path_length(const ft_path* path); /* number of frames, nsteps + 1 */
FT_API ft_frame* ft_path_frame(const ft_path* path, int k);
FT_API double ft_path_total_angle(const ft_path* path);
FT_API double ft_path_step_angle(const ft_path* path);
/* format: "csv" (long step,row,col,value) or "json" (array of matrices). */
FT_API ft_status ft_path_write(const ft_path* path, const char* file, const char* format);
/* Sphere (d=1) or torus (d=2, p=3) view with n_samples background points. */
FT_API ft_status ft_path_write_geometry(const ft_path* path, const char* file, int n_samples,
                                        uint64_t seed);

/* ---- projection pursuit ---- */

/* index_name: "splines2d", "splines2d_sym" or "holes". frame may be null when
 * the dataset already has d columns (identity projection). */
FT_API ft_status ft_index_eval(const ft_dataset* dataset, const ft_frame* frame,
                               const char* index_name, double* out_value);

/* ---- principal components ---- */

FT_API ft_pca* ft_pca_compute(const ft_dataset* dataset);
FT_API void ft_pca_destroy(ft_pca* pca);
FT_API double ft_pca_variance(const ft_pca* pca, int component);
FT_API double ft_pca_cumulative(const ft_pca* pca, int component);
FT_API ft_status ft_pca_write_scores(const ft_pca* pca, const char* file);
FT_API ft_status ft_pca_write_rotation(const ft_pca* pca, const char* file);

/* ---- tours ---- */

typedef enum ft_interpolator { FT_INTERP_GIVENS = 0, FT_INTERP_GEODESIC = 1 } ft_interpolator;
typedef enum ft_search {
  FT_SEARCH_GRAND = 0,
  FT_SEARCH_GEODESIC = 1,
  FT_SEARCH_BETTER = 2
} ft_search;

typedef struct ft_tour_config {
  int interpolator;      /* ft_interpolator */
  int search;            /* ft_search, guided tours only */
  double delta;          /* radians per interpolation step */
  int max_targets;
  uint64_t seed;
  double cooling;        /* neighborhood shrink per accepted target, in (0,1) */
  int n_candidates;
  double initial_radius; /* radians */
} ft_tour_config;

FT_API ft_tour_config ft_tour_config_default(void);

FT_API ft_trace* ft_grand_tour(int p, int d, const ft_tour_config* config);
/* start may be null: a seeded random frame is used. */
FT_API ft_trace* ft_guided_tour(const ft_dataset* dataset, const char* index_name, int d,
                                const ft_tour_config* config, const ft_frame* start);
FT_API void ft_trace_destroy(ft_trace* trace);

typedef enum ft_event {
  FT_EVENT_INTERPOLATION = 0,
  FT_EVENT_TARGET_PROPOSED = 1,
  FT_EVENT_TARGET_ACCEPTED = 2,
  FT_EVENT_TARGET_REJECTED = 3
} ft_event;

FT_API int ft_trace_size(const ft_trace* trace);
FT_API int ft_trace_step_id(const ft_trace* trace, int k);
FT_API int ft_trace_target_id(const ft_trace* trace, int k);
FT_API int ft_trace_event(const ft_trace* trace, int k);
/* NaN when the record carries no index value (non-guided tours). */
FT_API double ft_trace_index_value(const ft_trace* trace, int k);
FT_API ft_frame* ft_trace_frame(const ft_trace* trace, int k);
/* CSV step_id,target_id,event,index_value */
FT_API ft_status ft_trace_write(const ft_trace* trace, const char* file);
/* CSV step_id,row,col,value for every recorded frame */
FT_API ft_status ft_trace_write_frames(const ft_trace* trace, const char* file);

#ifdef __cplusplus
}
#endif

#endif /* FRAMETOUR_H */
