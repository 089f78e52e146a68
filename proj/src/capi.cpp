#include "frametour.h"

#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "frametour/data_io.hpp"
#include "frametour/errors.hpp"
#include "frametour/geodesic.hpp"
#include "frametour/givens.hpp"
#include "frametour/linalg.hpp"
#include "frametour/pp_index.hpp"
#include "frametour/tour.hpp"

using frametour::Frame;

struct ft_frame {
  Frame value;
  bool repaired = false;
};
struct ft_dataset {
  frametour::Dataset value;
};
struct ft_path {
  std::vector<Frame> frames;
  double total_angle = 0.0;
  double step_angle = 0.0;
};
struct ft_trace {
  frametour::TourTrace value;
};
struct ft_pca {
  frametour::PcaResult value;
};

namespace {

thread_local std::string g_last_error;

ft_status status_of(const std::exception& e) {
  if (dynamic_cast<const frametour::io_error*>(&e)) return FT_ERROR_IO;
  if (dynamic_cast<const frametour::numerical_failure*>(&e)) return FT_ERROR_NUMERICAL;
  if (dynamic_cast<const frametour::error*>(&e)) return FT_ERROR_INVALID_INPUT;
  return FT_ERROR_NUMERICAL;
}

// Runs fn returning a status; fn either returns FT_OK or throws.
template <typename Fn>
ft_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FT_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return status_of(e);
  }
}

// Runs fn returning a freshly allocated handle, or null with the error set.
template <typename Fn>
auto guarded_ptr(Fn&& fn) -> decltype(fn()) {
  try {
    auto* out = fn();
    g_last_error.clear();
    return out;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

bool require(bool cond, const char* message) {
  if (!cond) g_last_error = message;
  return cond;
}

frametour::TourConfig to_config(const ft_tour_config* config) {
  if (config == nullptr) throw frametour::invalid_input("config must not be null");
  frametour::TourConfig out;
  switch (config->interpolator) {
    case FT_INTERP_GIVENS: out.interpolator = frametour::Interpolator::givens; break;
    case FT_INTERP_GEODESIC: out.interpolator = frametour::Interpolator::geodesic; break;
    default: throw frametour::invalid_input("config.interpolator out of range");
  }
  switch (config->search) {
    case FT_SEARCH_GRAND: out.search = frametour::SearchMethod::grand; break;
    case FT_SEARCH_GEODESIC: out.search = frametour::SearchMethod::geodesic_search; break;
    case FT_SEARCH_BETTER: out.search = frametour::SearchMethod::better; break;
    default: throw frametour::invalid_input("config.search out of range");
  }
  out.delta = config->delta;
  out.max_targets = config->max_targets;
  out.seed = config->seed;
  out.cooling = config->cooling;
  out.n_candidates = config->n_candidates;
  out.initial_radius = config->initial_radius;
  return out;
}

frametour::ExportFormat to_format(const char* format) {
  const std::string f = format ? format : "csv";
  if (f == "csv") return frametour::ExportFormat::csv;
  if (f == "json") return frametour::ExportFormat::json;
  throw frametour::invalid_input("unknown format '" + f + "'; use csv or json");
}

}  // namespace

extern "C" {

const char* ft_version(void) { return "1.0.0"; }

const char* ft_last_error(void) { return g_last_error.c_str(); }

/* ---- frames ---- */

ft_frame* ft_frame_create(int p, int d, const double* row_major) {
  return guarded_ptr([&]() -> ft_frame* {
    if (row_major == nullptr) throw frametour::invalid_input("data buffer must not be null");
    if (p < 1 || d < 1) throw frametour::invalid_input("p and d must be positive");
    Eigen::MatrixXd m(p, d);
    for (int r = 0; r < p; ++r) {
      for (int c = 0; c < d; ++c) m(r, c) = row_major[r * d + c];
    }
    return new ft_frame{Frame(std::move(m))};
  });
}

ft_frame* ft_frame_read_csv(const char* path) {
  return guarded_ptr([&]() -> ft_frame* {
    if (path == nullptr) throw frametour::invalid_input("path must not be null");
    auto loaded = frametour::load_frame_csv(path);
    return new ft_frame{std::move(loaded.frame), loaded.repaired};
  });
}

ft_frame* ft_frame_random(int p, int d, uint64_t seed) {
  return guarded_ptr([&]() -> ft_frame* {
    frametour::Rng rng(seed);
    return new ft_frame{frametour::random_frame(p, d, rng)};
  });
}

void ft_frame_destroy(ft_frame* frame) { delete frame; }

int ft_frame_rows(const ft_frame* frame) { return frame ? frame->value.p() : 0; }
int ft_frame_cols(const ft_frame* frame) { return frame ? frame->value.d() : 0; }
int ft_frame_was_repaired(const ft_frame* frame) { return frame && frame->repaired ? 1 : 0; }

ft_status ft_frame_copy_data(const ft_frame* frame, double* out_row_major) {
  return guarded([&] {
    if (frame == nullptr || out_row_major == nullptr) {
      throw frametour::invalid_input("null argument");
    }
    const auto& b = frame->value.basis();
    for (int r = 0; r < b.rows(); ++r) {
      for (int c = 0; c < b.cols(); ++c) out_row_major[r * b.cols() + c] = b(r, c);
    }
  });
}

ft_status ft_frame_write_csv(const ft_frame* frame, const char* path) {
  return guarded([&] {
    if (frame == nullptr || path == nullptr) throw frametour::invalid_input("null argument");
    frametour::write_frame_csv(frame->value, path);
  });
}

double ft_frame_max_abs_diff(const ft_frame* a, const ft_frame* b) {
  if (!require(a && b, "null frame")) return -1.0;
  try {
    return frametour::max_abs_diff(a->value.basis(), b->value.basis());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1.0;
  }
}

double ft_frame_plane_error(const ft_frame* a, const ft_frame* b) {
  if (!require(a && b, "null frame")) return -1.0;
  try {
    return frametour::plane_distance(a->value, b->value);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1.0;
  }
}

/* ---- datasets ---- */

ft_dataset* ft_dataset_read_csv(const char* path) {
  return guarded_ptr([&]() -> ft_dataset* {
    if (path == nullptr) throw frametour::invalid_input("path must not be null");
    return new ft_dataset{frametour::load_csv(path)};
  });
}

ft_dataset* ft_dataset_generate_sine(int n, double noise_sd, uint64_t seed) {
  return guarded_ptr(
      [&]() -> ft_dataset* { return new ft_dataset{frametour::generate_sine(n, noise_sd, seed)}; });
}

ft_dataset* ft_dataset_generate_sine_in_noise(int n, double noise_sd, uint64_t seed) {
  return guarded_ptr([&]() -> ft_dataset* {
    return new ft_dataset{frametour::generate_sine_in_noise(n, noise_sd, seed)};
  });
}

ft_dataset* ft_dataset_standardize(const ft_dataset* dataset) {
  return guarded_ptr([&]() -> ft_dataset* {
    if (dataset == nullptr) throw frametour::invalid_input("dataset must not be null");
    return new ft_dataset{frametour::standardize(dataset->value)};
  });
}

ft_dataset* ft_dataset_negate_columns(const ft_dataset* dataset, const char* columns) {
  return guarded_ptr([&]() -> ft_dataset* {
    if (dataset == nullptr || columns == nullptr) {
      throw frametour::invalid_input("null argument");
    }
    std::vector<std::string> names;
    std::string cur;
    for (const char* c = columns;; ++c) {
      if (*c == ',' || *c == '\0') {
        if (!cur.empty()) names.push_back(cur);
        cur.clear();
        if (*c == '\0') break;
      } else {
        cur += *c;
      }
    }
    return new ft_dataset{frametour::negate_columns(dataset->value, names)};
  });
}

void ft_dataset_destroy(ft_dataset* dataset) { delete dataset; }

int ft_dataset_rows(const ft_dataset* dataset) { return dataset ? dataset->value.n() : 0; }
int ft_dataset_cols(const ft_dataset* dataset) { return dataset ? dataset->value.p() : 0; }

const char* ft_dataset_column_name(const ft_dataset* dataset, int col) {
  if (!require(dataset && col >= 0 && col < dataset->value.p(), "column out of range")) {
    return nullptr;
  }
  return dataset->value.column_names[col].c_str();
}

ft_status ft_dataset_write_csv(const ft_dataset* dataset, const char* path) {
  return guarded([&] {
    if (dataset == nullptr || path == nullptr) throw frametour::invalid_input("null argument");
    frametour::write_csv(dataset->value, path);
  });
}

/* ---- paths ---- */

namespace {

ft_path* make_givens_path(const ft_frame* start, const ft_frame* target, int nsteps,
                          double delta) {
  if (start == nullptr || target == nullptr) throw frametour::invalid_input("null frame");
  if (nsteps <= 0) {
    const auto info = frametour::givens_info(start->value, target->value);
    nsteps = frametour::steps_for_speed(info.sequence, delta);
  }
  auto path = frametour::givens_full_path(start->value, target->value, nsteps);
  return new ft_path{std::move(path.frames), path.total_angle, path.step_angle};
}

ft_path* make_geodesic_path(const ft_frame* start, const ft_frame* target, int nsteps,
                            double delta) {
  if (start == nullptr || target == nullptr) throw frametour::invalid_input("null frame");
  if (nsteps <= 0) {
    const auto info = frametour::geodesic_info(start->value, target->value);
    nsteps = std::max(1, static_cast<int>(std::ceil(info.total_angle / delta)));
  }
  auto path = frametour::geodesic_full_path(start->value, target->value, nsteps);
  return new ft_path{std::move(path.frames), path.total_angle, path.step_angle};
}

}  // namespace

ft_path* ft_path_givens(const ft_frame* start, const ft_frame* target, int nsteps) {
  return guarded_ptr([&] { return make_givens_path(start, target, nsteps, 0.05); });
}

ft_path* ft_path_givens_auto(const ft_frame* start, const ft_frame* target, double delta) {
  return guarded_ptr([&] {
    if (!(delta > 0.0)) throw frametour::invalid_input("delta must be positive");
    return make_givens_path(start, target, 0, delta);
  });
}

ft_path* ft_path_geodesic(const ft_frame* start, const ft_frame* target, int nsteps) {
  return guarded_ptr([&] { return make_geodesic_path(start, target, nsteps, 0.05); });
}

ft_path* ft_path_geodesic_auto(const ft_frame* start, const ft_frame* target, double delta) {
  return guarded_ptr([&] {
    if (!(delta > 0.0)) throw frametour::invalid_input("delta must be positive");
    return make_geodesic_path(start, target, 0, delta);
  });
}

ft_path* ft_path_read(const char* file) {
  return guarded_ptr([&]() -> ft_path* {
    if (file == nullptr) throw frametour::invalid_input("path must not be null");
    return new ft_path{frametour::import_path(file), 0.0, 0.0};
  });
}

void ft_path_destroy(ft_path* path) { delete path; }

int ft_path_length(const ft_path* path) {
  return path ? static_cast<int>(path->frames.size()) : 0;
}

ft_frame* ft_path_frame(const ft_path* path, int k) {
  if (!require(path && k >= 0 && k < static_cast<int>(path->frames.size()),
               "path frame index out of range")) {
    return nullptr;
  }
  return new ft_frame{path->frames[static_cast<std::size_t>(k)]};
}

double ft_path_total_angle(const ft_path* path) { return path ? path->total_angle : 0.0; }
double ft_path_step_angle(const ft_path* path) { return path ? path->step_angle : 0.0; }

ft_status ft_path_write(const ft_path* path, const char* file, const char* format) {
  return guarded([&] {
    if (path == nullptr || file == nullptr) throw frametour::invalid_input("null argument");
    frametour::export_path(path->frames, file, to_format(format));
  });
}

ft_status ft_path_write_geometry(const ft_path* path, const char* file, int n_samples,
                                 uint64_t seed) {
  return guarded([&] {
    if (path == nullptr || file == nullptr) throw frametour::invalid_input("null argument");
    frametour::export_projection_geometry(path->frames, file, n_samples, seed);
  });
}

/* ---- projection pursuit ---- */

ft_status ft_index_eval(const ft_dataset* dataset, const ft_frame* frame, const char* index_name,
                        double* out_value) {
  return guarded([&] {
    if (dataset == nullptr || index_name == nullptr || out_value == nullptr) {
      throw frametour::invalid_input("null argument");
    }
    const auto index = frametour::make_index(index_name);
    Eigen::MatrixXd projected;
    if (frame != nullptr) {
      if (frame->value.p() != dataset->value.p()) {
        throw frametour::invalid_input("frame rows must match dataset columns");
      }
      projected = dataset->value.values * frame->value.basis();
    } else {
      projected = dataset->value.values;
    }
    *out_value = index.evaluate(projected);
  });
}

/* ---- pca ---- */

ft_pca* ft_pca_compute(const ft_dataset* dataset) {
  return guarded_ptr([&]() -> ft_pca* {
    if (dataset == nullptr) throw frametour::invalid_input("dataset must not be null");
    return new ft_pca{frametour::pca(dataset->value)};
  });
}

void ft_pca_destroy(ft_pca* pca) { delete pca; }

double ft_pca_variance(const ft_pca* pca, int component) {
  if (!require(pca && component >= 0 && component < pca->value.variances.size(),
               "component out of range")) {
    return -1.0;
  }
  return pca->value.variances(component);
}

double ft_pca_cumulative(const ft_pca* pca, int component) {
  if (!require(pca && component >= 0 && component < pca->value.cumulative_proportion.size(),
               "component out of range")) {
    return -1.0;
  }
  return pca->value.cumulative_proportion(component);
}

namespace {

frametour::Dataset matrix_dataset(const Eigen::MatrixXd& m, const char* prefix) {
  frametour::Dataset d;
  d.values = m;
  d.column_names.reserve(m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    d.column_names.push_back(std::string(prefix) + std::to_string(c + 1));
  }
  return d;
}

}  // namespace

ft_status ft_pca_write_scores(const ft_pca* pca, const char* file) {
  return guarded([&] {
    if (pca == nullptr || file == nullptr) throw frametour::invalid_input("null argument");
    frametour::write_csv(matrix_dataset(pca->value.scores, "PC"), file);
  });
}

ft_status ft_pca_write_rotation(const ft_pca* pca, const char* file) {
  return guarded([&] {
    if (pca == nullptr || file == nullptr) throw frametour::invalid_input("null argument");
    frametour::write_csv(matrix_dataset(pca->value.rotation, "PC"), file);
  });
}

/* ---- tours ---- */

ft_tour_config ft_tour_config_default(void) {
  const frametour::TourConfig defaults;
  ft_tour_config out;
  out.interpolator = FT_INTERP_GIVENS;
  out.search = FT_SEARCH_BETTER;
  out.delta = defaults.delta;
  out.max_targets = defaults.max_targets;
  out.seed = defaults.seed;
  out.cooling = defaults.cooling;
  out.n_candidates = defaults.n_candidates;
  out.initial_radius = defaults.initial_radius;
  return out;
}

ft_trace* ft_grand_tour(int p, int d, const ft_tour_config* config) {
  return guarded_ptr([&]() -> ft_trace* {
    return new ft_trace{frametour::grand_tour(to_config(config), p, d)};
  });
}

ft_trace* ft_guided_tour(const ft_dataset* dataset, const char* index_name, int d,
                         const ft_tour_config* config, const ft_frame* start) {
  return guarded_ptr([&]() -> ft_trace* {
    if (dataset == nullptr || index_name == nullptr) {
      throw frametour::invalid_input("null argument");
    }
    const auto index = frametour::make_index(index_name);
    std::optional<Frame> start_frame;
    if (start != nullptr) start_frame = start->value;
    return new ft_trace{frametour::guided_tour(to_config(config), dataset->value.values, index, d,
                                               start_frame)};
  });
}

void ft_trace_destroy(ft_trace* trace) { delete trace; }

int ft_trace_size(const ft_trace* trace) {
  return trace ? static_cast<int>(trace->value.records.size()) : 0;
}

namespace {

const frametour::TraceRecord* record_at(const ft_trace* trace, int k) {
  if (trace == nullptr || k < 0 || k >= static_cast<int>(trace->value.records.size())) {
    g_last_error = "trace record index out of range";
    return nullptr;
  }
  return &trace->value.records[static_cast<std::size_t>(k)];
}

}  // namespace

int ft_trace_step_id(const ft_trace* trace, int k) {
  const auto* rec = record_at(trace, k);
  return rec ? rec->step_id : -1;
}

int ft_trace_target_id(const ft_trace* trace, int k) {
  const auto* rec = record_at(trace, k);
  return rec ? rec->target_id : -1;
}

int ft_trace_event(const ft_trace* trace, int k) {
  const auto* rec = record_at(trace, k);
  return rec ? static_cast<int>(rec->event) : -1;
}

double ft_trace_index_value(const ft_trace* trace, int k) {
  const auto* rec = record_at(trace, k);
  if (rec == nullptr || !rec->index_value) return std::nan("");
  return *rec->index_value;
}

ft_frame* ft_trace_frame(const ft_trace* trace, int k) {
  const auto* rec = record_at(trace, k);
  if (rec == nullptr) return nullptr;
  return new ft_frame{rec->frame};
}

ft_status ft_trace_write(const ft_trace* trace, const char* file) {
  return guarded([&] {
    if (trace == nullptr || file == nullptr) throw frametour::invalid_input("null argument");
    frametour::export_trace(trace->value, file);
  });
}

ft_status ft_trace_write_frames(const ft_trace* trace, const char* file) {
  return guarded([&] {
    if (trace == nullptr || file == nullptr) throw frametour::invalid_input("null argument");
    frametour::export_trace_frames(trace->value, file);
  });
}

}  // extern "C"
