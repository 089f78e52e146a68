// Command-line front end for the frametour shared library. Everything goes
// through the C API in frametour.h; data lands in files, machine-readable
// `key=value` summaries on stdout, diagnostics on stderr.
//
// Exit codes: 0 ok, 2 input error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frametour.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int exit_code(ft_status status) {
  switch (status) {
    case FT_OK: return kExitOk;
    case FT_ERROR_NUMERICAL: return kExitNumerical;
    case FT_ERROR_INVALID_INPUT:
    case FT_ERROR_IO: return kExitInput;
  }
  return kExitNumerical;
}

[[noreturn]] void fail(ft_status status) {
  std::fprintf(stderr, "error: %s\n", ft_last_error());
  std::exit(exit_code(status));
}

[[noreturn]] void fail_input(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(kExitInput);
}

void check(ft_status status) {
  if (status != FT_OK) fail(status);
}

template <typename T>
T* require(T* handle, ft_status likely = FT_ERROR_INVALID_INPUT) {
  if (handle == nullptr) fail(likely);
  return handle;
}

// Bare file names are routed into FRAMETOUR_OUT_DIR when it is set.
std::string resolve_output(const std::string& name) {
  if (name.empty() || name.find('/') != std::string::npos) return name;
  const char* dir = std::getenv("FRAMETOUR_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return name;
  return std::string(dir) + "/" + name;
}

struct FrameDeleter {
  void operator()(ft_frame* f) const { ft_frame_destroy(f); }
};
struct DatasetDeleter {
  void operator()(ft_dataset* d) const { ft_dataset_destroy(d); }
};
struct PathDeleter {
  void operator()(ft_path* p) const { ft_path_destroy(p); }
};
struct TraceDeleter {
  void operator()(ft_trace* t) const { ft_trace_destroy(t); }
};
struct PcaDeleter {
  void operator()(ft_pca* p) const { ft_pca_destroy(p); }
};
using FramePtr = std::unique_ptr<ft_frame, FrameDeleter>;
using DatasetPtr = std::unique_ptr<ft_dataset, DatasetDeleter>;
using PathPtr = std::unique_ptr<ft_path, PathDeleter>;
using TracePtr = std::unique_ptr<ft_trace, TraceDeleter>;
using PcaPtr = std::unique_ptr<ft_pca, PcaDeleter>;

FramePtr load_frame(const std::string& path) {
  FramePtr frame(require(ft_frame_read_csv(path.c_str())));
  if (ft_frame_was_repaired(frame.get())) {
    std::fprintf(stderr, "note: frame '%s' was mildly non-orthonormal and has been repaired\n",
                 path.c_str());
  }
  return frame;
}

DatasetPtr load_dataset(const std::string& path, bool standardize, const std::string& negate) {
  DatasetPtr data(require(ft_dataset_read_csv(path.c_str())));
  if (!negate.empty()) {
    data = DatasetPtr(require(ft_dataset_negate_columns(data.get(), negate.c_str())));
  }
  if (!standardize) return data;
  return DatasetPtr(require(ft_dataset_standardize(data.get())));
}

// ---- subcommand settings ----

struct InterpolateArgs {
  std::string start, target, output;
  std::string method = "givens";
  std::string format = "csv";
  int nsteps = 0;  // 0 = derive from delta
  double delta = 0.05;
};

struct GrandArgs {
  std::string output, frames_output;
  std::string method = "givens";
  int p = 4;
  int d = 2;
  int targets = 10;
  double delta = 0.05;
  std::uint64_t seed = 2025;
};

struct GuidedArgs {
  std::string input, output, frames_output, start, negate;
  std::string index = "splines2d";
  std::string method = "givens";
  std::string search = "better";
  int d = 2;
  int max_targets = 20;
  int candidates = 100;
  double delta = 0.05;
  double cooling = 0.9;
  double radius = 1.0;
  std::uint64_t seed = 2025;
  bool no_standardize = false;
};

struct PcaArgs {
  std::string input, scores_output, rotation_output, negate;
};

struct GeometryArgs {
  std::string input, output;
  int samples = 500;
  std::uint64_t seed = 2025;
};

struct IndexEvalArgs {
  std::string input, frame, negate;
  std::string index = "splines2d";
  bool no_standardize = false;
};

int run_interpolate(const InterpolateArgs& args) {
  const FramePtr start = load_frame(args.start);
  const FramePtr target = load_frame(args.target);

  PathPtr path;
  if (args.method == "givens") {
    path.reset(args.nsteps > 0
                   ? ft_path_givens(start.get(), target.get(), args.nsteps)
                   : ft_path_givens_auto(start.get(), target.get(), args.delta));
  } else if (args.method == "geodesic") {
    path.reset(args.nsteps > 0
                   ? ft_path_geodesic(start.get(), target.get(), args.nsteps)
                   : ft_path_geodesic_auto(start.get(), target.get(), args.delta));
  } else {
    fail_input("unknown method '" + args.method + "'; use givens or geodesic");
  }
  require(path.get());

  const std::string output = resolve_output(args.output);
  check(ft_path_write(path.get(), output.c_str(), args.format.c_str()));

  const int last = ft_path_length(path.get()) - 1;
  const FramePtr end(require(ft_path_frame(path.get(), last)));
  const double frame_error = ft_frame_max_abs_diff(end.get(), target.get());
  const double plane_error = ft_frame_plane_error(end.get(), target.get());
  std::printf("method=%s nsteps=%d total_angle=%.17g frame_error=%.17g plane_error=%.17g output=%s\n",
              args.method.c_str(), last, ft_path_total_angle(path.get()), frame_error,
              plane_error, output.c_str());
  return kExitOk;
}

ft_tour_config base_config(const std::string& method, double delta, int max_targets,
                           std::uint64_t seed) {
  ft_tour_config config = ft_tour_config_default();
  if (method == "givens") {
    config.interpolator = FT_INTERP_GIVENS;
  } else if (method == "geodesic") {
    config.interpolator = FT_INTERP_GEODESIC;
  } else {
    fail_input("unknown method '" + method + "'; use givens or geodesic");
  }
  config.delta = delta;
  config.max_targets = max_targets;
  config.seed = seed;
  return config;
}

void write_trace_outputs(const ft_trace* trace, const std::string& output,
                         const std::string& frames_output) {
  check(ft_trace_write(trace, output.c_str()));
  if (!frames_output.empty()) {
    check(ft_trace_write_frames(trace, frames_output.c_str()));
  }
}

int run_grand(const GrandArgs& args) {
  const ft_tour_config config = base_config(args.method, args.delta, args.targets, args.seed);
  const TracePtr trace(require(ft_grand_tour(args.p, args.d, &config)));

  const std::string output = resolve_output(args.output);
  const std::string frames_output =
      args.frames_output.empty() ? "" : resolve_output(args.frames_output);
  write_trace_outputs(trace.get(), output, frames_output);
  std::printf("p=%d d=%d targets=%d records=%d output=%s\n", args.p, args.d, args.targets,
              ft_trace_size(trace.get()), output.c_str());
  return kExitOk;
}

int run_guided(const GuidedArgs& args) {
  const DatasetPtr data = load_dataset(args.input, !args.no_standardize, args.negate);

  ft_tour_config config = base_config(args.method, args.delta, args.max_targets, args.seed);
  if (args.search == "better") {
    config.search = FT_SEARCH_BETTER;
  } else if (args.search == "geodesic") {
    config.search = FT_SEARCH_GEODESIC;
  } else if (args.search == "grand") {
    config.search = FT_SEARCH_GRAND;
  } else {
    fail_input("unknown search '" + args.search + "'; use better, geodesic or grand");
  }
  config.cooling = args.cooling;
  config.n_candidates = args.candidates;
  config.initial_radius = args.radius;

  FramePtr start;
  if (!args.start.empty()) start = load_frame(args.start);

  const TracePtr trace(
      require(ft_guided_tour(data.get(), args.index.c_str(), args.d, &config, start.get())));

  int accepted = 0;
  double final_index = std::nan("");
  for (int k = 0; k < ft_trace_size(trace.get()); ++k) {
    const int event = ft_trace_event(trace.get(), k);
    if (event == FT_EVENT_TARGET_ACCEPTED) ++accepted;
    if (event == FT_EVENT_INTERPOLATION) final_index = ft_trace_index_value(trace.get(), k);
  }

  const std::string output = resolve_output(args.output);
  const std::string frames_output =
      args.frames_output.empty() ? "" : resolve_output(args.frames_output);
  write_trace_outputs(trace.get(), output, frames_output);
  std::printf("index=%s search=%s method=%s targets_accepted=%d final_index=%.17g records=%d output=%s\n",
              args.index.c_str(), args.search.c_str(), args.method.c_str(), accepted, final_index,
              ft_trace_size(trace.get()), output.c_str());
  return kExitOk;
}

int run_pca(const PcaArgs& args) {
  const DatasetPtr data = load_dataset(args.input, false, args.negate);
  const PcaPtr pca(require(ft_pca_compute(data.get())));

  if (!args.scores_output.empty()) {
    check(ft_pca_write_scores(pca.get(), resolve_output(args.scores_output).c_str()));
  }
  if (!args.rotation_output.empty()) {
    check(ft_pca_write_rotation(pca.get(), resolve_output(args.rotation_output).c_str()));
  }

  const int p = ft_dataset_cols(data.get());
  std::string cumulative;
  for (int c = 0; c < p; ++c) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", ft_pca_cumulative(pca.get(), c));
    cumulative += (c ? "," : "");
    cumulative += buf;
  }
  std::printf("n=%d p=%d cumulative=%s\n", ft_dataset_rows(data.get()), p, cumulative.c_str());
  return kExitOk;
}

int run_geometry(const GeometryArgs& args) {
  const PathPtr path(require(ft_path_read(args.input.c_str())));
  const std::string output = resolve_output(args.output);
  check(ft_path_write_geometry(path.get(), output.c_str(), args.samples, args.seed));
  std::printf("frames=%d samples=%d output=%s\n", ft_path_length(path.get()), args.samples,
              output.c_str());
  return kExitOk;
}

int run_index_eval(const IndexEvalArgs& args) {
  const DatasetPtr data = load_dataset(args.input, !args.no_standardize, args.negate);
  FramePtr frame;
  if (!args.frame.empty()) frame = load_frame(args.frame);
  double value = 0.0;
  check(ft_index_eval(data.get(), frame.get(), args.index.c_str(), &value));
  std::printf("index=%s value=%.17g n=%d p=%d\n", args.index.c_str(), value,
              ft_dataset_rows(data.get()), ft_dataset_cols(data.get()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame-to-frame and plane-to-plane tour interpolation, projection pursuit, and "
               "guided tours (library version " +
               std::string(ft_version()) + ")"};
  app.require_subcommand(1);

  InterpolateArgs interp;
  auto* cmd_interp = app.add_subcommand(
      "interpolate", "Interpolate between a start and a target frame, write the path");
  cmd_interp->add_option("--start", interp.start, "start frame CSV (p rows, d columns)")
      ->required();
  cmd_interp->add_option("--target", interp.target, "target frame CSV")->required();
  cmd_interp->add_option("--method", interp.method, "givens | geodesic");
  cmd_interp->add_option("--nsteps", interp.nsteps, "number of steps (0 = derive from --delta)");
  cmd_interp->add_option("--delta", interp.delta, "angular step size in radians");
  cmd_interp->add_option("--output,-o", interp.output, "path output file")->required();
  cmd_interp->add_option("--format", interp.format, "csv | json");

  GrandArgs grand;
  auto* cmd_grand = app.add_subcommand("grand", "Grand tour: random targets, interpolated");
  cmd_grand->add_option("--p", grand.p, "data dimension")->required();
  cmd_grand->add_option("--d", grand.d, "projection dimension (1 or 2)");
  cmd_grand->add_option("--targets", grand.targets, "number of targets");
  cmd_grand->add_option("--method", grand.method, "givens | geodesic");
  cmd_grand->add_option("--delta", grand.delta, "angular step size in radians");
  cmd_grand->add_option("--seed", grand.seed, "random seed");
  cmd_grand->add_option("--output,-o", grand.output, "trace CSV output")->required();
  cmd_grand->add_option("--frames-output", grand.frames_output, "also dump every frame");

  GuidedArgs guided;
  auto* cmd_guided =
      app.add_subcommand("guided", "Guided tour: optimize a projection index over frames");
  cmd_guided->add_option("--input,-i", guided.input, "dataset CSV (header + numeric cells)")
      ->required();
  cmd_guided->add_option("--index", guided.index, "splines2d | splines2d_sym | holes");
  cmd_guided->add_option("--search", guided.search, "better | geodesic | grand");
  cmd_guided->add_option("--method", guided.method, "interpolator: givens | geodesic");
  cmd_guided->add_option("--d", guided.d, "projection dimension");
  cmd_guided->add_option("--seed", guided.seed, "random seed");
  cmd_guided->add_option("--delta", guided.delta, "angular step size in radians");
  cmd_guided->add_option("--max-targets", guided.max_targets, "accepted targets before stopping");
  cmd_guided->add_option("--cooling", guided.cooling, "neighborhood shrink factor in (0,1)");
  cmd_guided->add_option("--candidates", guided.candidates, "candidate draws per search");
  cmd_guided->add_option("--radius", guided.radius, "initial search radius in radians");
  cmd_guided->add_option("--start", guided.start, "optional start frame CSV");
  cmd_guided->add_flag("--no-standardize", guided.no_standardize,
                       "evaluate on raw instead of standardized columns");
  cmd_guided->add_option("--negate", guided.negate,
                         "comma-separated column names to sign-flip at ingestion");
  cmd_guided->add_option("--output,-o", guided.output, "trace CSV output")->required();
  cmd_guided->add_option("--frames-output", guided.frames_output, "also dump every frame");

  PcaArgs pca_args;
  auto* cmd_pca = app.add_subcommand("pca", "Principal components of a dataset");
  cmd_pca->add_option("--input,-i", pca_args.input, "dataset CSV")->required();
  cmd_pca->add_option("--scores-output", pca_args.scores_output, "scores CSV");
  cmd_pca->add_option("--rotation-output", pca_args.rotation_output, "rotation matrix CSV");
  cmd_pca->add_option("--negate", pca_args.negate,
                      "comma-separated column names to sign-flip at ingestion");

  GeometryArgs geom;
  auto* cmd_geom = app.add_subcommand(
      "geometry", "Map an exported path onto its projection space (sphere or torus)");
  cmd_geom->add_option("--input,-i", geom.input, "path file written by interpolate")->required();
  cmd_geom->add_option("--output,-o", geom.output, "geometry CSV output")->required();
  cmd_geom->add_option("--samples", geom.samples, "background surface samples");
  cmd_geom->add_option("--seed", geom.seed, "seed for the background samples");

  IndexEvalArgs idx;
  auto* cmd_idx = app.add_subcommand("index-eval", "Evaluate a projection index on a dataset");
  cmd_idx->add_option("--input,-i", idx.input, "dataset CSV")->required();
  cmd_idx->add_option("--index", idx.index, "splines2d | splines2d_sym | holes");
  cmd_idx->add_option("--frame", idx.frame,
                      "projection frame CSV (default: identity on the first columns)");
  cmd_idx->add_flag("--no-standardize", idx.no_standardize,
                    "evaluate on raw instead of standardized columns");
  cmd_idx->add_option("--negate", idx.negate,
                      "comma-separated column names to sign-flip at ingestion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (cmd_interp->parsed()) return run_interpolate(interp);
  if (cmd_grand->parsed()) return run_grand(grand);
  if (cmd_guided->parsed()) return run_guided(guided);
  if (cmd_pca->parsed()) return run_pca(pca_args);
  if (cmd_geom->parsed()) return run_geometry(geom);
  if (cmd_idx->parsed()) return run_index_eval(idx);
  return kExitInput;
}
