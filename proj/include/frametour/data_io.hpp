#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frametour/geodesic.hpp"
#include "frametour/givens.hpp"
#include "frametour/tour.hpp"
#include "frametour/types.hpp"

namespace frametour {

/// A numeric table: n observations of p named columns.
struct Dataset {
  Eigen::MatrixXd values;
  std::vector<std::string> column_names;

  int n() const { return static_cast<int>(values.rows()); }
  int p() const { return static_cast<int>(values.cols()); }
};

struct PcaResult {
  Eigen::MatrixXd rotation;               ///< p x p, orthonormal columns
  Eigen::VectorXd variances;              ///< non-increasing
  Eigen::MatrixXd scores;                 ///< centered data times rotation
  Eigen::VectorXd cumulative_proportion;  ///< non-decreasing, ends at 1
};

/// Reads a CSV with a header row and numeric cells. Missing or non-numeric
/// cells raise parse_error naming the row and column.
Dataset load_csv(const std::string& path);
void write_csv(const Dataset& dataset, const std::string& path);

/// Each column shifted to mean 0 and scaled to sample standard deviation 1.
/// Zero-variance columns raise degenerate_input naming the column.
Dataset standardize(const Dataset& dataset);

/// Sign-flips the named columns.
Dataset negate_columns(const Dataset& dataset, const std::vector<std::string>& columns);

/// PCA via SVD of the centered data; scores/rotation column signs fixed so the
/// largest loading of each component is positive.
PcaResult pca(const Dataset& dataset);

/// n points on a noisy sine curve: x uniform over two periods, y = sin(x)
/// plus Gaussian noise. Columns "x", "y".
Dataset generate_sine(int n, double noise_sd, std::uint64_t seed);

/// p=4 benchmark data: columns "noise1", "noise2" standard normal, columns
/// "x", "y" the sine pair. Structure lives only in the last two columns.
Dataset generate_sine_in_noise(int n, double noise_sd, std::uint64_t seed);

enum class ExportFormat { csv, json };

/// Long-format export of a frame sequence: CSV `step,row,col,value` (0-based
/// indices) or a JSON array of matrices. Numbers are written with 17
/// significant digits and round-trip exactly.
void export_path(const std::vector<Frame>& frames, const std::string& path, ExportFormat format);
void export_path(const InterpolationPath& path, const std::string& file, ExportFormat format);
void export_path(const GeodesicPath& path, const std::string& file, ExportFormat format);

/// Reads back a path written by export_path (format detected from content).
std::vector<Frame> import_path(const std::string& file);

/// Projection-space geometry for plotting: for d=1 the frames as points on
/// the unit sphere plus n_samples background sphere points; for d=2 (p=3
/// only) the frames mapped onto a torus with radii R=2, r=1 plus background
/// torus points. CSV `kind,step,<coords>` with kind in {path, surface}.
void export_projection_geometry(const std::vector<Frame>& frames, const std::string& file,
                                int n_samples, std::uint64_t seed);

/// Tour trace as CSV `step_id,target_id,event,index_value` (index empty when
/// absent), plus a long-format dump of every recorded frame.
void export_trace(const TourTrace& trace, const std::string& file);
void export_trace_frames(const TourTrace& trace, const std::string& file);

struct LoadedFrame {
  Frame frame;
  bool repaired = false;  ///< true when mild non-orthonormality was fixed up
};

/// Reads a frame from a headerless numeric CSV (p rows, d columns).
/// Deviations from orthonormality up to 1e-6 are repaired by Gram-Schmidt;
/// larger ones are rejected.
LoadedFrame load_frame_csv(const std::string& path, const Tolerances& tols = {});
void write_frame_csv(const Frame& frame, const std::string& path);

}  // namespace frametour
