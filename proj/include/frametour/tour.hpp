#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frametour/pp_index.hpp"
#include "frametour/rng.hpp"
#include "frametour/types.hpp"

namespace frametour {

enum class Interpolator { givens, geodesic };
enum class SearchMethod { grand, geodesic_search, better };

struct TourConfig {
  Interpolator interpolator = Interpolator::givens;
  SearchMethod search = SearchMethod::better;
  double delta = 0.05;           ///< angular step per interpolation frame, radians
  int max_targets = 20;          ///< accepted targets before the tour stops
  std::uint64_t seed = 2025;
  double cooling = 0.9;          ///< neighborhood shrink factor per accepted target
  int n_candidates = 100;        ///< draws per search (directions for geodesic search)
  double initial_radius = 1.0;   ///< starting neighborhood radius, radians
};

enum class TourEvent { interpolation, target_proposed, target_accepted, target_rejected };
const char* to_string(TourEvent event);

struct TraceRecord {
  int step_id;
  int target_id;
  TourEvent event;
  Frame frame;
  std::optional<double> index_value;  ///< present for guided tours
};

/// Full record of a tour run: every interpolated frame plus the target
/// proposal/acceptance events, in execution order.
struct TourTrace {
  std::vector<TraceRecord> records;
};

/// Index values at target_accepted events, in order.
std::vector<double> accepted_indices(const TourTrace& trace);

/// Haar-distributed random frame: a p x d standard Gaussian matrix pushed
/// through Gram-Schmidt (retrying the measure-zero degenerate draws).
Frame random_frame(int p, int d, Rng& rng);

/// Randomly chosen targets, each reached through the configured interpolator
/// at fixed angular speed. With the Givens interpolator every target frame is
/// hit exactly.
TourTrace grand_tour(const TourConfig& config, int p, int d, const Tolerances& tols = {});

struct Proposal {
  Frame target;
  double index_value;
};

/// Neighborhood search: draws candidate frames at preframe-rotation distance
/// at most `radius` from `current` (a Haar draw pulled toward current along
/// its Givens path) and returns the first whose index beats index(current).
/// Candidates are frames, not planes, so within-plane rotations are legal
/// proposals. Empty result means no candidate improved at this radius.
std::optional<Proposal> search_better(const Frame& current, const IndexFunction& index,
                                      const Eigen::MatrixXd& data, Rng& rng, double radius,
                                      int n_candidates, const Tolerances& tols = {});

/// Direction search: probes n_dirs >= 2 small plane-level perturbations,
/// picks the steepest improving direction, then walks that geodesic in
/// `step`-sized increments until the index decreases. Returns the best frame
/// found, or empty if no direction improves.
std::optional<Proposal> search_geodesic_dir(const Frame& current, const IndexFunction& index,
                                            const Eigen::MatrixXd& data, Rng& rng, int n_dirs,
                                            double step = 0.05, const Tolerances& tols = {});

/// Guided tour: alternates target search (per config.search) with
/// interpolation (per config.interpolator), recording the index at every
/// interpolated frame. Terminates after max_targets accepted targets or 3
/// consecutive exhausted searches. `start` defaults to a seeded random frame.
TourTrace guided_tour(const TourConfig& config, const Eigen::MatrixXd& data,
                      const IndexFunction& index, int d = 2,
                      const std::optional<Frame>& start = {}, const Tolerances& tols = {});

/// Planned tour: interpolates through an explicit list of target frames.
TourTrace planned_tour(const TourConfig& config, const std::vector<Frame>& targets,
                       const Tolerances& tols = {});

}  // namespace frametour
