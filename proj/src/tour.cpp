#include "frametour/tour.hpp"

#include <cmath>
#include <functional>

#include "frametour/errors.hpp"
#include "frametour/geodesic.hpp"
#include "frametour/givens.hpp"
#include "frametour/linalg.hpp"

namespace frametour {
namespace {

constexpr int kMaxExhausted = 3;  // consecutive failed searches before giving up

void validate_config(const TourConfig& config) {
  if (!(config.delta > 0.0)) throw invalid_input("tour config: delta must be positive");
  if (config.max_targets < 0) throw invalid_input("tour config: max_targets must be >= 0");
  if (!(config.cooling > 0.0 && config.cooling < 1.0)) {
    throw invalid_input("tour config: cooling must lie in (0, 1)");
  }
  if (config.n_candidates < 1) throw invalid_input("tour config: n_candidates must be >= 1");
  if (!(config.initial_radius > 0.0)) {
    throw invalid_input("tour config: initial_radius must be positive");
  }
}

using IndexEval = std::function<double(const Frame&)>;

// Appends the interpolated frames (fractions 1/n .. n/n) from `from` to `to`,
// evaluating the index when given. Returns the last appended frame.
Frame append_interpolation(TourTrace& trace, int& step, int target_id, const Frame& from,
                           const Frame& to, const TourConfig& config, const Tolerances& tols,
                           const IndexEval* eval) {
  Frame current = from;
  if (config.interpolator == Interpolator::givens) {
    const GivensInfo info = givens_info(from, to, tols);
    const int nsteps = steps_for_speed(info.sequence, config.delta);
    for (int k = 1; k <= nsteps; ++k) {
      Frame f = givens_frame_at(info, static_cast<double>(k) / nsteps, tols);
      trace.records.push_back({step++, target_id, TourEvent::interpolation, f,
                               eval ? std::optional<double>((*eval)(f)) : std::nullopt});
      current = std::move(f);
    }
  } else {
    const GeodesicInfo info = geodesic_info(from, to, tols);
    const int nsteps = std::max(1, static_cast<int>(std::ceil(info.total_angle / config.delta)));
    for (int k = 1; k <= nsteps; ++k) {
      Frame f = geodesic_frame_at(info, static_cast<double>(k) / nsteps, tols);
      trace.records.push_back({step++, target_id, TourEvent::interpolation, f,
                               eval ? std::optional<double>((*eval)(f)) : std::nullopt});
      current = std::move(f);
    }
  }
  return current;
}

}  // namespace

const char* to_string(TourEvent event) {
  switch (event) {
    case TourEvent::interpolation: return "interpolation";
    case TourEvent::target_proposed: return "target_proposed";
    case TourEvent::target_accepted: return "target_accepted";
    case TourEvent::target_rejected: return "target_rejected";
  }
  return "unknown";
}

std::vector<double> accepted_indices(const TourTrace& trace) {
  std::vector<double> out;
  for (const auto& rec : trace.records) {
    if (rec.event == TourEvent::target_accepted && rec.index_value) {
      out.push_back(*rec.index_value);
    }
  }
  return out;
}

Frame random_frame(int p, int d, Rng& rng) {
  if (d < 1 || d > 2 || p < d) throw invalid_input("random_frame: need p >= d and d in {1, 2}");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd m(p, d);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
    }
    try {
      return orthonormalize(m);
    } catch (const degenerate_input&) {
      // measure-zero rank-deficient draw; try again
    }
  }
  throw numerical_failure("random_frame: repeated degenerate draws");
}

TourTrace grand_tour(const TourConfig& config, int p, int d, const Tolerances& tols) {
  validate_config(config);
  validate(tols);
  Rng rng(config.seed);
  TourTrace trace;
  int step = 0;
  Frame current = random_frame(p, d, rng);
  trace.records.push_back({step++, 0, TourEvent::interpolation, current, std::nullopt});
  for (int t = 1; t <= config.max_targets; ++t) {
    const Frame target = random_frame(p, d, rng);
    trace.records.push_back({step++, t, TourEvent::target_accepted, target, std::nullopt});
    current = append_interpolation(trace, step, t, current, target, config, tols, nullptr);
  }
  return trace;
}

std::optional<Proposal> search_better(const Frame& current, const IndexFunction& index,
                                      const Eigen::MatrixXd& data, Rng& rng, double radius,
                                      int n_candidates, const Tolerances& tols) {
  if (!(radius > 0.0)) throw invalid_input("search_better: radius must be positive");
  if (n_candidates < 1) throw invalid_input("search_better: n_candidates must be >= 1");
  const double current_value = index.evaluate(data * current.basis());
  for (int c = 0; c < n_candidates; ++c) {
    const Frame target = random_frame(current.p(), current.d(), rng);
    const GivensInfo info = givens_info(current, target, tols);
    const double total = info.sequence.total_angle();
    Frame candidate =
        total < 1e-12 ? target : givens_frame_at(info, std::min(1.0, radius / total), tols);
    const double value = index.evaluate(data * candidate.basis());
    if (value > current_value) return Proposal{std::move(candidate), value};
  }
  return std::nullopt;
}

std::optional<Proposal> search_geodesic_dir(const Frame& current, const IndexFunction& index,
                                            const Eigen::MatrixXd& data, Rng& rng, int n_dirs,
                                            double step, const Tolerances& tols) {
  if (n_dirs < 2) throw invalid_input("search_geodesic_dir: n_dirs must be >= 2");
  if (!(step > 0.0)) throw invalid_input("search_geodesic_dir: step must be positive");
  const double current_value = index.evaluate(data * current.basis());

  std::optional<GeodesicInfo> best_dir;
  double best_probe = current_value;
  double best_fraction = 0.0;
  for (int i = 0; i < n_dirs; ++i) {
    const Frame target = random_frame(current.p(), current.d(), rng);
    GeodesicInfo info = geodesic_info(current, target, tols);
    if (info.total_angle < 1e-9) continue;
    const double fraction = std::min(1.0, step / info.total_angle);
    const double value = index.evaluate(data * geodesic_frame_at(info, fraction, tols).basis());
    if (value > best_probe) {
      best_probe = value;
      best_dir = std::move(info);
      best_fraction = fraction;
    }
  }
  if (!best_dir) return std::nullopt;

  // Follow the chosen direction until the index stops increasing.
  double best_value = best_probe;
  double at = best_fraction;
  for (int k = 2; at < 1.0; ++k) {
    const double fraction = std::min(1.0, k * step / best_dir->total_angle);
    const double value = index.evaluate(data * geodesic_frame_at(*best_dir, fraction, tols).basis());
    if (value <= best_value) break;
    best_value = value;
    at = fraction;
  }
  return Proposal{geodesic_frame_at(*best_dir, at, tols), best_value};
}

TourTrace guided_tour(const TourConfig& config, const Eigen::MatrixXd& data,
                      const IndexFunction& index, int d, const std::optional<Frame>& start,
                      const Tolerances& tols) {
  validate_config(config);
  validate(tols);
  if (data.rows() < 1) throw invalid_input("guided_tour: empty data");
  if (!data.allFinite()) throw invalid_input("guided_tour: data must be finite");
  const int p = static_cast<int>(data.cols());
  if (start && (start->p() != p || start->d() != d)) {
    throw invalid_input("guided_tour: start frame shape does not match data/d");
  }

  Rng rng(config.seed);
  Frame current = start ? *start : random_frame(p, d, rng);
  const IndexEval eval = [&](const Frame& f) { return index.evaluate(data * f.basis()); };

  TourTrace trace;
  int step = 0;
  trace.records.push_back({step++, 0, TourEvent::interpolation, current, eval(current)});

  double radius = config.initial_radius;
  int accepted = 0;
  int exhausted = 0;
  while (accepted < config.max_targets && exhausted < kMaxExhausted) {
    std::optional<Proposal> proposal;
    switch (config.search) {
      case SearchMethod::better:
        proposal = search_better(current, index, data, rng, radius, config.n_candidates, tols);
        break;
      case SearchMethod::geodesic_search:
        proposal = search_geodesic_dir(current, index, data, rng,
                                       std::max(2, config.n_candidates), config.delta, tols);
        break;
      case SearchMethod::grand: {
        Frame target = random_frame(p, d, rng);
        const double value = eval(target);
        proposal = Proposal{std::move(target), value};
        break;
      }
    }
    if (!proposal) {
      ++exhausted;
      continue;
    }
    exhausted = 0;
    ++accepted;
    trace.records.push_back({step++, accepted, TourEvent::target_proposed, proposal->target,
                             proposal->index_value});
    trace.records.push_back({step++, accepted, TourEvent::target_accepted, proposal->target,
                             proposal->index_value});
    current = append_interpolation(trace, step, accepted, current, proposal->target, config, tols,
                                   &eval);
    radius *= config.cooling;
  }
  return trace;
}

TourTrace planned_tour(const TourConfig& config, const std::vector<Frame>& targets,
                       const Tolerances& tols) {
  validate_config(config);
  if (targets.empty()) throw invalid_input("planned_tour: need at least one frame");
  TourTrace trace;
  int step = 0;
  trace.records.push_back({step++, 0, TourEvent::interpolation, targets.front(), std::nullopt});
  Frame current = targets.front();
  for (std::size_t t = 1; t < targets.size(); ++t) {
    trace.records.push_back(
        {step++, static_cast<int>(t), TourEvent::target_accepted, targets[t], std::nullopt});
    current = append_interpolation(trace, step, static_cast<int>(t), current, targets[t], config,
                                   tols, nullptr);
  }
  return trace;
}

}  // namespace frametour
