#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stable_avoid/harmonic.hpp"
#include "stable_avoid/sampler.hpp"

namespace stable_avoid {

/// Path functional with a declared sup bound; required because the h-weight
/// is unbounded and only bounded F make the weighted estimator well-posed.
struct BoundedFunctional {
    std::function<double(const PathSample&)> fn;
    double bound = 1.0;
};

/// E^{updown,x}[F] = E^x[F 1{t < T} h(X_t)] / h(x) by direct reweighting of
/// killed paths (non-survivors contribute 0). Streams spec.stream + i.
McEstimate weighted_expectation(const StabilityParams& p, double x, double t,
                                const BoundedFunctional& F, std::int64_t n_paths,
                                const McConfig& cfg, RngSpec spec);

struct HarmonicityRow {
    double x = 0.0;
    double t = 0.0;
    McEstimate ratio;          // weighted_expectation of F = 1; 1 under exact harmonicity
    McEstimate ratio_refined;  // same at step_scale / 2
};

/// Harmonicity scan over (x, t) grids: the F = 1 weighted expectation with
/// a step-refined companion estimate. Consumes 2 * n_paths streams per row.
std::vector<HarmonicityRow> harmonicity_check(const StabilityParams& p,
                                              std::span<const double> x_grid,
                                              std::span<const double> t_grid, std::int64_t n_paths,
                                              const McConfig& cfg, RngSpec spec);

/// Sequential-importance-resampling ensemble targeting the conditioned law.
struct SirEnsemble {
    std::vector<PathSample> paths;      // full particle histories on [0, t_max]
    std::vector<double> final_weights;  // normalized weights at t_max
    int resamplings = 0;
    std::int64_t attempted = 0;

    /// Self-normalized ensemble mean of F at t_max.
    double weighted_mean(const BoundedFunctional& F) const;
};

/// Particle ensemble for P^{updown,x} on [0, t_max]: killed propagation with
/// incremental weights h(X_ckpt)/h(X_prev ckpt) and systematic resampling at
/// checkpoint_dt intervals. Throws Degeneracy if every particle is killed
/// before a checkpoint.
SirEnsemble conditioned_paths_sir(const StabilityParams& p, double x, double t_max,
                                  std::int64_t n_particles, double checkpoint_dt,
                                  const McConfig& cfg, RngSpec spec);

struct OccupationPoint {
    double t_max = 0.0;
    McEstimate full;       // E^{updown,x} int_0^{t_max} 1{X in [-d,d] \ [-1,1]} dt
    McEstimate same_side;  // same, restricted to the starting side of the interval
};

/// Occupation of [-d,d] \ [-1,1] under the conditioned law at increasing
/// horizons (common paths, h-weight applied at each horizon). The sequence
/// plateaus by transience.
std::vector<OccupationPoint> occupation_estimate(const StabilityParams& p, double x, double d,
                                                 std::span<const double> t_max_grid,
                                                 std::int64_t n_paths, const McConfig& cfg,
                                                 RngSpec spec);

struct TailRatioPoint {
    double s = 0.0;
    double ratio = 0.0;
    double stderr_ = 0.0;  // delta-method, covariance ignored
    McEstimate survival_x1;
    McEstimate survival_x2;
};

/// Survival ratios P^{x1}(s < T)/P^{x2}(s < T) on an s grid; the tail
/// normalization f(s) cancels, so the ratio converges to h(x1)/h(x2).
/// Common random numbers couple the two starting points. alpha >= 1 only.
std::vector<TailRatioPoint> tail_ratio_estimate(const StabilityParams& p, double x1, double x2,
                                                std::span<const double> s_grid,
                                                std::int64_t n_paths, const McConfig& cfg,
                                                RngSpec spec);

/// Riesz-Bogdan-Zak transform of a discrete path: positions 1/X at the
/// inverse of the trapezoid clock of |X|^{-2 alpha}. Requires all positions
/// nonzero.
PathSample rbz_transform(const StabilityParams& p, const PathSample& path);

}  // namespace stable_avoid
