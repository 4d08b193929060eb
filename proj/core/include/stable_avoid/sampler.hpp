#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "stable_avoid/params.hpp"
#include "stable_avoid/rng.hpp"

namespace stable_avoid {

/// Mean/stderr pair with sample count and seed provenance.
struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t n = 0;
    RngSpec seed;
};

enum class PathOutcome : std::uint8_t {
    Entered,          // first grid point inside the target interval
    SurvivedHorizon,  // reached the time horizon alive
    EscapedRadius,    // left the |x| <= escape_radius ball
};

const char* to_string(PathOutcome o);

/// Discretized trajectory. times[0] = 0, positions[0] = x0; when outcome is
/// Entered, positions[entered_index] is the unique in-interval point.
struct PathSample {
    std::vector<double> times;
    std::vector<double> positions;
    PathOutcome outcome = PathOutcome::SurvivedHorizon;
    std::size_t entered_index = 0;
};

/// Stepping scheme controls.
///
/// The grid is adaptive: dt = step_scale * min(1, dist)^alpha in coordinates
/// reduced to [-1,1] (so the rule commutes with the scaling property for a
/// general interval), capped at dt_max; dist is floored at dist_floor to
/// keep near-boundary paths from stalling.
struct StepConfig {
    double step_scale = 0.01;
    double dt_max = 1.0;
    double dist_floor = 1e-8;
    std::int64_t max_steps = 50'000'000;  // hard safety stop -> SurvivedHorizon

    StepConfig refined() const {
        StepConfig c = *this;
        c.step_scale *= 0.5;
        return c;
    }
};

/// Monte Carlo run controls shared by all estimators.
struct McConfig {
    StepConfig step;
    int workers = 0;  // 0: STABLE_AVOID_WORKERS env var, else hardware concurrency
};

/// One unit-time stable variate S with E[e^{i theta S}] = e^{-Psi(theta)}
/// (Chambers-Mallows-Stuck; exact Cauchy inversion for alpha = 1).
double unit_stable(const StabilityParams& p, Philox& rng);

/// Increment over time dt: dt^{1/alpha} * S by the scaling property.
double stable_increment(const StabilityParams& p, double dt, Philox& rng);

/// Grid-based first-entrance simulation; obs(t, x) sees every accepted grid
/// point including (0, x0). escape_radius <= 0 disables the escape stop.
template <class Observer>
PathOutcome run_path(const StabilityParams& p, double x0, const Interval& iv, double horizon,
                     double escape_radius, const StepConfig& cfg, Philox& rng, Observer&& obs);

/// Full-trajectory convenience wrapper around run_path.
PathSample simulate_until_entrance(const StabilityParams& p, double x0, const Interval& iv,
                                   double horizon, double escape_radius, const StepConfig& cfg,
                                   Philox& rng);

/// P^x(s < T) estimated as the surviving fraction of n paths (binomial stderr).
/// Paths i consume streams spec.stream + i.
McEstimate mc_survival(const StabilityParams& p, double x, double s, std::int64_t n_paths,
                       const McConfig& cfg, RngSpec spec, const Interval& iv = Interval::unit());

/// Survival estimates at several horizons from common paths (one simulation
/// to max(s_grid) per path), so estimates are monotone in s by construction.
std::vector<McEstimate> mc_survival_multi(const StabilityParams& p, double x,
                                          std::span<const double> s_grid, std::int64_t n_paths,
                                          const McConfig& cfg, RngSpec spec,
                                          const Interval& iv = Interval::unit());

/// P^x(T = infinity) for alpha < 1 via escape through |X| > escape_radius.
McEstimate mc_avoid_alpha_lt1(const StabilityParams& p, double x, double escape_radius,
                              std::int64_t n_paths, const McConfig& cfg, RngSpec spec);

/// Analytic bound on the part of the avoidance event truncated by the
/// escape radius: 1 - avoid_prob(R).
double avoid_truncation_bound(const StabilityParams& p, double escape_radius);

/// (1/n) sum_k e^{i theta S_k} per theta over unit-time variates.
std::vector<std::complex<double>> empirical_cf(const StabilityParams& p,
                                               std::span<const double> theta_grid,
                                               std::int64_t n_samples, const McConfig& cfg,
                                               RngSpec spec);

/// Fraction of unit-time variates >= 0; matches rho within MC noise.
McEstimate mc_positivity(const StabilityParams& p, std::int64_t n_samples, const McConfig& cfg,
                         RngSpec spec);

// -----------------------------------------------------------------------------
// template implementation

template <class Observer>
PathOutcome run_path(const StabilityParams& p, double x0, const Interval& iv, double horizon,
                     double escape_radius, const StepConfig& cfg, Philox& rng, Observer&& obs) {
    if (!(cfg.step_scale > 0.0) || !(cfg.dt_max > 0.0) || !(cfg.dist_floor > 0.0))
        raise(ErrorCode::ConfigError, "step_scale, dt_max and dist_floor must be positive");
    if (!(horizon >= 0.0)) raise(ErrorCode::ConfigError, "horizon must be nonnegative");
    if (iv.contains(x0)) raise(ErrorCode::DomainError, "start point inside the target interval");

    const double hw = iv.half_width();
    const double hw_alpha = std::pow(hw, p.alpha());
    const double inv_alpha = 1.0 / p.alpha();

    double t = 0.0;
    double x = x0;
    obs(t, x);
    if (horizon == 0.0) return PathOutcome::SurvivedHorizon;

    for (std::int64_t step = 0; step < cfg.max_steps; ++step) {
        double rdist = iv.distance(x) / hw;
        rdist = std::min(1.0, std::max(rdist, cfg.dist_floor));
        double dt = cfg.step_scale * std::pow(rdist, p.alpha()) * hw_alpha;
        dt = std::min(dt, cfg.dt_max * hw_alpha);
        bool final_step = false;
        if (dt >= horizon - t) {  // land exactly on the horizon
            dt = horizon - t;
            final_step = true;
        }

        x += std::pow(dt, inv_alpha) * unit_stable(p, rng);
        t = final_step ? horizon : t + dt;
        obs(t, x);

        if (iv.contains(x)) return PathOutcome::Entered;
        if (escape_radius > 0.0 && std::abs(x) > escape_radius) return PathOutcome::EscapedRadius;
        if (final_step) return PathOutcome::SurvivedHorizon;
    }
    return PathOutcome::SurvivedHorizon;  // safety stop
}

}  // namespace stable_avoid
