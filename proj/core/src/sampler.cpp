#include "stable_avoid/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "stable_avoid/harmonic.hpp"
#include "stable_avoid/parallel.hpp"

namespace stable_avoid {

const char* to_string(PathOutcome o) {
    switch (o) {
        case PathOutcome::Entered: return "Entered";
        case PathOutcome::SurvivedHorizon: return "SurvivedHorizon";
        case PathOutcome::EscapedRadius: return "EscapedRadius";
    }
    return "UnknownOutcome";
}

double unit_stable(const StabilityParams& p, Philox& rng) {
    const double a = p.alpha();
    if (a == 1.0) {
        // symmetric Cauchy: exact inversion
        return std::tan(rng.uniform_angle());
    }
    // Chambers-Mallows-Stuck matched to Psi(theta) = |theta|^a e^{i pi a (1/2-rho) sgn theta}.
    // With phi0 = pi (rho - 1/2) the scale prefactor cancels exactly.
    const double phi0 = M_PI * (p.rho() - 0.5);
    const double U = rng.uniform_angle();
    const double W = rng.exponential();
    const double aU = a * (U + phi0);
    return std::sin(aU) / std::pow(std::cos(U), 1.0 / a) *
           std::pow(std::cos(U - aU) / W, (1.0 - a) / a);
}

double stable_increment(const StabilityParams& p, double dt, Philox& rng) {
    if (!(dt > 0.0)) raise(ErrorCode::DomainError, "stable_increment requires dt > 0");
    return std::pow(dt, 1.0 / p.alpha()) * unit_stable(p, rng);
}

PathSample simulate_until_entrance(const StabilityParams& p, double x0, const Interval& iv,
                                   double horizon, double escape_radius, const StepConfig& cfg,
                                   Philox& rng) {
    PathSample path;
    path.outcome = run_path(p, x0, iv, horizon, escape_radius, cfg, rng, [&](double t, double x) {
        path.times.push_back(t);
        path.positions.push_back(x);
    });
    if (path.outcome == PathOutcome::Entered) path.entered_index = path.times.size() - 1;
    return path;
}

namespace {

McEstimate indicator_estimate(double sum, std::int64_t n, RngSpec spec) {
    McEstimate e;
    e.n = n;
    e.seed = spec;
    e.mean = sum / static_cast<double>(n);
    e.stderr_ = std::sqrt(std::max(e.mean * (1.0 - e.mean), 0.0) / static_cast<double>(n));
    return e;
}

}  // namespace

McEstimate mc_survival(const StabilityParams& p, double x, double s, std::int64_t n_paths,
                       const McConfig& cfg, RngSpec spec, const Interval& iv) {
    const double grid[1] = {s};
    return mc_survival_multi(p, x, grid, n_paths, cfg, spec, iv)[0];
}

std::vector<McEstimate> mc_survival_multi(const StabilityParams& p, double x,
                                          std::span<const double> s_grid, std::int64_t n_paths,
                                          const McConfig& cfg, RngSpec spec, const Interval& iv) {
    if (s_grid.empty()) raise(ErrorCode::ConfigError, "empty horizon grid");
    if (n_paths <= 0) raise(ErrorCode::ConfigError, "n_paths must be positive");
    std::vector<double> grid(s_grid.begin(), s_grid.end());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] >= 0.0)) raise(ErrorCode::ConfigError, "horizons must be nonnegative");
        if (k > 0 && grid[k] < grid[k - 1]) raise(ErrorCode::ConfigError, "horizon grid must be sorted");
    }

    const std::size_t K = grid.size();
    std::vector<double> sums(K, 0.0);
    parallel_accumulate(
        n_paths, cfg.workers, K,
        [&](std::int64_t i, std::span<double> acc) {
            Philox rng(spec.with_stream_offset(static_cast<std::uint64_t>(i)));
            double pos = x;
            double done = 0.0;
            bool alive = true;
            for (std::size_t k = 0; k < K && alive; ++k) {
                const double seg = grid[k] - done;
                if (seg > 0.0) {
                    double end = pos;
                    const PathOutcome o = run_path(p, pos, iv, seg, 0.0, cfg.step,
                                                   rng, [&](double, double xx) { end = xx; });
                    alive = o == PathOutcome::SurvivedHorizon;
                    pos = end;
                    done = grid[k];
                }
                if (alive) acc[k] += 1.0;
            }
        },
        sums);

    std::vector<McEstimate> out(K);
    for (std::size_t k = 0; k < K; ++k) out[k] = indicator_estimate(sums[k], n_paths, spec);
    return out;
}

McEstimate mc_avoid_alpha_lt1(const StabilityParams& p, double x, double escape_radius,
                              std::int64_t n_paths, const McConfig& cfg, RngSpec spec) {
    if (!(p.alpha() < 1.0)) raise(ErrorCode::RegimeError, "mc_avoid_alpha_lt1 requires alpha < 1");
    if (!(std::abs(x) > 1.0)) raise(ErrorCode::DomainError, "requires |x| > 1");
    if (!(escape_radius > std::abs(x))) raise(ErrorCode::ConfigError, "escape radius must exceed |x|");
    if (n_paths <= 0) raise(ErrorCode::ConfigError, "n_paths must be positive");

    // Effectively no horizon: sup|X_t| grows like t^{1/alpha}, so the
    // enter-or-escape decision falls at t = O(R^alpha); 100x that is slack.
    const double horizon = 100.0 * std::pow(escape_radius, p.alpha());
    double sum = 0.0;
    std::span<double> out(&sum, 1);
    parallel_accumulate(
        n_paths, cfg.workers, 1,
        [&](std::int64_t i, std::span<double> acc) {
            Philox rng(spec.with_stream_offset(static_cast<std::uint64_t>(i)));
            const PathOutcome o =
                run_path(p, x, Interval::unit(), horizon, escape_radius, cfg.step, rng,
                         [](double, double) {});
            if (o == PathOutcome::EscapedRadius) acc[0] += 1.0;
        },
        out);
    return indicator_estimate(sum, n_paths, spec);
}

double avoid_truncation_bound(const StabilityParams& p, double escape_radius) {
    return 1.0 - avoid_prob(p, escape_radius);
}

std::vector<std::complex<double>> empirical_cf(const StabilityParams& p,
                                               std::span<const double> theta_grid,
                                               std::int64_t n_samples, const McConfig& cfg,
                                               RngSpec spec) {
    if (n_samples <= 0) raise(ErrorCode::ConfigError, "n_samples must be positive");
    const std::size_t K = theta_grid.size();
    std::vector<double> theta(theta_grid.begin(), theta_grid.end());
    std::vector<double> sums(2 * K, 0.0);
    parallel_accumulate(
        n_samples, cfg.workers, 2 * K,
        [&](std::int64_t i, std::span<double> acc) {
            Philox rng(spec.with_stream_offset(static_cast<std::uint64_t>(i)));
            const double s = unit_stable(p, rng);
            for (std::size_t k = 0; k < theta.size(); ++k) {
                acc[2 * k] += std::cos(theta[k] * s);
                acc[2 * k + 1] += std::sin(theta[k] * s);
            }
        },
        sums);
    std::vector<std::complex<double>> out(K);
    for (std::size_t k = 0; k < K; ++k)
        out[k] = {sums[2 * k] / static_cast<double>(n_samples),
                  sums[2 * k + 1] / static_cast<double>(n_samples)};
    return out;
}

McEstimate mc_positivity(const StabilityParams& p, std::int64_t n_samples, const McConfig& cfg,
                         RngSpec spec) {
    if (n_samples <= 0) raise(ErrorCode::ConfigError, "n_samples must be positive");
    double sum = 0.0;
    std::span<double> out(&sum, 1);
    parallel_accumulate(
        n_samples, cfg.workers, 1,
        [&](std::int64_t i, std::span<double> acc) {
            Philox rng(spec.with_stream_offset(static_cast<std::uint64_t>(i)));
            if (unit_stable(p, rng) >= 0.0) acc[0] += 1.0;
        },
        out);
    return indicator_estimate(sum, n_samples, spec);
}

}  // namespace stable_avoid
