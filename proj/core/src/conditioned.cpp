#include "stable_avoid/conditioned.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "stable_avoid/parallel.hpp"

namespace stable_avoid {

namespace {

void check_start(const StabilityParams&, double x) {
    if (!(std::abs(x) > 1.0)) raise(ErrorCode::DomainError, "start point must satisfy |x| > 1");
}

void check_bounded(const BoundedFunctional& F) {
    if (!F.fn) raise(ErrorCode::ConfigError, "functional not set");
    if (!std::isfinite(F.bound) || !(F.bound > 0.0))
        raise(ErrorCode::UnboundedFunctional, "functional must declare a finite positive bound");
}

McEstimate moments_to_estimate(double sum, double sumsq, std::int64_t n, RngSpec spec) {
    McEstimate e;
    e.n = n;
    e.seed = spec;
    e.mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sumsq - sum * e.mean) / static_cast<double>(n - 1));
    e.stderr_ = std::sqrt(var / static_cast<double>(n));
    return e;
}

// Propagate one path segment of length seg, appending to `path` (which must
// hold the current endpoint last). Returns false if killed during the segment.
bool advance_segment(const StabilityParams& p, PathSample& path, double seg,
                     const StepConfig& cfg, Philox& rng) {
    const double t0 = path.times.back();
    const double x0 = path.positions.back();
    bool first = true;
    const PathOutcome o = run_path(p, x0, Interval::unit(), seg, 0.0, cfg, rng,
                                   [&](double t, double x) {
                                       if (first) {  // run_path re-emits the start point
                                           first = false;
                                           return;
                                       }
                                       path.times.push_back(t0 + t);
                                       path.positions.push_back(x);
                                   });
    if (o == PathOutcome::Entered) {
        path.outcome = PathOutcome::Entered;
        path.entered_index = path.times.size() - 1;
        return false;
    }
    return true;
}

}  // namespace

McEstimate weighted_expectation(const StabilityParams& p, double x, double t,
                                const BoundedFunctional& F, std::int64_t n_paths,
                                const McConfig& cfg, RngSpec spec) {
    check_start(p, x);
    check_bounded(F);
    if (!(t >= 0.0)) raise(ErrorCode::ConfigError, "time must be nonnegative");
    if (n_paths <= 1) raise(ErrorCode::ConfigError, "need at least 2 paths");

    const HarmonicTable table(p);
    const double hx = table(x);
    std::atomic<bool> bound_violated{false};

    double moments[2] = {0.0, 0.0};
    parallel_accumulate(
        n_paths, cfg.workers, 2,
        [&](std::int64_t i, std::span<double> acc) {
            thread_local PathSample path;
            path.times.clear();
            path.positions.clear();
            path.outcome = PathOutcome::SurvivedHorizon;

            Philox rng(spec.with_stream_offset(static_cast<std::uint64_t>(i)));
            path.outcome = run_path(p, x, Interval::unit(), t, 0.0, cfg.step, rng,
                                    [&](double tt, double xx) {
                                        path.times.push_back(tt);
                                        path.positions.push_back(xx);
                                    });
            double v = 0.0;
            if (path.outcome == PathOutcome::SurvivedHorizon) {
                const double f = F.fn(path);
                if (std::abs(f) > F.bound) bound_violated.store(true, std::memory_order_relaxed);
                v = f * table(path.positions.back()) / hx;
            }
            acc[0] += v;
            acc[1] += v * v;
        },
        moments);

    if (bound_violated.load())
        raise(ErrorCode::UnboundedFunctional, "functional exceeded its declared bound");
    return moments_to_estimate(moments[0], moments[1], n_paths, spec);
}

std::vector<HarmonicityRow> harmonicity_check(const StabilityParams& p,
                                              std::span<const double> x_grid,
                                              std::span<const double> t_grid, std::int64_t n_paths,
                                              const McConfig& cfg, RngSpec spec) {
    if (x_grid.empty() || t_grid.empty()) raise(ErrorCode::ConfigError, "empty grid");
    const BoundedFunctional unit{[](const PathSample&) { return 1.0; }, 1.0};

    std::vector<HarmonicityRow> rows;
    std::uint64_t offset = 0;
    for (double x : x_grid)
        for (double t : t_grid) {
            HarmonicityRow row;
            row.x = x;
            row.t = t;
            row.ratio = weighted_expectation(p, x, t, unit, n_paths, cfg,
                                             spec.with_stream_offset(offset));
            offset += static_cast<std::uint64_t>(n_paths);
            McConfig refined = cfg;
            refined.step = cfg.step.refined();
            row.ratio_refined = weighted_expectation(p, x, t, unit, n_paths, refined,
                                                     spec.with_stream_offset(offset));
            offset += static_cast<std::uint64_t>(n_paths);
            rows.push_back(row);
        }
    return rows;
}

double SirEnsemble::weighted_mean(const BoundedFunctional& F) const {
    check_bounded(F);
    double num = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) num += final_weights[i] * F.fn(paths[i]);
    return num;
}

SirEnsemble conditioned_paths_sir(const StabilityParams& p, double x, double t_max,
                                  std::int64_t n_particles, double checkpoint_dt,
                                  const McConfig& cfg, RngSpec spec) {
    check_start(p, x);
    if (!(t_max > 0.0) || !(checkpoint_dt > 0.0))
        raise(ErrorCode::ConfigError, "t_max and checkpoint_dt must be positive");
    if (n_particles <= 1) raise(ErrorCode::ConfigError, "need at least 2 particles");

    const HarmonicTable table(p);
    const std::size_t N = static_cast<std::size_t>(n_particles);

    std::vector<PathSample> paths(N);
    std::vector<double> h_prev(N, table(x));
    std::vector<std::uint8_t> alive(N, 1);
    for (auto& path : paths) {
        path.times.assign(1, 0.0);
        path.positions.assign(1, x);
    }

    SirEnsemble ens;
    ens.attempted = n_particles;

    double t = 0.0;
    std::uint64_t segment = 0;
    while (t < t_max) {
        const double seg = std::min(checkpoint_dt, t_max - t);
        const std::uint64_t seg_base = segment * (static_cast<std::uint64_t>(N) + 1);

        std::vector<double> unused(1, 0.0);
        parallel_accumulate(
            n_particles, cfg.workers, 1,
            [&](std::int64_t j, std::span<double>) {
                if (!alive[j]) return;
                Philox rng(spec.with_stream_offset(seg_base + static_cast<std::uint64_t>(j)));
                if (!advance_segment(p, paths[j], seg, cfg.step, rng)) alive[j] = 0;
            },
            unused);
        t += seg;
        ++segment;

        std::vector<double> w(N, 0.0);
        double w_total = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            if (alive[j]) w[j] = table(paths[j].positions.back()) / h_prev[j];
            w_total += w[j];
        }
        if (w_total <= 0.0)
            raise(ErrorCode::Degeneracy, "all " + std::to_string(n_particles) +
                                             " particles killed before t = " + std::to_string(t));

        if (t < t_max) {
            // systematic resampling on the normalized weights
            Philox rng(spec.with_stream_offset(seg_base + N));
            const double r = rng.uniform01();
            std::vector<PathSample> next(N);
            std::vector<double> next_h(N);
            double cum = 0.0;
            std::size_t src = 0;
            double target = (r / static_cast<double>(N)) * w_total;
            const double stride = w_total / static_cast<double>(N);
            cum = w[0];
            for (std::size_t j = 0; j < N; ++j) {
                while (cum < target && src + 1 < N) cum += w[++src];
                next[j] = paths[src];
                next_h[j] = table(next[j].positions.back());
                target += stride;
            }
            paths = std::move(next);
            h_prev = std::move(next_h);
            std::fill(alive.begin(), alive.end(), 1);
            ++ens.resamplings;
        } else {
            for (std::size_t j = 0; j < N; ++j) {
                if (!alive[j]) continue;
                ens.paths.push_back(std::move(paths[j]));
                ens.final_weights.push_back(w[j] / w_total);
            }
        }
    }
    return ens;
}

std::vector<OccupationPoint> occupation_estimate(const StabilityParams& p, double x, double d,
                                                 std::span<const double> t_max_grid,
                                                 std::int64_t n_paths, const McConfig& cfg,
                                                 RngSpec spec) {
    check_start(p, x);
    if (!(d > 1.0)) raise(ErrorCode::DomainError, "occupation window requires d > 1");
    if (t_max_grid.empty()) raise(ErrorCode::ConfigError, "empty horizon grid");
    std::vector<double> grid(t_max_grid.begin(), t_max_grid.end());
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (!(grid[k] > 0.0) || (k > 0 && grid[k] <= grid[k - 1]))
            raise(ErrorCode::ConfigError, "horizon grid must be positive and increasing");

    const HarmonicTable table(p);
    const double hx = table(x);
    const bool start_right = x > 1.0;
    const std::size_t K = grid.size();

    auto in_full = [d](double y) {
        const double ay = std::abs(y);
        return ay <= d && ay > 1.0;
    };
    auto in_same = [d, start_right](double y) {
        return start_right ? (y > 1.0 && y <= d) : (y < -1.0 && y >= -d);
    };

    // per horizon: sum(w*occ_full), sum^2, sum(w*occ_same), sum^2
    std::vector<double> sums(4 * K, 0.0);
    parallel_accumulate(
        n_paths, cfg.workers, 4 * K,
        [&](std::int64_t i, std::span<double> acc) {
            Philox rng(spec.with_stream_offset(static_cast<std::uint64_t>(i)));
            double occ_full = 0.0, occ_same = 0.0;
            double prev_t = 0.0, prev_x = x;
            double pos = x;
            bool alive = true;
            double done = 0.0;
            for (std::size_t k = 0; k < K && alive; ++k) {
                bool first = true;
                const PathOutcome o = run_path(
                    p, pos, Interval::unit(), grid[k] - done, 0.0, cfg.step, rng,
                    [&](double tt, double xx) {
                        if (first) {
                            first = false;
                            prev_t = tt;
                            prev_x = xx;
                            return;
                        }
                        if (in_full(prev_x)) occ_full += tt - prev_t;
                        if (in_same(prev_x)) occ_same += tt - prev_t;
                        prev_t = tt;
                        prev_x = xx;
                    });
                alive = o == PathOutcome::SurvivedHorizon;
                pos = prev_x;
                done = grid[k];
                if (alive) {
                    const double w = table(pos) / hx;
                    const double vf = occ_full * w;
                    const double vs = occ_same * w;
                    acc[4 * k] += vf;
                    acc[4 * k + 1] += vf * vf;
                    acc[4 * k + 2] += vs;
                    acc[4 * k + 3] += vs * vs;
                }
            }
        },
        sums);

    std::vector<OccupationPoint> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        out[k].t_max = grid[k];
        out[k].full = moments_to_estimate(sums[4 * k], sums[4 * k + 1], n_paths, spec);
        out[k].same_side = moments_to_estimate(sums[4 * k + 2], sums[4 * k + 3], n_paths, spec);
    }
    return out;
}

std::vector<TailRatioPoint> tail_ratio_estimate(const StabilityParams& p, double x1, double x2,
                                                std::span<const double> s_grid,
                                                std::int64_t n_paths, const McConfig& cfg,
                                                RngSpec spec) {
    if (p.alpha() < 1.0)
        raise(ErrorCode::RegimeError,
              "tail ratios need alpha >= 1; for alpha < 1 the avoidance event has positive mass");
    check_start(p, x1);
    check_start(p, x2);

    // common random numbers: both starting points replay the same streams
    std::vector<McEstimate> s1 = mc_survival_multi(p, x1, s_grid, n_paths, cfg, spec);
    std::vector<McEstimate> s2 = mc_survival_multi(p, x2, s_grid, n_paths, cfg, spec);

    std::vector<TailRatioPoint> out(s_grid.size());
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        out[k].s = s_grid[k];
        out[k].survival_x1 = s1[k];
        out[k].survival_x2 = s2[k];
        const double p1 = s1[k].mean, p2 = s2[k].mean;
        out[k].ratio = p2 > 0.0 ? p1 / p2 : std::numeric_limits<double>::quiet_NaN();
        if (p1 > 0.0 && p2 > 0.0) {
            const double r1 = s1[k].stderr_ / p1;
            const double r2 = s2[k].stderr_ / p2;
            out[k].stderr_ = out[k].ratio * std::sqrt(r1 * r1 + r2 * r2);
        }
    }
    return out;
}

PathSample rbz_transform(const StabilityParams& p, const PathSample& path) {
    const std::size_t n = path.positions.size();
    if (n == 0) raise(ErrorCode::DomainError, "empty path");
    for (double pos : path.positions)
        if (pos == 0.0) raise(ErrorCode::ZeroPosition, "path touches 0");

    PathSample out;
    out.outcome = path.outcome;
    out.entered_index = path.entered_index;
    out.times.resize(n);
    out.positions.resize(n);

    const double m2a = -2.0 * p.alpha();
    double clock = 0.0;
    double prev_rate = std::pow(std::abs(path.positions[0]), m2a);
    out.times[0] = 0.0;
    out.positions[0] = 1.0 / path.positions[0];
    for (std::size_t k = 1; k < n; ++k) {
        const double rate = std::pow(std::abs(path.positions[k]), m2a);
        clock += 0.5 * (prev_rate + rate) * (path.times[k] - path.times[k - 1]);
        prev_rate = rate;
        out.times[k] = clock;
        out.positions[k] = 1.0 / path.positions[k];
    }
    return out;
}

}  // namespace stable_avoid
