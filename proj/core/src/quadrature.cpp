#include "stable_avoid/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace stable_avoid {

namespace {

struct NodeSum {
    double sum = 0.0;
    std::int64_t evals = 0;
};

// One tanh-sinh sweep at mesh h over k of the requested parity
// (stride 2 starting at k0). Node t = k*h, abscissa x = c + hw*tanh(u),
// u = (pi/2) sinh(t). Terms are accumulated until they fall below
// tail_cut or the weight underflows.
NodeSum sweep(const SingularIntegrand& fi, double c, double hw, double h, int k0, int stride,
              double tail_cut) {
    NodeSum out;
    int dead = 0;
    for (int k = k0;; k += stride) {
        const double t = k * h;
        const double u = 0.5 * M_PI * std::sinh(t);
        const double au = std::abs(u);
        // 1 -/+ tanh(|u|) without cancellation
        const double one_minus = 2.0 / (1.0 + std::exp(2.0 * au));
        const double one_plus = 2.0 - one_minus;
        const double dxdt = 0.5 * M_PI * std::cosh(t) * one_minus * one_plus;
        const double w = hw * dxdt;
        if (w == 0.0 || !std::isfinite(w)) break;

        double term = 0.0;
        // +t node
        {
            const double dl = (u >= 0.0 ? one_plus : one_minus) * hw;
            const double du = (u >= 0.0 ? one_minus : one_plus) * hw;
            if (dl > 0.0 && du > 0.0) {
                const double x = c + hw * (u >= 0.0 ? 1.0 - one_minus : one_minus - 1.0);
                term += w * fi.f(x, dl, du);
                ++out.evals;
            }
        }
        // -t node (skip duplicate at k = 0)
        if (k != 0) {
            const double dl = (u >= 0.0 ? one_minus : one_plus) * hw;
            const double du = (u >= 0.0 ? one_plus : one_minus) * hw;
            if (dl > 0.0 && du > 0.0) {
                const double x = c - hw * (u >= 0.0 ? 1.0 - one_minus : one_minus - 1.0);
                term += w * fi.f(x, dl, du);
                ++out.evals;
            }
        }
        out.sum += term;
        if (t > 3.0 && std::abs(term) < tail_cut) {
            if (++dead >= 4) break;
        } else {
            dead = 0;
        }
        if (t > 12.0) break;  // weights are < 1e-300 long before this
    }
    return out;
}

}  // namespace

QuadratureResult integrate_singular(const SingularIntegrand& fi, double lower, double upper,
                                    double rel_tol) {
    if (fi.lower_exponent <= -1.0 || fi.upper_exponent <= -1.0)
        raise(ErrorCode::NonIntegrableEndpoint, "declared endpoint exponent <= -1");
    if (lower > upper) raise(ErrorCode::DomainError, "integrate_singular requires lower <= upper");

    QuadratureResult res;
    if (lower == upper) {
        res.evaluations = 1;
        return res;
    }

    const double c = 0.5 * (lower + upper);
    const double hw = 0.5 * (upper - lower);
    constexpr int kMaxLevel = 10;

    double h = 1.0;
    NodeSum s0 = sweep(fi, c, hw, h, 0, 1, 0.0);
    double integral = h * s0.sum;
    res.evaluations = s0.evals;

    double prev = integral;
    for (int level = 1; level <= kMaxLevel; ++level) {
        h *= 0.5;
        const double scale = std::abs(integral) + 1e-300;
        const NodeSum s = sweep(fi, c, hw, h, 1, 2, 1e-18 * scale / h);
        res.evaluations += s.evals;
        integral = 0.5 * integral + h * s.sum;

        const double diff = std::abs(integral - prev);
        res.err_estimate = diff;
        const double tol = std::max(rel_tol * std::abs(integral), 1e-14);
        if (level >= 2 && diff <= tol) {
            res.value = integral;
            res.converged = true;
            return res;
        }
        prev = integral;
    }
    res.value = integral;
    res.converged = false;
    return res;
}

QuadratureResult integrate_singular(const std::function<double(double)>& f, double lower,
                                    double upper, double rel_tol, double lower_exponent,
                                    double upper_exponent) {
    SingularIntegrand fi;
    fi.f = [&f](double z, double, double) { return f(z); };
    fi.lower_exponent = lower_exponent;
    fi.upper_exponent = upper_exponent;
    return integrate_singular(fi, lower, upper, rel_tol);
}

const GaussLegendre& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[i] = w;
        gl.weights[order - 1 - i] = w;
    }
    return cache.emplace(order, std::move(gl)).first->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussLegendre& gl = gauss_legendre(order);
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += gl.weights[i] * f(c + hw * gl.nodes[i]);
    return hw * s;
}

}  // namespace stable_avoid
