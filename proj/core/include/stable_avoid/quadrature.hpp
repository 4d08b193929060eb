#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stable_avoid/errors.hpp"

namespace stable_avoid {

namespace quad_flags {
constexpr unsigned kNearBoundaryZero = 1u << 0;  // result clamped to 0 below quadrature noise
constexpr unsigned kRegionOmitted = 1u << 1;     // part of the requested region not integrated
}  // namespace quad_flags

/// Value + error carrier for every integral computed by the library.
struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = true;
    unsigned flags = 0;
};

/// Integrand with declared endpoint power behaviour.
///
/// The evaluator is called as f(z, dl, du) where dl = z - lower and
/// du = upper - z are computed without cancellation, so integrands like
/// (z-1)^{e} stay accurate at nodes within 1e-300 of an endpoint.
struct SingularIntegrand {
    std::function<double(double z, double dl, double du)> f;
    double lower_exponent = 0.0;  // f ~ dl^e near lower; requires e > -1
    double upper_exponent = 0.0;
};

/// Tanh-sinh (double-exponential) quadrature on (lower, upper).
///
/// Level-doubling until |I_n - I_{n-1}| <= max(rel_tol*|I_n|, 1e-14) or the
/// node budget is exhausted (result flagged converged = false, best effort).
/// Endpoint power singularities with exponent > -1 are integrated at full
/// declared accuracy by construction of the node map.
QuadratureResult integrate_singular(const SingularIntegrand& f, double lower, double upper,
                                    double rel_tol);

/// Convenience overload for integrands without endpoint bookkeeping.
QuadratureResult integrate_singular(const std::function<double(double)>& f, double lower,
                                    double upper, double rel_tol, double lower_exponent = 0.0,
                                    double upper_exponent = 0.0);

/// Gauss-Legendre nodes/weights on [-1,1], cached per order.
/// Used for smooth sub-segments where tanh-sinh node clustering is wasted.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

/// Fixed-order Gauss-Legendre on [a,b] for smooth integrands.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int order);

}  // namespace stable_avoid
