#pragma once

#include "stable_avoid/harmonic.hpp"
#include "stable_avoid/params.hpp"
#include "stable_avoid/quadrature.hpp"

namespace stable_avoid {

/// Density of the point of closest reach to 0 for alpha < 1, started at
/// x > 1, evaluated at z with 0 < |z| < x. For x < -1 use duality:
/// density at z under P^x = density at -z under P^{-x} with rho <-> rho_hat.
double closest_reach_density(const StabilityParams& p, double x, double z);

/// P^x(T_{[-1,1]} = infinity) computed by integrating the closest-reach
/// density over 1 < |z| < |x|: the independent oracle for harmonic::avoid_prob.
QuadratureResult avoid_prob_via_density(const StabilityParams& p, double x);

/// Total mass of the closest-reach density over 0 < |z| < |x| (equals 1).
QuadratureResult closest_reach_normalization(const StabilityParams& p, double x);

/// P^{circ,x}(T_{[-1,1]} = infinity) for alpha > 1 in the
/// pre-integration-by-parts form (two furthest-reach quadratures under
/// inversion); the independent route checked against (alpha-1) g(x).
QuadratureResult furthest_reach_avoid_quadrature(const StabilityParams& p, double x);

/// Potential density u^{[-1,1]}(x,y) of the killed process, alpha in (1,2).
///
/// Same-sign configurations only: 1 < x, y (any order, x != y) directly or
/// by time reversal, and x, y < -1 by reflection. Mixed signs raise
/// DomainError (formula not reproduced in scope).
double killed_potential_density(const StabilityParams& p, double x, double y);

/// int u^{[-1,1]}(x, y) dy over the same-sign part of [-d,d] \ [-1,1].
/// The opposite-sign part is omitted and flagged kRegionOmitted.
QuadratureResult killed_potential_mass(const StabilityParams& p, double x, double d);

/// u^{[-1,1]}(x,y) / h(x); converges as y -> infinity to kappa(alpha, rho)
/// independently of x.
double potential_limit_ratio(const StabilityParams& p, double x, double y);

/// Richardson extrapolation of the limit ratio in y^{alpha-2} from two
/// large ordinates (y1 < y2).
double potential_limit_ratio_extrapolated(const StabilityParams& p, double x, double y1, double y2);

/// kappa(alpha, rho) = c_{alpha rho} * 2 (1 - alpha rho_hat) *
/// int_1^inf psi_{alpha rho_hat}(v)/(v+1) dv  (the convergent tail term).
QuadratureResult kappa_tail_constant(const StabilityParams& p);

/// c_{alpha rho} = 2^{1-alpha} / (Gamma(alpha rho) Gamma(alpha rho_hat)).
double profeta_simon_constant(const StabilityParams& p);

}  // namespace stable_avoid
