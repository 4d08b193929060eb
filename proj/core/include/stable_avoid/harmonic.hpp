#pragma once

#include <memory>
#include <vector>

#include "stable_avoid/params.hpp"
#include "stable_avoid/quadrature.hpp"

namespace stable_avoid {

/// Selects psi_{alpha rho} vs psi_{alpha rho_hat}.
enum class PsiBranch { Rho, RhoHat };

/// psi_{alpha rho}(z) = (z-1)^{alpha rho_hat - 1} (z+1)^{alpha rho - 1}, z > 1.
/// The RhoHat branch swaps rho and rho_hat.
double psi(const StabilityParams& p, PsiBranch branch, double z);

/// Endpoint exponent e of the branch: psi ~ (z-1)^{e-1} near z = 1
/// (e = alpha*rho_hat on the Rho branch, alpha*rho on RhoHat).
double psi_singularity_order(const StabilityParams& p, PsiBranch branch);

/// Evaluation routes for the psi primitive; Auto picks PowerSubstitution
/// when the endpoint exponent is harsh (e < 0.3) and tanh-sinh otherwise.
enum class PsiRoute { Auto, TanhSinh, PowerSubstitution };

/// int_from^to psi(z) dz with 1 <= from < to. Handles 'to' up to ~1e12
/// directly (split + inversion beyond z = 2) and switches to a two-term
/// asymptotic tail beyond z = 1e8.
QuadratureResult integral_psi(const StabilityParams& p, PsiBranch branch, double from, double to,
                              double rel_tol, PsiRoute route = PsiRoute::Auto);

/// Stable evaluation of w^{alpha-1} * int_1^z psi, needed by the killed
/// potential density where w -> 0 while z = O(1/w) -> infinity.
double scaled_integral_psi(const StabilityParams& p, PsiBranch branch, double w, double z);

/// The harmonic function of the process killed on entering [-1,1]:
/// h(x) = int_1^x psi_{alpha rho}  (x > 1),  int_1^{|x|} psi_{alpha rho_hat}  (x < -1).
/// Inputs with 1 < |x| < 1 + 1e-12 return 0 flagged kNearBoundaryZero.
QuadratureResult h_unit(const StabilityParams& p, double x);

/// Closed form for alpha = 1: log(|x| + sqrt(x^2 - 1)), |x| > 1.
double h_cauchy_closed(double x);

/// h for an arbitrary interval via the affine reduction to [-1,1].
QuadratureResult h_interval(const StabilityParams& p, const Interval& iv, double x);

/// g(x) = |x|^{1-alpha} h(x), harmonic for the avoid-zero transform killed
/// on [-1,1]; alpha > 1 only.
QuadratureResult g_circ(const StabilityParams& p, double x);

/// Normalising constant C = 2^{1-alpha} Gamma(1-alpha rho) /
/// (Gamma(1-alpha) Gamma(alpha rho_hat)) with C*h = P^x(T_{[-1,1]} = inf);
/// alpha < 1 only.
double avoid_constant(const StabilityParams& p);

/// P^x(T_{[-1,1]} = infinity) = C * h(x) for alpha < 1, |x| > 1.
double avoid_prob(const StabilityParams& p, double x);

/// P^{circ,x}(T_{[-1,1]} = infinity) = (alpha-1) g(x) for alpha > 1, |x| > 1
/// (the process conditioned to avoid the origin).
double circ_avoid_prob(const StabilityParams& p, double x);

/// Ladder potential of the Cauchy-case MAP at log x:
/// int_0^{log x} [(1-e^-z)^{-1/2}(1+e^-z)^{1/2} + (1-e^-z)^{1/2}(1+e^-z)^{-1/2}] dz,
/// equal to 2 h(x) for x > 1.
QuadratureResult ladder_potential_cauchy(double x);

/// Cached piecewise-cubic evaluator of h_unit for Monte Carlo weights.
///
/// Built once per (alpha, rho) on a log grid in x - 1 with exact-derivative
/// Hermite interpolation (~1e-9 relative); immutable and safe to share
/// across threads.
class HarmonicTable {
  public:
    explicit HarmonicTable(const StabilityParams& p);

    /// h_unit(x) for |x| > 1. Below the table range falls back to the
    /// leading-order head, above to the asymptotic tail.
    double operator()(double x) const;

    const StabilityParams& params() const noexcept { return params_; }

  private:
    struct BranchTable {
        std::vector<double> log_xm1;   // grid in log(x-1), uniform
        std::vector<double> value;     // h at grid nodes
        std::vector<double> dvalue;    // dh/d log(x-1) at grid nodes
        double step = 0.0;
    };

    double eval_branch(const BranchTable& t, PsiBranch branch, double x) const;

    StabilityParams params_;
    BranchTable rho_;
    BranchTable rho_hat_;
};

}  // namespace stable_avoid
