#pragma once

#include <complex>

#include "stable_avoid/errors.hpp"

namespace stable_avoid {

/// Path behaviour regimes of the two-sided strictly stable process.
enum class Regime {
    Transient,        // alpha < 1: compact sets are eventually avoided
    CauchyRecurrent,  // alpha = 1: set-recurrent, points polar
    PointRecurrent,   // alpha > 1: hits points almost surely
};

const char* to_string(Regime r);

/// Validated (alpha, rho) pair for a two-sided strictly stable process.
///
/// alpha is the self-similarity index, rho = P^0(X_1 >= 0) the positivity
/// parameter and rho_hat = 1 - rho. Construction goes through
/// validate_params() which rejects the one-sided and asymmetric-Cauchy
/// corners; instances are immutable afterwards.
class StabilityParams {
  public:
    double alpha() const noexcept { return alpha_; }
    double rho() const noexcept { return rho_; }
    double rho_hat() const noexcept { return 1.0 - rho_; }

    Regime regime() const noexcept;

    /// Parameters of the reflected process -X (rho and rho_hat swap).
    StabilityParams dual() const noexcept { return StabilityParams(alpha_, 1.0 - rho_); }

    friend StabilityParams validate_params(double alpha, double rho);

  private:
    StabilityParams(double alpha, double rho) : alpha_(alpha), rho_(rho) {}

    double alpha_;
    double rho_;
};

/// Checks the admissible region and returns validated parameters.
///
/// Rejected corners: alpha outside (0,2); rho in {0,1} for alpha < 1
/// (subordinators); rho != 1/2 for alpha = 1 (only the symmetric Cauchy
/// case is covered); rho in {1/alpha, 1-1/alpha} for alpha > 1
/// (spectrally one-sided jumps).
StabilityParams validate_params(double alpha, double rho);

Regime regime_of(const StabilityParams& p);

/// Closed target interval [a, b], a < b.
class Interval {
  public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!(a < b)) raise(ErrorCode::DomainError, "interval requires a < b");
    }

    static Interval unit() { return Interval(-1.0, 1.0); }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double half_width() const noexcept { return 0.5 * (b_ - a_); }
    double center() const noexcept { return 0.5 * (a_ + b_); }

    bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

    /// Distance from x to the interval (0 inside).
    double distance(double x) const noexcept {
        if (x < a_) return a_ - x;
        if (x > b_) return x - b_;
        return 0.0;
    }

  private:
    double a_;
    double b_;
};

/// Affine map sending [a,b] to [-1,1]: x -> 2x/(b-a) - (b+a)/(b-a).
double affine_to_unit(const Interval& iv, double x);

/// Inverse of affine_to_unit.
double affine_from_unit(const Interval& iv, double u);

/// Characteristic exponent Psi with E[e^{i theta (X_1 - x)}] = e^{-Psi(theta)},
/// Psi(theta) = |theta|^alpha * exp(i pi alpha (1/2 - rho) sgn(theta)).
/// For alpha = 1, rho = 1/2 this is |theta|.
std::complex<double> char_exponent(const StabilityParams& p, double theta);

}  // namespace stable_avoid
