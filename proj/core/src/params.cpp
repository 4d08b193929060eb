#include "stable_avoid/params.hpp"

#include <cmath>

namespace stable_avoid {

namespace {
// Tolerance for user-supplied decimals like 0.5 entered as 0.49999999999.
constexpr double kRhoHalfTol = 1e-12;
}  // namespace

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::OneSidedExcluded: return "OneSidedExcluded";
        case ErrorCode::CauchyAsymmetric: return "CauchyAsymmetric";
        case ErrorCode::SpectrallyOneSided: return "SpectrallyOneSided";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::RegimeError: return "RegimeError";
        case ErrorCode::NonIntegrableEndpoint: return "NonIntegrableEndpoint";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::ZeroPosition: return "ZeroPosition";
        case ErrorCode::UnboundedFunctional: return "UnboundedFunctional";
        case ErrorCode::Degeneracy: return "Degeneracy";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Transient: return "Transient";
        case Regime::CauchyRecurrent: return "CauchyRecurrent";
        case Regime::PointRecurrent: return "PointRecurrent";
    }
    return "UnknownRegime";
}

StabilityParams validate_params(double alpha, double rho) {
    if (!std::isfinite(alpha) || !std::isfinite(rho))
        raise(ErrorCode::AlphaOutOfRange, "alpha and rho must be finite");
    if (!(alpha > 0.0 && alpha < 2.0))
        raise(ErrorCode::AlphaOutOfRange, "alpha must lie in (0,2)");

    if (alpha < 1.0) {
        if (!(rho > 0.0 && rho < 1.0))
            raise(ErrorCode::OneSidedExcluded,
                  "rho in {0,1} gives a (negative of a) subordinator for alpha < 1");
    } else if (alpha == 1.0) {
        if (std::abs(rho - 0.5) > kRhoHalfTol)
            raise(ErrorCode::CauchyAsymmetric, "alpha = 1 admits only the symmetric Cauchy rho = 1/2");
        rho = 0.5;
    } else {
        const double lo = 1.0 - 1.0 / alpha;
        const double hi = 1.0 / alpha;
        if (!(rho > lo && rho < hi))
            raise(ErrorCode::SpectrallyOneSided,
                  "rho in {1/alpha, 1-1/alpha} (or beyond) gives one-sided jumps for alpha > 1");
    }
    return StabilityParams(alpha, rho);
}

Regime StabilityParams::regime() const noexcept {
    if (alpha_ < 1.0) return Regime::Transient;
    if (alpha_ == 1.0) return Regime::CauchyRecurrent;
    return Regime::PointRecurrent;
}

Regime regime_of(const StabilityParams& p) { return p.regime(); }

double affine_to_unit(const Interval& iv, double x) {
    return 2.0 * x / (iv.b() - iv.a()) - (iv.b() + iv.a()) / (iv.b() - iv.a());
}

double affine_from_unit(const Interval& iv, double u) {
    return iv.center() + iv.half_width() * u;
}

std::complex<double> char_exponent(const StabilityParams& p, double theta) {
    if (theta == 0.0) return {0.0, 0.0};
    const double sgn = theta > 0.0 ? 1.0 : -1.0;
    const double modulus = std::pow(std::abs(theta), p.alpha());
    const double phase = M_PI * p.alpha() * (0.5 - p.rho()) * sgn;
    return std::polar(modulus, phase);
}

}  // namespace stable_avoid
