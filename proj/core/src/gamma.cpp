#include "stable_avoid/gamma.hpp"

#include <cmath>
#include <limits>

namespace stable_avoid {

namespace {

// Godfrey's coefficients for g = 7, n = 9.
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_sum(double x) {
    double s = kCoef[0];
    for (int i = 1; i < 9; ++i) s += kCoef[i] / (x + i);
    return s;
}

}  // namespace

double gamma_fn(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0 && x == std::floor(x)) return std::numeric_limits<double>::quiet_NaN();

    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + kG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_gamma(double x) {
    if (x < 0.5) return std::log(M_PI / std::abs(std::sin(M_PI * x))) - log_gamma(1.0 - x);
    const double z = x - 1.0;
    const double t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

}  // namespace stable_avoid
