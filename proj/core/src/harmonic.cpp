#include "stable_avoid/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "stable_avoid/gamma.hpp"

namespace stable_avoid {

namespace {

// Beyond this the two-term asymptotic tail of int psi is below 1e-12 absolute.
constexpr double kAsymptoticZ = 1e8;
// Inversion v -> 1/v takes over beyond here (keeps tanh-sinh node ranges sane).
constexpr double kSplitZ = 2.0;

struct PsiExp {
    double at_one;   // exponent e: psi ~ (z-1)^{e-1} near 1
    double at_minus; // companion q with e + q = alpha
};

PsiExp exponents(const StabilityParams& p, PsiBranch branch) {
    const double e = branch == PsiBranch::Rho ? p.alpha() * p.rho_hat() : p.alpha() * p.rho();
    return {e, p.alpha() - e};
}

// int_Z^{z} v^{pw} dv
double power_primitive(double lo, double hi, double pw) {
    if (pw == -1.0) return std::log(hi / lo);
    return (std::pow(hi, pw + 1.0) - std::pow(lo, pw + 1.0)) / (pw + 1.0);
}

// int_Z^{z} psi(v) dv for Z >= kAsymptoticZ via the expansion
// psi(v) = v^{alpha-2} (1 + c1/v + O(v^-2)), c1 = q - e.
double tail_integral(const PsiExp& ex, double alpha, double lo, double hi) {
    const double c1 = ex.at_minus - ex.at_one;
    return power_primitive(lo, hi, alpha - 2.0) + c1 * power_primitive(lo, hi, alpha - 3.0);
}

QuadratureResult psi_leg_direct(const PsiExp& ex, double from, double to, double rel_tol) {
    SingularIntegrand fi;
    const double em1 = ex.at_one - 1.0;
    const double qm1 = ex.at_minus - 1.0;
    if (from == 1.0) {
        fi.f = [em1, qm1](double z, double dl, double) {
            return std::pow(dl, em1) * std::pow(z + 1.0, qm1);
        };
        fi.lower_exponent = em1;
    } else {
        fi.f = [em1, qm1](double z, double, double) {
            return std::pow(z - 1.0, em1) * std::pow(z + 1.0, qm1);
        };
    }
    return integrate_singular(fi, from, to, rel_tol);
}

QuadratureResult psi_leg_substituted(const PsiExp& ex, double from, double to, double rel_tol) {
    // s = (z-1)^e removes the endpoint singularity:
    // int psi dz = (1/e) int (s^{1/e} + 2)^{q-1} ds
    const double e = ex.at_one;
    const double qm1 = ex.at_minus - 1.0;
    const double s_lo = from == 1.0 ? 0.0 : std::pow(from - 1.0, e);
    const double s_hi = std::pow(to - 1.0, e);
    const double inv_e = 1.0 / e;
    QuadratureResult r = integrate_singular(
        [inv_e, qm1](double s) { return std::pow(std::pow(s, inv_e) + 2.0, qm1); }, s_lo, s_hi,
        rel_tol);
    r.value /= e;
    r.err_estimate /= e;
    return r;
}

// int_A^B psi(v) dv for 2 <= A < B via t = 1/v:
// integrand (1-t)^{e-1} (1+t)^{q-1} t^{-alpha} on [1/B, 1/A].
QuadratureResult psi_leg_inverted(const PsiExp& ex, double alpha, double A, double B,
                                  double rel_tol) {
    const double em1 = ex.at_one - 1.0;
    const double qm1 = ex.at_minus - 1.0;
    QuadratureResult r = integrate_singular(
        [em1, qm1, alpha](double t) {
            return std::pow(1.0 - t, em1) * std::pow(1.0 + t, qm1) * std::pow(t, -alpha);
        },
        1.0 / B, 1.0 / A, rel_tol);
    return r;
}

void accumulate(QuadratureResult& acc, const QuadratureResult& leg) {
    acc.value += leg.value;
    acc.err_estimate += leg.err_estimate;
    acc.evaluations += leg.evaluations;
    acc.converged = acc.converged && leg.converged;
    acc.flags |= leg.flags;
}

}  // namespace

double psi(const StabilityParams& p, PsiBranch branch, double z) {
    if (!(z > 1.0)) raise(ErrorCode::DomainError, "psi requires z > 1");
    const PsiExp ex = exponents(p, branch);
    return std::pow(z - 1.0, ex.at_one - 1.0) * std::pow(z + 1.0, ex.at_minus - 1.0);
}

double psi_singularity_order(const StabilityParams& p, PsiBranch branch) {
    return exponents(p, branch).at_one;
}

QuadratureResult integral_psi(const StabilityParams& p, PsiBranch branch, double from, double to,
                              double rel_tol, PsiRoute route) {
    if (!(from >= 1.0) || !(to >= from) || !std::isfinite(to))
        raise(ErrorCode::DomainError, "integral_psi requires 1 <= from <= to < inf");

    const PsiExp ex = exponents(p, branch);
    QuadratureResult acc;
    acc.evaluations = 1;
    if (to == from) return acc;

    if (route == PsiRoute::Auto)
        route = (ex.at_one < 0.3 && from == 1.0) ? PsiRoute::PowerSubstitution : PsiRoute::TanhSinh;

    // Leg over [from, min(to, 2)] carries the z = 1 singularity.
    if (from < kSplitZ) {
        const double leg_to = std::min(to, kSplitZ);
        accumulate(acc, route == PsiRoute::PowerSubstitution
                            ? psi_leg_substituted(ex, from, leg_to, rel_tol)
                            : psi_leg_direct(ex, from, leg_to, rel_tol));
    }
    // Leg over [max(from, 2), min(to, 1e8)] by inversion.
    const double mid_from = std::max(from, kSplitZ);
    const double mid_to = std::min(to, kAsymptoticZ);
    if (mid_to > mid_from) accumulate(acc, psi_leg_inverted(ex, p.alpha(), mid_from, mid_to, rel_tol));
    // Analytic tail.
    if (to > kAsymptoticZ) {
        const double lo = std::max(from, kAsymptoticZ);
        acc.value += tail_integral(ex, p.alpha(), lo, to);
    }
    return acc;
}

double scaled_integral_psi(const StabilityParams& p, PsiBranch branch, double w, double z) {
    if (!(p.alpha() > 1.0)) raise(ErrorCode::RegimeError, "scaled_integral_psi requires alpha > 1");
    if (!(w > 0.0) || !(z >= 1.0)) raise(ErrorCode::DomainError, "scaled_integral_psi: w > 0, z >= 1");
    const double am1 = p.alpha() - 1.0;
    if (z <= kAsymptoticZ)
        return std::pow(w, am1) * integral_psi(p, branch, 1.0, z, 1e-11).value;

    const PsiExp ex = exponents(p, branch);
    const double wz = w * z;
    const double head = integral_psi(p, branch, 1.0, kAsymptoticZ, 1e-11).value;
    const double c1 = ex.at_minus - ex.at_one;
    // w^{a-1} * [head + (z^{a-1} - Z^{a-1})/(a-1) + c1 (z^{a-2} - Z^{a-2})/(a-2)]
    double out = std::pow(w, am1) * (head - std::pow(kAsymptoticZ, am1) / am1 -
                                     c1 * std::pow(kAsymptoticZ, p.alpha() - 2.0) / (p.alpha() - 2.0));
    out += std::pow(wz, am1) / am1;
    out += c1 * std::pow(wz, p.alpha() - 2.0) * w / (p.alpha() - 2.0);
    return out;
}

QuadratureResult h_unit(const StabilityParams& p, double x) {
    const double ax = std::abs(x);
    if (!(ax > 1.0)) raise(ErrorCode::DomainError, "h_unit requires |x| > 1");
    if (ax < 1.0 + 1e-12) {
        QuadratureResult r;
        r.evaluations = 1;
        r.flags |= quad_flags::kNearBoundaryZero;
        return r;  // integral provably below representable noise
    }
    const PsiBranch branch = x > 0.0 ? PsiBranch::Rho : PsiBranch::RhoHat;
    return integral_psi(p, branch, 1.0, ax, 1e-12);
}

double h_cauchy_closed(double x) {
    const double ax = std::abs(x);
    if (!(ax > 1.0)) raise(ErrorCode::DomainError, "h_cauchy_closed requires |x| > 1");
    return std::acosh(ax);
}

QuadratureResult h_interval(const StabilityParams& p, const Interval& iv, double x) {
    const double u = affine_to_unit(iv, x);
    if (std::abs(u) <= 1.0) raise(ErrorCode::DomainError, "x must lie strictly outside [a,b]");
    return h_unit(p, u);
}

QuadratureResult g_circ(const StabilityParams& p, double x) {
    if (!(p.alpha() > 1.0)) raise(ErrorCode::RegimeError, "g_circ requires alpha > 1");
    QuadratureResult r = h_unit(p, x);
    const double scale = std::pow(std::abs(x), 1.0 - p.alpha());
    r.value *= scale;
    r.err_estimate *= scale;
    return r;
}

double avoid_constant(const StabilityParams& p) {
    if (!(p.alpha() < 1.0)) raise(ErrorCode::RegimeError, "avoid_constant requires alpha < 1");
    const double a = p.alpha();
    return std::pow(2.0, 1.0 - a) * gamma_fn(1.0 - a * p.rho()) /
           (gamma_fn(1.0 - a) * gamma_fn(a * p.rho_hat()));
}

double avoid_prob(const StabilityParams& p, double x) {
    return avoid_constant(p) * h_unit(p, x).value;
}

double circ_avoid_prob(const StabilityParams& p, double x) {
    return (p.alpha() - 1.0) * g_circ(p, x).value;
}

QuadratureResult ladder_potential_cauchy(double x) {
    if (!(x > 1.0)) raise(ErrorCode::DomainError, "ladder_potential_cauchy requires x > 1");
    const double L = std::log(x);
    SingularIntegrand fi;
    fi.f = [](double z, double, double) {
        const double m = -std::expm1(-z);  // 1 - e^{-z}
        const double q = 1.0 + std::exp(-z);
        return std::sqrt(q / m) + std::sqrt(m / q);
    };
    fi.lower_exponent = -0.5;
    return integrate_singular(fi, 0.0, L, 1e-12);
}

// ---------------------------------------------------------------------------
// HarmonicTable

namespace {
constexpr double kTabLogMin = -28.0;  // x - 1 from ~6.9e-13
constexpr double kTabLogMax = 28.0;   // ... to ~1.45e12
constexpr int kTabPoints = 1401;

// Leading behaviour of int_1^{1+d} psi: 2^{q-1} d^e / e * (1 + (q-1) e d / (2(e+1))).
double head_integral(const PsiExp& ex, double d) {
    const double e = ex.at_one;
    const double qm1 = ex.at_minus - 1.0;
    return std::pow(2.0, qm1) * std::pow(d, e) / e * (1.0 + qm1 * e * d / (2.0 * (e + 1.0)));
}
}  // namespace

HarmonicTable::HarmonicTable(const StabilityParams& p) : params_(p) {
    for (PsiBranch branch : {PsiBranch::Rho, PsiBranch::RhoHat}) {
        BranchTable& t = branch == PsiBranch::Rho ? rho_ : rho_hat_;
        const PsiExp ex = exponents(p, branch);
        const double em1 = ex.at_one - 1.0;
        const double qm1 = ex.at_minus - 1.0;
        // d H / d s at s = log(x-1): psi(1 + e^s) e^s
        auto dh_ds = [em1, qm1](double s) {
            const double d = std::exp(s);
            return std::pow(d, em1 + 1.0) * std::pow(2.0 + d, qm1);
        };

        t.log_xm1.resize(kTabPoints);
        t.value.resize(kTabPoints);
        t.dvalue.resize(kTabPoints);
        t.step = (kTabLogMax - kTabLogMin) / (kTabPoints - 1);

        double acc = head_integral(ex, std::exp(kTabLogMin));
        t.log_xm1[0] = kTabLogMin;
        t.value[0] = acc;
        t.dvalue[0] = dh_ds(kTabLogMin);
        for (int k = 1; k < kTabPoints; ++k) {
            const double s0 = kTabLogMin + (k - 1) * t.step;
            const double s1 = kTabLogMin + k * t.step;
            acc += integrate_gl(dh_ds, s0, s1, 16);
            t.log_xm1[k] = s1;
            t.value[k] = acc;
            t.dvalue[k] = dh_ds(s1);
        }
    }
}

double HarmonicTable::eval_branch(const BranchTable& t, PsiBranch branch, double x) const {
    const PsiExp ex = exponents(params_, branch);
    const double d = x - 1.0;
    const double s = std::log(d);
    if (s <= kTabLogMin) return head_integral(ex, d);
    if (s >= kTabLogMax)
        return t.value.back() + tail_integral(ex, params_.alpha(), 1.0 + std::exp(kTabLogMax), x);

    const int k = std::min<int>(static_cast<int>((s - kTabLogMin) / t.step), kTabPoints - 2);
    const double th = (s - t.log_xm1[k]) / t.step;
    const double th2 = th * th;
    const double th3 = th2 * th;
    const double h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
    const double h10 = th3 - 2.0 * th2 + th;
    const double h01 = -2.0 * th3 + 3.0 * th2;
    const double h11 = th3 - th2;
    return h00 * t.value[k] + h10 * t.step * t.dvalue[k] + h01 * t.value[k + 1] +
           h11 * t.step * t.dvalue[k + 1];
}

double HarmonicTable::operator()(double x) const {
    if (x > 1.0) return eval_branch(rho_, PsiBranch::Rho, x);
    if (x < -1.0) return eval_branch(rho_hat_, PsiBranch::RhoHat, -x);
    raise(ErrorCode::DomainError, "HarmonicTable requires |x| > 1");
}

}  // namespace stable_avoid
