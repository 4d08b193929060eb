#include "stable_avoid/densities.hpp"

#include <cmath>

#include "stable_avoid/gamma.hpp"

namespace stable_avoid {

namespace {

void check_transient(const StabilityParams& p, const char* op) {
    if (!(p.alpha() < 1.0)) raise(ErrorCode::RegimeError, std::string(op) + " requires alpha < 1");
}

void check_point_recurrent(const StabilityParams& p, const char* op) {
    if (!(p.alpha() > 1.0 && p.alpha() < 2.0))
        raise(ErrorCode::RegimeError, std::string(op) + " requires alpha in (1,2)");
}

double closest_reach_prefactor(const StabilityParams& p) {
    const double a = p.alpha();
    return gamma_fn(1.0 - a * p.rho()) / (gamma_fn(1.0 - a) * gamma_fn(a * p.rho_hat()));
}

PsiBranch swap(PsiBranch b) { return b == PsiBranch::Rho ? PsiBranch::RhoHat : PsiBranch::Rho; }

double intpsi(const StabilityParams& p, PsiBranch b, double to) {
    return integral_psi(p, b, 1.0, to, 1e-11).value;
}

// u^{[-1,1]} in the canonical configuration 1 < X < Y with effective main
// branch b. intpsi_X = int_1^X psi_b precomputed by hot-loop callers.
double ps_density_ordered(const StabilityParams& p, PsiBranch b, double X, double Y,
                          double intpsi_X) {
    const double a = p.alpha();
    const double c = profeta_simon_constant(p);
    const double w = Y - X;
    const double z = (X * Y - 1.0) / w;
    const double lead = scaled_integral_psi(p, b, w, z);
    return c * (lead - (a - 1.0) * intpsi(p, swap(b), Y) * intpsi_X);
}

}  // namespace

double profeta_simon_constant(const StabilityParams& p) {
    check_point_recurrent(p, "profeta_simon_constant");
    const double a = p.alpha();
    return std::pow(2.0, 1.0 - a) / (gamma_fn(a * p.rho()) * gamma_fn(a * p.rho_hat()));
}

double closest_reach_density(const StabilityParams& p, double x, double z) {
    check_transient(p, "closest_reach_density");
    if (!(x > 1.0)) raise(ErrorCode::DomainError, "closest_reach_density requires x > 1");
    if (!(std::abs(z) < x) || z == 0.0)
        raise(ErrorCode::DomainError, "closest_reach_density requires 0 < |z| < x");
    const double a = p.alpha();
    const double e1 = a * p.rho_hat() - 1.0;
    const double e2 = a * p.rho() - 1.0;
    const double K = closest_reach_prefactor(p);
    if (z > 0.0)
        return K * (x + z) * std::pow(2.0 * z, -a) * std::pow(x - z, e1) * std::pow(x + z, e2);
    return K * (x + z) * std::pow(-2.0 * z, -a) * std::pow(x + z, e1) * std::pow(x - z, e2);
}

QuadratureResult avoid_prob_via_density(const StabilityParams& p, double x) {
    check_transient(p, "avoid_prob_via_density");
    if (!(std::abs(x) > 1.0)) raise(ErrorCode::DomainError, "requires |x| > 1");
    // duality: start from x < -1 is the mirror problem under rho <-> rho_hat
    const StabilityParams q = x > 0.0 ? p : p.dual();
    const double X = std::abs(x);

    const double a = q.alpha();
    const double e1 = a * q.rho_hat() - 1.0;
    const double e2 = a * q.rho() - 1.0;
    const double K = closest_reach_prefactor(q);

    // z in (1, X): closest reach on the starting side, singular at z = X
    SingularIntegrand pos;
    pos.f = [K, a, e1, e2, X](double z, double, double du) {
        return K * (X + z) * std::pow(2.0 * z, -a) * std::pow(du, e1) * std::pow(X + z, e2);
    };
    pos.upper_exponent = e1;
    QuadratureResult rp = integrate_singular(pos, 1.0, X, 1e-10);

    // z in (-X, -1), written over w = -z in (1, X); vanishes at w = X
    SingularIntegrand neg;
    neg.f = [K, a, e1, e2, X](double w, double, double du) {
        return K * std::pow(2.0 * w, -a) * std::pow(du, e1 + 1.0) * std::pow(X + w, e2);
    };
    QuadratureResult rn = integrate_singular(neg, 1.0, X, 1e-10);

    rp.value += rn.value;
    rp.err_estimate += rn.err_estimate;
    rp.evaluations += rn.evaluations;
    rp.converged = rp.converged && rn.converged;
    return rp;
}

QuadratureResult closest_reach_normalization(const StabilityParams& p, double x) {
    check_transient(p, "closest_reach_normalization");
    if (!(x > 1.0)) raise(ErrorCode::DomainError, "requires x > 1");
    const double a = p.alpha();
    const double e1 = a * p.rho_hat() - 1.0;
    const double e2 = a * p.rho() - 1.0;
    const double K = closest_reach_prefactor(p);

    SingularIntegrand pos;
    pos.f = [K, a, e1, e2, x](double z, double dl, double du) {
        return K * (x + z) * std::pow(2.0 * dl, -a) * std::pow(du, e1) * std::pow(x + z, e2);
    };
    pos.lower_exponent = -a;
    pos.upper_exponent = e1;
    QuadratureResult rp = integrate_singular(pos, 0.0, x, 1e-9);

    SingularIntegrand neg;
    neg.f = [K, a, e1, e2, x](double w, double dl, double du) {
        return K * std::pow(2.0 * dl, -a) * std::pow(du, e1 + 1.0) * std::pow(x + w, e2);
    };
    neg.lower_exponent = -a;
    QuadratureResult rn = integrate_singular(neg, 0.0, x, 1e-9);

    rp.value += rn.value;
    rp.err_estimate += rn.err_estimate;
    rp.evaluations += rn.evaluations;
    rp.converged = rp.converged && rn.converged;
    return rp;
}

QuadratureResult furthest_reach_avoid_quadrature(const StabilityParams& p, double x) {
    check_point_recurrent(p, "furthest_reach_avoid_quadrature");
    if (!(std::abs(x) > 1.0)) raise(ErrorCode::DomainError, "requires |x| > 1");
    const StabilityParams q = x > 0.0 ? p : p.dual();
    const double X = std::abs(x);

    const double a = q.alpha();
    const double e = psi_singularity_order(q, PsiBranch::Rho);
    const double em1 = e - 1.0;
    const double qm1 = a - e - 1.0;

    // (a-1)/2 * int_1^X u^-a [ (u+1) psi + (u-1) psi - 2(a-1) int_1^u psi ] du,
    // the sum of the two furthest-reach summands under spatial inversion.
    SingularIntegrand fi;
    fi.f = [&q, a, em1, qm1](double u, double dl, double) {
        const double psi_u = std::pow(dl, em1) * std::pow(u + 1.0, qm1);
        const double inner = integral_psi(q, PsiBranch::Rho, 1.0, u, 1e-11).value;
        return std::pow(u, -a) * ((u + 1.0) * psi_u + dl * psi_u - 2.0 * (a - 1.0) * inner);
    };
    fi.lower_exponent = em1;
    QuadratureResult r = integrate_singular(fi, 1.0, X, 1e-9);
    r.value *= (a - 1.0) / 2.0;
    r.err_estimate *= (a - 1.0) / 2.0;
    return r;
}

double killed_potential_density(const StabilityParams& p, double x, double y) {
    check_point_recurrent(p, "killed_potential_density");
    if (x == y) raise(ErrorCode::DomainError, "killed_potential_density requires x != y");

    PsiBranch b = PsiBranch::Rho;
    double X = x, Y = y;
    if (X < -1.0 && Y < -1.0) {  // reflect through 0, swapping rho and rho_hat
        X = -X;
        Y = -Y;
        b = swap(b);
    }
    if (!(X > 1.0 && Y > 1.0))
        raise(ErrorCode::DomainError,
              "killed_potential_density supports same-sign x, y outside [-1,1] only");
    if (X > Y) {  // time reversal: u(x,y) of X equals u(y,x) of the dual
        std::swap(X, Y);
        b = swap(b);
    }
    return ps_density_ordered(p, b, X, Y, intpsi(p, b, X));
}

QuadratureResult killed_potential_mass(const StabilityParams& p, double x, double d) {
    check_point_recurrent(p, "killed_potential_mass");
    if (!(std::abs(x) > 1.0) || !(d > 1.0))
        raise(ErrorCode::DomainError, "killed_potential_mass requires |x| > 1 and d > 1");

    const PsiBranch b = x > 0.0 ? PsiBranch::Rho : PsiBranch::RhoHat;
    const double X = std::abs(x);
    const double ipx_b = intpsi(p, b, X);

    QuadratureResult acc;
    acc.evaluations = 1;
    acc.flags |= quad_flags::kRegionOmitted;  // opposite-sign part of [-d,d] not covered

    // y below X: time-reversed configuration (y, X) with main branch swapped
    auto below = [&](double y) { return ps_density_ordered(p, swap(b), y, X, intpsi(p, swap(b), y)); };
    // y above X: canonical configuration
    auto above = [&](double y) { return ps_density_ordered(p, b, X, y, ipx_b); };

    auto add = [&acc](const QuadratureResult& leg) {
        acc.value += leg.value;
        acc.err_estimate += leg.err_estimate;
        acc.evaluations += leg.evaluations;
        acc.converged = acc.converged && leg.converged;
    };

    if (d <= X) {
        add(integrate_singular(below, 1.0, d, 1e-8));
    } else {
        add(integrate_singular(below, 1.0, X, 1e-8));
        add(integrate_singular(above, X, d, 1e-8));
    }
    return acc;
}

double potential_limit_ratio(const StabilityParams& p, double x, double y) {
    check_point_recurrent(p, "potential_limit_ratio");
    if (!(1.0 < x && x < y)) raise(ErrorCode::DomainError, "requires 1 < x < y");
    return killed_potential_density(p, x, y) / h_unit(p, x).value;
}

double potential_limit_ratio_extrapolated(const StabilityParams& p, double x, double y1,
                                          double y2) {
    if (!(y1 < y2)) raise(ErrorCode::DomainError, "requires y1 < y2");
    const double r1 = potential_limit_ratio(p, x, y1);
    const double r2 = potential_limit_ratio(p, x, y2);
    const double lam = std::pow(y2 / y1, p.alpha() - 2.0);
    return (r2 - lam * r1) / (1.0 - lam);
}

QuadratureResult kappa_tail_constant(const StabilityParams& p) {
    check_point_recurrent(p, "kappa_tail_constant");
    const double a = p.alpha();
    // psi_{alpha rho_hat}(v) = (v-1)^{alpha rho - 1} (v+1)^{alpha rho_hat - 1}
    const double em1 = a * p.rho() - 1.0;
    const double qm1 = a * p.rho_hat() - 1.0;

    SingularIntegrand head;
    head.f = [em1, qm1](double v, double dl, double) {
        return std::pow(dl, em1) * std::pow(v + 1.0, qm1 - 1.0);
    };
    head.lower_exponent = em1;
    QuadratureResult r = integrate_singular(head, 1.0, 2.0, 1e-11);

    // v = 1/t maps (2, inf) to (0, 1/2): integrand (1-t)^{em1} (1+t)^{qm1-1} t^{1-a}
    SingularIntegrand tail;
    tail.f = [em1, qm1, a](double t, double dl, double) {
        return std::pow(1.0 - t, em1) * std::pow(1.0 + t, qm1 - 1.0) * std::pow(dl, 1.0 - a);
    };
    tail.lower_exponent = 1.0 - a;
    QuadratureResult rt = integrate_singular(tail, 0.0, 0.5, 1e-11);

    const double scale = profeta_simon_constant(p) * 2.0 * (1.0 - a * p.rho_hat());
    r.value = scale * (r.value + rt.value);
    r.err_estimate = std::abs(scale) * (r.err_estimate + rt.err_estimate);
    r.evaluations += rt.evaluations;
    r.converged = r.converged && rt.converged;
    return r;
}

}  // namespace stable_avoid
