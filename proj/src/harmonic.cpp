#include "wigner/harmonic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace wigner {

namespace {

// Minimum condition, Eq-(8) form: F(r) = -(1/r) V'(r), decreasing through
// 1/(2g) at the minimum for admissible potentials.
double radial_force_ratio(const InteractionPotential& pot, double r) {
    return -pot.first_derivative(r) / r;
}

// d/dr of F; used by the Newton polish.
double radial_force_ratio_deriv(const InteractionPotential& pot, double r) {
    return -pot.second_derivative(r) / r + pot.first_derivative(r) / (r * r);
}

double solve_generic(const CouplingConfig& cfg) {
    const auto& pot = *cfg.potential;
    const double target = 1.0 / (2.0 * cfg.g);

    // Bracket by doubling/halving from r = 1. Non-finite F on the small-r side
    // counts as F > target (singular repulsion).
    auto above = [&](double r) {
        const double f = radial_force_ratio(pot, r);
        return std::isfinite(f) ? f >= target : true;
    };

    double lo = 1.0, hi = 1.0;
    int iter = 0;
    const int cap = 200;
    if (above(1.0)) {
        while (above(hi) && ++iter <= cap) {
            lo = hi;
            hi *= 2.0;
        }
    } else {
        while (!above(lo) && ++iter <= cap) {
            hi = lo;
            lo *= 0.5;
        }
    }
    if (iter > cap)
        throw BracketError("minimum condition: no sign change within 200 doublings",
                           lo, hi, radial_force_ratio(pot, lo), radial_force_ratio(pot, hi));

    auto g_of = [&](double r) { return radial_force_ratio(pot, r) - target; };

    // Bisection to 1e-6 relative.
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g_of(mid);
        if (fm >= 0.0 || !std::isfinite(fm))
            lo = mid;
        else
            hi = mid;
    }

    // Newton polish; falls back to bisection whenever the step leaves the
    // bracket.
    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 100; ++k) {
        const double fx = g_of(x);
        if (fx >= 0.0)
            lo = x;
        else
            hi = x;
        const double dfx = radial_force_ratio_deriv(pot, x);
        double next = x - fx / dfx;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        const double dx = std::abs(next - x);
        x = next;
        if (dx <= 1e-14 * x) break;
    }
    return x;
}

}  // namespace

double solve_minimum(const CouplingConfig& cfg) {
    if (cfg.potential == nullptr) throw std::invalid_argument("solve_minimum: null potential");
    if (!(cfg.g > 0.0)) throw std::domain_error("solve_minimum: g must be > 0");
    if (cfg.g < cfg.potential->coupling_lower_bound())
        throw std::domain_error("solve_minimum: g below the family domain bound");

    if (auto x0 = cfg.potential->closed_form_minimum(cfg.g)) return *x0;
    return solve_generic(cfg);
}

double solve_minimum_generic(const CouplingConfig& cfg) {
    if (cfg.potential == nullptr) throw std::invalid_argument("solve_minimum: null potential");
    if (!(cfg.g > 0.0)) throw std::domain_error("solve_minimum: g must be > 0");
    if (cfg.g < cfg.potential->coupling_lower_bound())
        throw std::domain_error("solve_minimum: g below the family domain bound");
    return solve_generic(cfg);
}

double frequency(const CouplingConfig& cfg, double x0) {
    if (!(x0 > 0.0)) throw std::domain_error("frequency: x0 must be > 0");
    double omega_sq;
    if (auto w = cfg.potential->closed_form_omega_sq(cfg.g, x0)) {
        omega_sq = *w;
    } else {
        omega_sq = frequency_generic(cfg, x0);
    }
    if (!(omega_sq > 0.0))
        throw std::runtime_error("frequency: omega_x^2 <= 0, minimum is not a stable well");
    return omega_sq;
}

double frequency_generic(const CouplingConfig& cfg, double x0) {
    if (!(x0 > 0.0)) throw std::domain_error("frequency: x0 must be > 0");
    const double force = radial_force_ratio(*cfg.potential, x0);
    return 0.5 * (1.0 + cfg.potential->second_derivative(x0) / force);
}

HarmonicApproximation solve_harmonic(const CouplingConfig& cfg) {
    HarmonicApproximation ha;
    ha.g = cfg.g;
    ha.x0 = solve_minimum(cfg);
    ha.omega_x_sq = frequency(cfg, ha.x0);
    ha.overlap = std::exp(-ha.x0 * ha.x0 * std::sqrt(ha.omega_x_sq) / std::sqrt(2.0));
    ha.v_eff_min = ha.x0 * ha.x0 / 4.0 + cfg.g * cfg.potential->value(ha.x0);
    return ha;
}

double effective_potential(double x, double y, double eps, const CouplingConfig& cfg) {
    const double r = std::hypot(x, y);
    if (r == 0.0) {
        const double v0 = cfg.potential->value(std::numeric_limits<double>::min());
        if (!std::isfinite(v0)) return std::numeric_limits<double>::infinity();
    }
    const double r_safe = r == 0.0 ? std::numeric_limits<double>::min() : r;
    return 0.25 * (x * x + eps * eps * y * y) + cfg.g * cfg.potential->value(r_safe);
}

std::array<double, 2> effective_gradient(double x, double y, double eps,
                                         const CouplingConfig& cfg) {
    const double r = std::hypot(x, y);
    if (r == 0.0) throw std::domain_error("effective_gradient: undefined at the origin");
    const double dv_over_r = cfg.potential->first_derivative(r) / r;
    return {0.5 * x + cfg.g * dv_over_r * x, 0.5 * eps * eps * y + cfg.g * dv_over_r * y};
}

HAReport diagnostics(const HarmonicApproximation& ha, double gate) {
    HAReport rep;
    rep.overlap = ha.overlap;
    rep.gate = gate;
    rep.valid = ha.overlap < gate;
    const double omega = std::sqrt(ha.omega_x_sq);
    rep.delta_x = std::pow(2.0, 0.25) / std::sqrt(omega);
    rep.delta_p = std::sqrt(omega) / std::pow(2.0, 1.25);
    rep.separation_ratio = ha.x0 / rep.delta_x;
    return rep;
}

}  // namespace wigner
