#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "wigner/potentials.hpp"

namespace wigner {

/// Interaction-strength ratio g and the potential it scales. Non-owning.
struct CouplingConfig {
    double g;
    const InteractionPotential* potential;
};

/// Solved harmonic approximation about the effective-potential minima
/// (+-x0, 0): squared frequency of the transverse x-well, minima overlap
/// s = exp(-x0^2 omega_x / sqrt(2)) and the potential value at the minimum.
struct HarmonicApproximation {
    double x0;
    double omega_x_sq;
    double overlap;
    double v_eff_min;
    double g;
};

/// Thrown when bracketing the minimum condition fails within the iteration cap.
struct BracketError : std::runtime_error {
    BracketError(const std::string& what, double lo_, double hi_, double flo_, double fhi_)
        : std::runtime_error(what), lo(lo_), hi(hi_), f_lo(flo_), f_hi(fhi_) {}
    double lo, hi, f_lo, f_hi;
};

/// Unique positive root of 1/(2g) = -(1/r) V'(r). Uses the family closed form
/// when available, otherwise doubling/halving bracket from r = 1 (200-step
/// cap), bisection to 1e-6 relative and Newton polish to |dx| < 1e-14 x.
/// Throws std::domain_error for g outside the family domain, BracketError when
/// no sign change is found.
double solve_minimum(const CouplingConfig& cfg);

/// Root-finding path with closed forms ignored; closed-form families must
/// agree with this to 1e-12 relative.
double solve_minimum_generic(const CouplingConfig& cfg);

/// Squared HA frequency omega_x^2 = (1 + V''(x0) / (-(1/x0) V'(x0))) / 2
/// at the solved minimum; family closed form when available.
/// Throws std::runtime_error if the result is not a stable well (<= 0).
double frequency(const CouplingConfig& cfg, double x0);

/// The derivative-ratio evaluation above with closed forms ignored.
double frequency_generic(const CouplingConfig& cfg, double x0);

/// solve_minimum + frequency + overlap in one step.
HarmonicApproximation solve_harmonic(const CouplingConfig& cfg);

/// V_eff(x, y) = (x^2 + eps^2 y^2)/4 + g V(sqrt(x^2 + y^2)).
/// Singular-origin evaluation returns +infinity rather than throwing.
double effective_potential(double x, double y, double eps, const CouplingConfig& cfg);

/// Analytic gradient of the effective potential. Undefined at the origin for
/// singular families.
std::array<double, 2> effective_gradient(double x, double y, double eps,
                                         const CouplingConfig& cfg);

/// HA validity diagnostics: overlap against the gate, relative-coordinate
/// widths Delta_x = 2^{1/4}/sqrt(omega_x), Delta_p = sqrt(omega_x)/2^{5/4}
/// (product exactly 1/2) and the separation ratio x0/Delta_x.
struct HAReport {
    double overlap;
    double gate;
    bool valid;  // overlap < gate
    double delta_x;
    double delta_p;
    double separation_ratio;
};

HAReport diagnostics(const HarmonicApproximation& ha, double gate = 1e-8);

}  // namespace wigner
