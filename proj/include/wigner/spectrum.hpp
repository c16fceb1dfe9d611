#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner/harmonic.hpp"

namespace wigner {

/// Trap dimension D >= 2 and the D-1 anisotropy parameters, strictly
/// increasing and all > 1. The isotropic limit (any eps <= 1) is rejected
/// here; entropies::vn_isotropic_asymptote covers it.
struct TrapGeometry {
    int dim;
    std::vector<double> eps;

    TrapGeometry(int dim_, std::vector<double> eps_);
    static TrapGeometry planar(double eps) { return TrapGeometry(2, {eps}); }
};

/// Geometric ratios generating the occupancy spectrum: zeta from omega_x^2,
/// one xi per anisotropy parameter, plus the minima overlap s kept in the
/// x-branch prefactor.
struct SpectralRatios {
    double zeta = 0.0;
    std::vector<double> xi;
    double overlap = 0.0;
};

enum class Parity { plus, minus };

/// Index of one natural orbital: x label l, transverse labels, parity branch.
struct OccupancyIndex {
    int l = 0;
    std::vector<int> ltilde;
    Parity parity = Parity::plus;
};

/// zeta(omega_x) = ((2 w^2)^{1/4} - 1)^2 / ((2 w^2)^{1/4} + 1)^2, evaluated as
/// ((2w^2 - 1) / ((t+1)^2 (t^2+1)))^2 with t = (2w^2)^{1/4} so the double zero
/// at omega_x^2 = 1/2 survives in floating point.
double zeta_ratio(double omega_x_sq);

/// xi(eps) = ((eps^2-1)^{1/4} - sqrt(eps))^2 / ((eps^2-1)^{1/4} + sqrt(eps))^2
/// for eps > 1, via a^4 - b^4 = -1 so large eps stays cancellation-free.
/// Throws std::domain_error for eps <= 1.
double xi_ratio(double eps);

SpectralRatios spectral_ratios(const HarmonicApproximation& ha, const TrapGeometry& geometry);

/// Per-branch x occupancy (1 - zeta) zeta^l / (2 (1 + s)).
double x_occupancy(double zeta, double overlap, int l);

/// y occupancy (1 - xi) xi^l.
double y_occupancy(double xi, int ltilde);

/// Occupancy of one index; identical for both parities.
double occupancy(const SpectralRatios& ratios, const OccupancyIndex& index);

struct SpectrumEntry {
    OccupancyIndex index;
    double occupancy;
};

/// Enumeration result; masses are exact geometric sums, not partial-sum
/// approximations. total_mass = 1 / (1 + s).
struct SpectrumList {
    std::vector<SpectrumEntry> entries;  // non-increasing occupancy
    double captured_mass = 0.0;
    double omitted_mass = 0.0;
    double total_mass = 0.0;
};

/// Thrown when tail_bound cannot be met within the per-label index cap.
struct TruncationError : std::runtime_error {
    TruncationError(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved_omitted_mass(achieved_) {}
    double achieved_omitted_mass;
};

/// All occupancies, both parity branches, in non-increasing order; ties break
/// by lexicographic index then parity (+ before -). Truncated so the omitted
/// mass (computed from the geometric tails) stays below tail_bound.
SpectrumList enumerate_spectrum(const SpectralRatios& ratios, double tail_bound,
                                int index_cap = 500);

/// L2-normalized oscillator eigenfunction h_l(u) at unit frequency scale,
/// evaluated with the normalized three-term recurrence
/// h_{l+1} = sqrt(2/(l+1)) u h_l - sqrt(l/(l+1)) h_{l-1}.
double hermite_function(int l, double u, int cap = 500);

/// sqrt(kappa) h_l(kappa u): oscillator function at frequency scale kappa^2.
double oscillator_function(int l, double kappa, double u);

/// Scale of the x natural orbitals, kappa = (sqrt(2) omega_x)^{1/4}.
double orbital_scale_x(const HarmonicApproximation& ha);

/// Scale of the y natural orbitals, kappa = (eps sqrt(eps^2-1))^{1/4}.
double orbital_scale_y(double eps);

/// Natural orbitals phi_l^{+-}(u) = (phi_l(u + x0/2) +- phi_l(u - x0/2)) / sqrt(2)
/// (minus branch: phi_l(u - x0/2) - phi_l(u + x0/2), odd combination).
double natural_orbital_x(const HarmonicApproximation& ha, int l, Parity parity, double u);

/// Transverse natural orbital theta_m(v).
double natural_orbital_y(double eps, int m, double v);

/// Normalized pair wavefunction psi_x(x1, x2) of the x coordinates.
double psi_x(const HarmonicApproximation& ha, double x1, double x2);

/// Normalized pair wavefunction psi_y(y1, y2) for one transverse coordinate.
double psi_y(double eps, double y1, double y2);

/// Ground state Psi(r1, r2) = psi_x(x1, x2) prod_i psi_y(eps_i; y_i1, y_i2).
/// r1, r2 hold the D coordinates of each particle.
double ground_state(const HarmonicApproximation& ha, const TrapGeometry& geometry,
                    std::span<const double> r1, std::span<const double> r2);

/// Spectrum dump CSV: header l,ltilde[,...],parity,occupancy; floats with 17
/// significant digits; rows in enumeration order.
std::string spectrum_csv(const SpectrumList& spectrum, int dim);

}  // namespace wigner
