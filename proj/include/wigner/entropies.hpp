#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wigner/spectrum.hpp"

namespace wigner {

/// ln(1 - r^alpha) for r in [0,1), alpha > 0, accurate in both regimes:
/// log1p(-r^alpha) when r^alpha is small, log(-expm1(alpha ln r)) when
/// r^alpha is close to one.
double log1m_pow(double ratio, double alpha);

/// One Renyi-family term for a geometric occupancy branch with ratio in [0,1):
///   (1/(1-alpha)) log2((1-r)^alpha / (1 - r^alpha))   [+1 on the x branch,
/// the particle-exchange degeneracy bit]. Evaluated in log space; for
/// |alpha - 1| < 1e-4 switches to a quadratic expansion about the von Neumann
/// value (branches agree to ~1e-12 at the switch point). A ratio >= 1 returns
/// +infinity (divergence is a value here, not an error).
double renyi_term(double ratio, double alpha, bool x_branch);

/// alpha -> 1 limit: -log2((1-r)^{1-r} r^r) / (1-r)  [+1 on the x branch].
double von_neumann_term(double ratio, bool x_branch);

/// Per-branch von Neumann / Renyi split of a full report row.
struct EntropyRow {
    double alpha;  // 1 = von Neumann, +inf = min-entropy
    double x_term;
    std::vector<double> y_terms;
    double total;
};

/// S^inf = [1 - log2(1-zeta)] + sum_i [-log2(1-xi_i)];
/// equals -log2(largest occupancy) as s -> 0.
double min_entropy(const SpectralRatios& ratios);

/// Max-entropy S^0 = log2(rank). The x branch has rank 2 exactly when
/// zeta = 0; every finite eps > 1 gives xi > 0, so the full 2D/D-dim
/// max-entropy is +infinity whenever any xi > 0.
struct MaxEntropy {
    double total;                  // +inf unless every ratio vanishes
    std::optional<long> rank;      // set when total is finite
    double x_term;                 // 1 when zeta = 0, else +inf
    std::optional<int> x_rank;     // 2 when zeta = 0
    std::string divergence_reason; // empty when finite
};

MaxEntropy max_entropy(const SpectralRatios& ratios);

/// S_L = 1 - (1/2) (1-zeta)/(1+zeta) prod_i (1-xi_i)/(1+xi_i).
double linear_entropy(const SpectralRatios& ratios);

/// Leading isotropic divergence -ln(eps-1)/ln 16, claimed for eps in (1, 1.1].
/// Throws std::invalid_argument outside that window.
double vn_isotropic_asymptote(double eps);

/// Family landmarks: eps_c where the relative HA well is locally isotropic
/// (inverse power: sqrt(2(beta+1)+1)), and g_c where omega_x^2 = 1/2 (Gaussian:
/// sigma^2 e^{1/2}/2; other families solved numerically when a solution
/// exists, absent otherwise).
struct SpecialPoints {
    std::optional<double> epsilon_c;
    std::optional<double> g_c;
    std::string omega_half_condition;
};

SpecialPoints special_points(const InteractionPotential& potential);

/// Full entropy family at one configuration. Divergent values are +inf
/// entries with a note, never exceptions; remaining fields stay filled.
struct EntropyReport {
    std::vector<EntropyRow> rows;  // requested alphas plus vN and min-entropy
    double s_linear;
    double s_vn;
    double s_min;
    MaxEntropy s_max;
    SpectralRatios ratios;
    HarmonicApproximation ha;
    TrapGeometry geometry;
    HAReport ha_report;
    std::vector<std::string> notes;
};

EntropyReport entropy_report(const HarmonicApproximation& ha, const TrapGeometry& geometry,
                             std::span<const double> alphas);

/// Flat CSV, one row per alpha: alpha,x_term,y_term_1..,total. Infinities
/// serialize as "inf".
std::string report_csv(const EntropyReport& report);

/// Plain-text summary block with diagnostics and the alpha table.
std::string report_summary(const EntropyReport& report, const std::string& potential_label);

}  // namespace wigner
