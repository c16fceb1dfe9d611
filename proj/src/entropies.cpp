#include "wigner/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wigner/format.hpp"

namespace wigner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

// Taylor coefficients of the Renyi term in h = alpha - 1 about the von
// Neumann point; N(alpha) = alpha ln(1-r) - ln(1 - r^alpha),
// N''(1) = r ln^2 r / (1-r)^2, N'''(1) = r (1+r) ln^3 r / (1-r)^3.
double renyi_near_one(double r, double h) {
    const double vn = von_neumann_term(r, false);
    if (r == 0.0) return vn;
    const double lr = std::log(r);
    const double om = 1.0 - r;
    const double n2 = r * lr * lr / (om * om);
    const double n3 = r * (1.0 + r) * lr * lr * lr / (om * om * om);
    return vn - h * n2 / (2.0 * kLn2) - h * h * n3 / (6.0 * kLn2);
}

}  // namespace

double log1m_pow(double ratio, double alpha) {
    const double t = alpha * std::log(ratio);
    if (t > -0.5) return std::log(-std::expm1(t));  // 1 - r^alpha is the small one
    return std::log1p(-std::exp(t));                // r^alpha is the small one
}

double renyi_term(double ratio, double alpha, bool x_branch) {
    if (!(ratio >= 0.0)) throw std::domain_error("renyi_term: ratio must be >= 0");
    if (!(alpha > 0.0)) throw std::domain_error("renyi_term: alpha must be > 0");
    const double bit = x_branch ? 1.0 : 0.0;
    if (ratio >= 1.0) return kInf;
    if (std::abs(alpha - 1.0) < 1e-4) return renyi_near_one(ratio, alpha - 1.0) + bit;
    if (ratio == 0.0) return bit;
    // log-space form of (1/(1-alpha)) log2((1-r)^alpha / (1 - r^alpha))
    const double log_num = alpha * std::log1p(-ratio);
    const double log_den = log1m_pow(ratio, alpha);
    return (log_num - log_den) / ((1.0 - alpha) * kLn2) + bit;
}

double von_neumann_term(double ratio, bool x_branch) {
    if (!(ratio >= 0.0)) throw std::domain_error("von_neumann_term: ratio must be >= 0");
    const double bit = x_branch ? 1.0 : 0.0;
    if (ratio >= 1.0) return kInf;
    if (ratio == 0.0) return bit;
    const double om = 1.0 - ratio;
    return -(om * std::log1p(-ratio) + ratio * std::log(ratio)) / (om * kLn2) + bit;
}

double min_entropy(const SpectralRatios& ratios) {
    if (ratios.zeta >= 1.0) return kInf;
    double s = 1.0 - std::log1p(-ratios.zeta) / kLn2;
    for (double xi : ratios.xi) {
        if (xi >= 1.0) return kInf;
        s -= std::log1p(-xi) / kLn2;
    }
    return s;
}

MaxEntropy max_entropy(const SpectralRatios& ratios) {
    MaxEntropy m;
    if (ratios.zeta == 0.0) {
        m.x_term = 1.0;  // two occupied natural orbitals on the x branch
        m.x_rank = 2;
    } else {
        m.x_term = kInf;
    }
    const bool y_finite =
        std::all_of(ratios.xi.begin(), ratios.xi.end(), [](double x) { return x == 0.0; });
    if (ratios.zeta == 0.0 && y_finite) {
        m.total = 1.0;
        m.rank = 2;
    } else {
        m.total = kInf;
        m.divergence_reason = "infinite Schmidt rank";
    }
    return m;
}

double linear_entropy(const SpectralRatios& ratios) {
    double purity = 0.5 * (1.0 - ratios.zeta) / (1.0 + ratios.zeta);
    for (double xi : ratios.xi) purity *= (1.0 - xi) / (1.0 + xi);
    return 1.0 - purity;
}

double vn_isotropic_asymptote(double eps) {
    if (!(eps > 1.0) || eps > 1.1)
        throw std::invalid_argument("vn_isotropic_asymptote: claimed only for eps in (1, 1.1]");
    return -std::log(eps - 1.0) / std::log(16.0);
}

SpecialPoints special_points(const InteractionPotential& potential) {
    SpecialPoints sp;
    sp.epsilon_c = potential.closed_form_epsilon_c();
    sp.omega_half_condition = "omega_x_sq(g) = 1/2";

    if (auto gc = potential.closed_form_g_c()) {
        sp.g_c = gc;
        return sp;
    }
    // Inverse power: omega_x^2 = beta + 1 > 1/2 for every g, no solution.
    if (potential.closed_form_epsilon_c()) return sp;

    // Generic families: scan omega_x^2(g) - 1/2 for a sign change on a log grid
    // and bisect when found.
    auto omega_minus_half = [&](double g) -> double {
        CouplingConfig cfg{g, &potential};
        try {
            const double x0 = solve_minimum(cfg);
            return frequency(cfg, x0) - 0.5;
        } catch (const std::exception&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const auto grid = log_grid(std::max(1e-6, potential.coupling_lower_bound() * (1.0 + 1e-12)),
                               1e12, 73);
    double prev_g = 0.0, prev_f = std::numeric_limits<double>::quiet_NaN();
    for (double g : grid) {
        const double f = omega_minus_half(g);
        if (std::isfinite(prev_f) && std::isfinite(f) && prev_f * f <= 0.0 && prev_f != f) {
            double lo = prev_g, hi = g;
            for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (omega_minus_half(mid) * prev_f > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            sp.g_c = 0.5 * (lo + hi);
            return sp;
        }
        prev_g = g;
        prev_f = f;
    }
    return sp;
}

EntropyReport entropy_report(const HarmonicApproximation& ha, const TrapGeometry& geometry,
                             std::span<const double> alphas) {
    EntropyReport rep{.rows = {},
                      .s_linear = 0.0,
                      .s_vn = 0.0,
                      .s_min = 0.0,
                      .s_max = {},
                      .ratios = spectral_ratios(ha, geometry),
                      .ha = ha,
                      .geometry = geometry,
                      .ha_report = diagnostics(ha),
                      .notes = {}};

    const auto& ratios = rep.ratios;
    auto make_row = [&](double alpha) {
        EntropyRow row;
        row.alpha = alpha;
        if (std::isinf(alpha)) {
            row.x_term = 1.0 - std::log1p(-ratios.zeta) / kLn2;
            for (double xi : ratios.xi) row.y_terms.push_back(-std::log1p(-xi) / kLn2);
        } else if (alpha == 1.0) {
            row.x_term = von_neumann_term(ratios.zeta, true);
            for (double xi : ratios.xi) row.y_terms.push_back(von_neumann_term(xi, false));
        } else {
            row.x_term = renyi_term(ratios.zeta, alpha, true);
            for (double xi : ratios.xi) row.y_terms.push_back(renyi_term(xi, alpha, false));
        }
        row.total = row.x_term;
        for (double t : row.y_terms) row.total += t;
        return row;
    };

    std::vector<double> wanted(alphas.begin(), alphas.end());
    wanted.push_back(1.0);                // von Neumann
    wanted.push_back(kInf);               // min-entropy
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    for (double a : wanted) {
        if (!(a > 0.0)) throw std::domain_error("entropy_report: alpha must be > 0");
        rep.rows.push_back(make_row(a));
    }

    rep.s_linear = linear_entropy(ratios);
    rep.s_vn = make_row(1.0).total;
    rep.s_min = min_entropy(ratios);
    rep.s_max = max_entropy(ratios);
    if (std::isinf(rep.s_max.total))
        rep.notes.push_back("S^0 diverges: " + rep.s_max.divergence_reason);
    if (!rep.ha_report.valid)
        rep.notes.push_back("HA overlap " + float17(rep.ratios.overlap) +
                            " above gate; occupancies carry O(s) corrections");
    return rep;
}

std::string report_csv(const EntropyReport& report) {
    std::string out = "alpha,x_term";
    for (size_t i = 0; i < report.geometry.eps.size(); ++i)
        out += ",y_term_" + std::to_string(i + 1);
    out += ",total\n";
    for (const auto& row : report.rows) {
        std::vector<std::string> fields{float17(row.alpha), float17(row.x_term)};
        for (double t : row.y_terms) fields.push_back(float17(t));
        fields.push_back(float17(row.total));
        out += csv_row(fields);
    }
    return out;
}

std::string report_summary(const EntropyReport& report, const std::string& potential_label) {
    std::string s;
    auto line = [&s](const std::string& k, const std::string& v) {
        s += "  " + k;
        if (k.size() < 18) s += std::string(18 - k.size(), ' ');
        s += ": " + v + "\n";
    };
    s += "entropy report\n";
    line("potential", potential_label);
    line("g", float17(report.ha.g));
    std::string eps = "D=" + std::to_string(report.geometry.dim) + ", eps =";
    for (double e : report.geometry.eps) eps += " " + float17(e);
    line("geometry", eps);
    line("x0", float17(report.ha.x0));
    line("omega_x_sq", float17(report.ha.omega_x_sq));
    line("v_eff_min", float17(report.ha.v_eff_min));
    line("zeta", float17(report.ratios.zeta));
    std::string xs;
    for (double x : report.ratios.xi) xs += (xs.empty() ? "" : " ") + float17(x);
    line("xi", xs);
    line("overlap s", float17(report.ratios.overlap) +
                          (report.ha_report.valid ? "  (HA gate passed)" : "  (above HA gate)"));
    line("delta_x", float17(report.ha_report.delta_x));
    line("delta_p", float17(report.ha_report.delta_p));
    line("S_L", float17(report.s_linear));
    line("S_vN", float17(report.s_vn));
    line("S_min", float17(report.s_min));
    std::string smax = float17(report.s_max.total);
    if (report.s_max.rank) smax += "  (rank " + std::to_string(*report.s_max.rank) + ")";
    smax += "  [x branch: " + float17(report.s_max.x_term);
    if (report.s_max.x_rank) smax += ", rank " + std::to_string(*report.s_max.x_rank);
    smax += "]";
    line("S_max", smax);
    s += "  alpha table (alpha, x term, y terms..., total):\n";
    for (const auto& row : report.rows) {
        s += "    " + float17(row.alpha) + "  " + float17(row.x_term);
        for (double t : row.y_terms) s += "  " + float17(t);
        s += "  " + float17(row.total) + "\n";
    }
    for (const auto& n : report.notes) s += "  note: " + n + "\n";
    return s;
}

}  // namespace wigner
