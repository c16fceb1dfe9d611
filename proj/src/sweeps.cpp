#include "wigner/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "wigner/format.hpp"
#include "wigner/oracle.hpp"

namespace wigner {

namespace {

std::vector<double> value_grid(double lo, double hi, int count, bool log_scale) {
    if (count < 1) throw std::invalid_argument("sweep: grid count must be >= 1");
    if (count == 1) return {lo};
    if (log_scale) return log_grid(lo, hi, count);
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    g.back() = hi;
    return g;
}

std::string num(double v) { return float17(v); }

// Rows are independent; compute them in declared order across a capped worker
// pool and emit in order regardless of completion order.
std::vector<std::string> parallel_rows(int count, const std::function<std::string(int)>& fn) {
    std::vector<std::string> rows(count);
    const int workers = std::clamp(max_threads(), 1, std::max(1, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) rows[i] = fn(i);
        return rows;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (int i = w; i < count; i += workers) rows[i] = fn(i);
        });
    for (auto& t : pool) t.join();
    return rows;
}

const std::vector<double> kFigureAlphas{0.2, 0.4, 0.8, 1.5, 2.0};

}  // namespace

int max_threads() {
    if (const char* env = std::getenv("WIGNER_SPECTRUM_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string SweepResult::to_csv() const {
    std::string out;
    for (const auto& c : header_comments) out += "# " + c + "\n";
    out += column_header;
    for (const auto& r : rows) out += r;
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    const auto potential = parse_potential(spec.potential);
    const auto g_grid = value_grid(spec.g_min, spec.g_max, spec.g_count, spec.g_log);
    const auto e_grid = value_grid(spec.eps_min, spec.eps_max, spec.eps_count, spec.eps_log);
    if (static_cast<long>(g_grid.size()) * e_grid.size() > 1000000)
        throw std::invalid_argument("sweep: more than 1e6 grid points");

    SweepResult res;
    res.header_comments = {"potential: " + potential->describe(),
                           "row order: g outer loop, eps inner loop",
                           "tail_bound: " + num(spec.tail_bound)};
    std::string hdr = "g,eps";
    for (size_t i = 0; i < spec.extra_eps.size(); ++i)
        hdr += ",eps" + std::to_string(i + 2);
    hdr += ",x0,omega_x_sq,zeta,overlap,S_L,S_vN,S_min";
    for (double a : spec.alphas) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",S_alpha_%g", a);
        hdr += buf;
    }
    res.column_header = hdr + "\n";

    const int total = static_cast<int>(g_grid.size() * e_grid.size());
    res.total_rows = total;
    std::vector<int> failures(total, 0);

    auto row_fn = [&](int i) -> std::string {
        const double g = g_grid[i / e_grid.size()];
        const double eps = e_grid[i % e_grid.size()];
        std::vector<std::string> f;
        f.push_back(num(g));
        f.push_back(num(eps));
        for (double e : spec.extra_eps) f.push_back(num(e));
        try {
            std::vector<double> all_eps{eps};
            all_eps.insert(all_eps.end(), spec.extra_eps.begin(), spec.extra_eps.end());
            const TrapGeometry geometry(1 + static_cast<int>(all_eps.size()), all_eps);
            const CouplingConfig cfg{g, potential.get()};
            const auto ha = solve_harmonic(cfg);
            const auto report = entropy_report(ha, geometry, spec.alphas);
            f.push_back(num(ha.x0));
            f.push_back(num(ha.omega_x_sq));
            f.push_back(num(report.ratios.zeta));
            f.push_back(num(ha.overlap));
            f.push_back(num(report.s_linear));
            f.push_back(num(report.s_vn));
            f.push_back(num(report.s_min));
            for (double a : spec.alphas) {
                const auto it = std::find_if(report.rows.begin(), report.rows.end(),
                                             [a](const EntropyRow& r) { return r.alpha == a; });
                f.push_back(num(it != report.rows.end()
                                    ? it->total
                                    : std::numeric_limits<double>::quiet_NaN()));
            }
        } catch (const std::exception&) {
            failures[i] = 1;
            const size_t want = 9 + spec.alphas.size() + spec.extra_eps.size();
            while (f.size() < want) f.push_back("nan");
        }
        return csv_row(f);
    };

    res.rows = parallel_rows(total, row_fn);
    for (int fkk : failures) res.failed_rows += fkk;
    return res;
}

namespace {

SweepResult preset_fig1a() {
    SweepResult res;
    res.header_comments = {
        "S_y entropy terms vs anisotropy eps; interaction-independent",
        "eps - 1 log-spaced over [1e-6, 30], 181 points (ranges not stated in the source "
        "figure; chosen to span the eps -> 1+ divergence and the eps >> 1 decay)",
        "alphas: 0.2 0.4 0.8 1.5 2, plus von Neumann and min-entropy"};
    std::string hdr = "eps";
    for (double a : kFigureAlphas) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",S_y_alpha_%g", a);
        hdr += buf;
    }
    res.column_header = hdr + ",S_y_vN,S_y_min\n";
    for (double em1 : log_grid(1e-6, 30.0, 181)) {
        const double xi = xi_ratio(1.0 + em1);
        std::vector<std::string> f{num(1.0 + em1)};
        for (double a : kFigureAlphas) f.push_back(num(renyi_term(xi, a, false)));
        f.push_back(num(von_neumann_term(xi, false)));
        f.push_back(num(-std::log2(1.0 - xi)));
        res.rows.push_back(csv_row(f));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_fig1b() {
    SweepResult res;
    res.header_comments = {
        "S_x entropy terms vs squared HA frequency",
        "omega_x_sq linear over [0.05, 5], step 0.01 (range chosen to span both divergences "
        "around the minimum at 1/2)",
        "alphas: 0.2 0.4 0.8 1.5 2, plus von Neumann and min-entropy"};
    std::string hdr = "omega_x_sq";
    for (double a : kFigureAlphas) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",S_x_alpha_%g", a);
        hdr += buf;
    }
    res.column_header = hdr + ",S_x_vN,S_x_min\n";
    for (int i = 0; i <= 495; ++i) {
        const double w = 0.05 + 0.01 * i;
        const double z = zeta_ratio(w);
        std::vector<std::string> f{num(w)};
        for (double a : kFigureAlphas) f.push_back(num(renyi_term(z, a, true)));
        f.push_back(num(von_neumann_term(z, true)));
        f.push_back(num(1.0 - std::log2(1.0 - z)));
        res.rows.push_back(csv_row(f));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_fig2() {
    const std::vector<double> alphas{0.4, 0.5, 0.6};
    SweepResult res;
    res.header_comments = {
        "S_x terms and their grid derivatives around omega_x_sq = 1/2",
        "omega_x_sq linear over [0.45, 0.55], step 1e-4; derivative columns are central "
        "differences on the grid (one-sided at the ends)"};
    res.column_header =
        "omega_x_sq,S_x_alpha_0.4,S_x_alpha_0.5,S_x_alpha_0.6,S_x_vN,"
        "dS_x_alpha_0.4,dS_x_alpha_0.5,dS_x_alpha_0.6,dS_x_vN\n";
    const int count = 1001;
    const double h = 1e-4;
    std::vector<std::array<double, 4>> s(count);
    std::vector<double> w(count);
    for (int i = 0; i < count; ++i) {
        w[i] = 0.45 + h * i;
        const double z = zeta_ratio(w[i]);
        for (size_t k = 0; k < 3; ++k) s[i][k] = renyi_term(z, alphas[k], true);
        s[i][3] = von_neumann_term(z, true);
    }
    for (int i = 0; i < count; ++i) {
        std::vector<std::string> f{num(w[i])};
        for (int k = 0; k < 4; ++k) f.push_back(num(s[i][k]));
        for (int k = 0; k < 4; ++k) {
            const int lo = std::max(0, i - 1), hi = std::min(count - 1, i + 1);
            f.push_back(num((s[hi][k] - s[lo][k]) / (h * (hi - lo))));
        }
        res.rows.push_back(csv_row(f));
    }
    res.total_rows = count;
    return res;
}

SweepResult preset_fig3() {
    SweepResult res;
    res.header_comments = {
        "occupancies Lambda_{0,ltilde} vs ln(eps-1); inverse power beta=1 (Calogero), g=1e8",
        "ln(eps-1) linear over [-20, 3], step 0.1; the lower end covers the interior maxima "
        "at xi(eps) = ltilde/(ltilde+1) down to ltilde = 20",
        "occ_x0_1d is the dominant one-dimensional occupancy (x branch alone)"};
    std::string hdr = "ln_eps_minus_1,eps,occ_x0_1d";
    for (int k = 0; k <= 20; ++k) hdr += ",occ_0_" + std::to_string(k);
    res.column_header = hdr + "\n";

    const InversePower pot(1.0);
    const CouplingConfig cfg{1e8, &pot};
    const auto ha = solve_harmonic(cfg);
    const double lam0 = x_occupancy(zeta_ratio(ha.omega_x_sq), ha.overlap, 0);
    for (int i = 0; i <= 230; ++i) {
        const double t = -20.0 + 0.1 * i;
        const double eps = 1.0 + std::exp(t);
        const double xi = xi_ratio(eps);
        std::vector<std::string> f{num(t), num(eps), num(lam0)};
        for (int k = 0; k <= 20; ++k) f.push_back(num(lam0 * y_occupancy(xi, k)));
        res.rows.push_back(csv_row(f));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_fig4() {
    SweepResult res;
    res.header_comments = {
        "S_x entropy terms vs inverse-power exponent beta (omega_x_sq = beta + 1, "
        "g-independent)",
        "beta log-spaced over [0.1, 20], 201 points",
        "alphas: 0.2 0.4 0.8 1.5 2, plus von Neumann and min-entropy"};
    std::string hdr = "beta,omega_x_sq";
    for (double a : kFigureAlphas) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",S_x_alpha_%g", a);
        hdr += buf;
    }
    res.column_header = hdr + ",S_x_vN,S_x_min\n";
    for (double beta : log_grid(0.1, 20.0, 201)) {
        const double w = beta + 1.0;
        const double z = zeta_ratio(w);
        std::vector<std::string> f{num(beta), num(w)};
        for (double a : kFigureAlphas) f.push_back(num(renyi_term(z, a, true)));
        f.push_back(num(von_neumann_term(z, true)));
        f.push_back(num(1.0 - std::log2(1.0 - z)));
        res.rows.push_back(csv_row(f));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_fig6() {
    const std::vector<double> gammas{0.0, 0.5, 1.0, 2.0};
    SweepResult res;
    res.header_comments = {
        "one-dimensional von Neumann entropy vs g for the screened inverse power, beta=1,",
        "gamma in {0, 1/2, 1, 2}; g log-spaced over [10, 1e6], 101 points"};
    res.column_header = "g,S_x_vN_gamma_0,S_x_vN_gamma_0.5,S_x_vN_gamma_1,S_x_vN_gamma_2\n";
    std::vector<std::unique_ptr<InteractionPotential>> pots;
    pots.push_back(std::make_unique<InversePower>(1.0));
    for (size_t i = 1; i < gammas.size(); ++i)
        pots.push_back(std::make_unique<ScreenedInversePower>(1.0, gammas[i]));
    for (double g : log_grid(10.0, 1e6, 101)) {
        std::vector<std::string> f{num(g)};
        for (const auto& pot : pots) {
            const CouplingConfig cfg{g, pot.get()};
            const auto ha = solve_harmonic(cfg);
            f.push_back(num(von_neumann_term(zeta_ratio(ha.omega_x_sq), true)));
        }
        res.rows.push_back(csv_row(f));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_fig7() {
    SweepResult res;
    res.header_comments = {
        "one-dimensional occupancies Lambda_0^x, Lambda_1^x vs g for the Gaussian repulsive "
        "interaction, sigma=10",
        "g linear over [60, 120], step 1/2, with g_c = sigma^2 e^(1/2)/2 inserted exactly"};
    res.column_header = "g,x0,omega_x_sq,zeta,occ_x_0,occ_x_1\n";
    const GaussianRepulsive pot(10.0);
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i) grid.push_back(60.0 + 0.5 * i);
    grid.push_back(*pot.closed_form_g_c());
    std::sort(grid.begin(), grid.end());
    for (double g : grid) {
        const CouplingConfig cfg{g, &pot};
        const auto ha = solve_harmonic(cfg);
        const double z = zeta_ratio(ha.omega_x_sq);
        res.rows.push_back(csv_row({num(g), num(ha.x0), num(ha.omega_x_sq), num(z),
                                    num(x_occupancy(z, ha.overlap, 0)),
                                    num(x_occupancy(z, ha.overlap, 1))}));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_figS5a() {
    SweepResult res;
    res.header_comments = {"minimum abscissa x0 vs g for the inverse logarithmic interaction",
                           "g log-spaced over [1, 1e8], 81 points"};
    res.column_header = "g,x0,omega_x_sq\n";
    const InverseLog pot;
    for (double g : log_grid(1.0, 1e8, 81)) {
        const CouplingConfig cfg{g, &pot};
        const auto ha = solve_harmonic(cfg);
        res.rows.push_back(csv_row({num(g), num(ha.x0), num(ha.omega_x_sq)}));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

SweepResult preset_figS5b() {
    SweepResult res;
    res.header_comments = {
        "one-dimensional entropy S_x^alpha vs alpha for the inverse logarithmic interaction "
        "at g=1e8",
        "alpha log-spaced over [0.05, 20], 161 points; S_min is the alpha -> infinity limit"};
    res.column_header = "alpha,S_x_alpha,S_x_min\n";
    const InverseLog pot;
    const CouplingConfig cfg{1e8, &pot};
    const auto ha = solve_harmonic(cfg);
    const double z = zeta_ratio(ha.omega_x_sq);
    const double smin = 1.0 - std::log2(1.0 - z);
    for (double a : log_grid(0.05, 20.0, 161)) {
        const double s = a == 1.0 ? von_neumann_term(z, true) : renyi_term(z, a, true);
        res.rows.push_back(csv_row({num(a), num(s), num(smin)}));
    }
    res.total_rows = static_cast<int>(res.rows.size());
    return res;
}

}  // namespace

SweepResult run_preset(const std::string& name) {
    if (name == "fig1a") return preset_fig1a();
    if (name == "fig1b") return preset_fig1b();
    if (name == "fig2") return preset_fig2();
    if (name == "fig3") return preset_fig3();
    if (name == "fig4") return preset_fig4();
    if (name == "fig6") return preset_fig6();
    if (name == "fig7") return preset_fig7();
    if (name == "figS5a") return preset_figS5a();
    if (name == "figS5b") return preset_figS5b();
    throw std::domain_error("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"fig1a", "fig1b", "fig2", "fig3", "fig4", "fig6", "fig7", "figS5a", "figS5b"};
}

}  // namespace wigner
