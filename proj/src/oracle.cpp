#include "wigner/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wigner {

namespace {

// Solves (T - shift) x = b for a symmetric tridiagonal T; positive definite
// after the shift, so the elimination needs no pivoting.
Eigen::VectorXd tridiag_solve(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                              double shift, Eigen::VectorXd b) {
    const int n = static_cast<int>(diag.size());
    Eigen::VectorXd c(n);
    c(0) = diag(0) - shift;
    for (int i = 1; i < n; ++i) {
        const double m = sub(i - 1) / c(i - 1);
        c(i) = diag(i) - shift - m * sub(i - 1);
        b(i) -= m * b(i - 1);
    }
    b(n - 1) /= c(n - 1);
    for (int i = n - 2; i >= 0; --i) b(i) = (b(i) - sub(i) * b(i + 1)) / c(i);
    return b;
}

}  // namespace

std::vector<double> GridSpec::points() const {
    std::vector<double> p(n);
    const double h = spacing();
    for (int i = 0; i < n; ++i) p[i] = center - half_width + i * h;
    return p;
}

GridSpec default_svd_grid(const HarmonicApproximation& ha, int n) {
    const double delta_x = std::pow(2.0, 0.25) / std::sqrt(std::sqrt(ha.omega_x_sq));
    const double kappa = orbital_scale_x(ha);
    const double margin = std::max({10.0 * delta_x, 8.0 / kappa, 6.0 * std::sqrt(2.0)});
    return GridSpec{0.5 * ha.x0 + margin, n, 0.0};
}

std::vector<double> schmidt_svd(const HarmonicApproximation& ha, const GridSpec& grid) {
    if (grid.n < 64) throw std::invalid_argument("schmidt_svd: need at least 64 grid points");
    const double delta_x = std::pow(2.0, 0.25) / std::sqrt(std::sqrt(ha.omega_x_sq));
    const double narrow = std::min(delta_x, 1.0 / orbital_scale_x(ha));
    if (!(grid.spacing() < narrow / 8.0))
        throw std::invalid_argument("schmidt_svd: grid spacing does not resolve the kernel");
    const double reach = grid.center + grid.half_width;
    if (!(reach >= 0.5 * ha.x0 + 6.0 * delta_x) ||
        !(grid.center - grid.half_width <= -0.5 * ha.x0 - 6.0 * delta_x))
        throw std::invalid_argument("schmidt_svd: grid does not contain the +-x0/2 wells");

    const auto u = grid.points();
    const double h = grid.spacing();
    const int n = grid.n;

    Eigen::VectorXd sqw(n);
    for (int i = 0; i < n; ++i) sqw(i) = std::sqrt((i == 0 || i == n - 1) ? 0.5 * h : h);

    Eigen::MatrixXd kernel(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = psi_x(ha, u[i], u[j]) * sqw(i) * sqw(j);
            kernel(i, j) = v;
            kernel(j, i) = v;
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("schmidt_svd: eigensolver did not converge");

    std::vector<double> occ(n);
    for (int i = 0; i < n; ++i) {
        const double lam = es.eigenvalues()(i);
        occ[i] = lam * lam;
    }
    std::sort(occ.begin(), occ.end(), std::greater<>());
    return occ;
}

std::vector<double> pair_averaged(std::span<const double> occupancies) {
    std::vector<double> out;
    out.reserve(occupancies.size() / 2);
    for (size_t i = 0; i + 1 < occupancies.size(); i += 2)
        out.push_back(0.5 * (occupancies[i] + occupancies[i + 1]));
    return out;
}

double mehler_max_deviation(double y, std::span<const std::pair<double, double>> points,
                            int l_max) {
    if (!(std::abs(y) < 1.0)) throw std::domain_error("mehler: |y| must be < 1");
    if (l_max < 0 || l_max > 200) throw std::domain_error("mehler: l_max must lie in [0, 200]");

    const double y2 = y * y;
    double worst = 0.0;
    for (const auto& [u, v] : points) {
        const double lhs =
            std::exp((-(u * u + v * v) * y2 + 2.0 * u * v * y) / (1.0 - y2));

        // orthonormalized Hermite polynomials, same recurrence as the
        // oscillator functions without the Gaussian
        double hu_prev = 1.0, hv_prev = 1.0;
        double hu = std::sqrt(2.0) * u, hv = std::sqrt(2.0) * v;
        double sum = 1.0;  // l = 0 term
        double yl = 1.0;
        if (l_max >= 1) {
            yl = y;
            sum += yl * hu * hv;
        }
        for (int l = 1; l < l_max; ++l) {
            const double cu = std::sqrt(2.0 / (l + 1.0)) * u * hu - std::sqrt(l / (l + 1.0)) * hu_prev;
            const double cv = std::sqrt(2.0 / (l + 1.0)) * v * hv - std::sqrt(l / (l + 1.0)) * hv_prev;
            hu_prev = hu;
            hv_prev = hv;
            hu = cu;
            hv = cv;
            yl *= y;
            sum += yl * hu * hv;
        }
        const double rhs = std::sqrt(1.0 - y2) * sum;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

FDResult fd_ground_state(const FDProblem& problem) {
    const int n = problem.grid.n;
    if (n < 64) throw std::invalid_argument("fd_ground_state: need at least 64 grid points");
    const auto pts = problem.grid.points();
    const double h = problem.grid.spacing();
    const int m = n - 2;  // interior, Dirichlet walls at both ends

    Eigen::VectorXd diag(m), sub(m - 1);
    std::vector<double> interior(m);
    for (int i = 0; i < m; ++i) {
        interior[i] = pts[i + 1];
        const double v = problem.potential(interior[i]);
        if (!std::isfinite(v))
            throw std::invalid_argument("fd_ground_state: potential not finite inside the box");
        diag(i) = 2.0 / (h * h) + v;
    }
    sub.setConstant(-1.0 / (h * h));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("fd_ground_state: tridiagonal QL did not converge");
    const double e0 = es.eigenvalues()(0);

    // inverse iteration; the shifted matrix is PD, two passes are plenty
    const double shift = e0 - 1e-8 * std::max(1.0, std::abs(e0));
    Eigen::VectorXd psi = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
    for (int it = 0; it < 3; ++it) {
        psi = tridiag_solve(diag, sub, shift, psi);
        psi /= psi.norm();
    }
    if (psi.sum() < 0.0) psi = -psi;
    psi /= std::sqrt(h);  // L2 normalization

    FDResult res;
    res.energy = e0;
    res.psi = psi;
    res.points = interior;
    const double peak = psi.cwiseAbs().maxCoeff();
    res.boundary_amplitude = std::max(std::abs(psi(0)), std::abs(psi(m - 1))) / peak;
    return res;
}

GridSpec default_fd_grid_x(const HarmonicApproximation& ha, const CouplingConfig&, int n) {
    const double delta_x = std::pow(2.0, 0.25) / std::sqrt(std::sqrt(ha.omega_x_sq));
    double half = 10.0 * delta_x;
    if (ha.x0 - half <= 0.0) half = 0.95 * ha.x0;  // keep singular families off r = 0
    return GridSpec{half, n, ha.x0};
}

GridSpec default_fd_grid_y(const HarmonicApproximation&, double eps, int n) {
    const double omega_y = std::sqrt(0.5 * (eps - 1.0) * (eps + 1.0));
    const double delta_y = std::pow(2.0, 0.25) / std::sqrt(omega_y);
    return GridSpec{10.0 * delta_y, n, 0.0};
}

std::pair<double, double> density_moments(const FDResult& fd) {
    double mass = 0.0, mean = 0.0;
    for (size_t i = 0; i < fd.points.size(); ++i) {
        mass += fd.psi(i);
        mean += fd.psi(i) * fd.points[i];
    }
    mean /= mass;
    double var = 0.0;
    for (size_t i = 0; i < fd.points.size(); ++i) {
        const double d = fd.points[i] - mean;
        var += fd.psi(i) * d * d;
    }
    return {mean, std::sqrt(var / mass)};
}

namespace {

// sum_l r^(alpha l) (1-r)^alpha = (1-r)^alpha / (1 - r^alpha), in log space
double geometric_alpha_sum(double r, double alpha) {
    if (r == 0.0) return 1.0;
    return std::exp(alpha * std::log1p(-r) - log1m_pow(r, alpha));
}

}  // namespace

CrosscheckReport crosscheck_entropies(const HarmonicApproximation& ha,
                                      const TrapGeometry& geometry,
                                      std::span<const double> alphas,
                                      const GridSpec* svd_grid, double tail_bound) {
    CrosscheckReport rep;
    const SpectralRatios ratios = spectral_ratios(ha, geometry);
    const SpectrumList spectrum = enumerate_spectrum(ratios, tail_bound);

    const GridSpec grid = svd_grid ? *svd_grid : default_svd_grid(ha);
    const std::vector<double> occ = schmidt_svd(ha, grid);
    rep.svd_mass = std::accumulate(occ.begin(), occ.end(), 0.0);

    // analytic y-branch pieces shared by the SVD route
    double y_mass = 1.0, y_max = 1.0, y_vn = 0.0, y_sq = 1.0;
    for (double xi : ratios.xi) {
        y_max *= 1.0 - xi;
        y_vn += von_neumann_term(xi, false);
        y_sq *= (1.0 - xi) / (1.0 + xi);
    }

    auto svd_entropy = [&](double alpha) -> double {
        if (std::isinf(alpha)) return -std::log2(occ.front() * y_max);
        if (alpha == 1.0) {
            double s = 0.0, mass = 0.0;
            for (double o : occ)
                if (o > 0.0) {
                    s -= o * std::log2(o);
                    mass += o;
                }
            return s * y_mass + mass * y_vn;
        }
        double xsum = 0.0;
        for (double o : occ)
            if (o > 0.0) xsum += std::pow(o, alpha);
        double ysum = 1.0;
        for (double xi : ratios.xi) ysum *= geometric_alpha_sum(xi, alpha);
        return std::log2(xsum * ysum) / (1.0 - alpha);
    };

    auto spectrum_entropy = [&](double alpha) -> double {
        if (std::isinf(alpha)) return -std::log2(spectrum.entries.front().occupancy);
        if (alpha == 1.0) {
            double s = 0.0;
            for (const auto& e : spectrum.entries)
                if (e.occupancy > 0.0) s -= e.occupancy * std::log2(e.occupancy);
            return s;
        }
        double sum = 0.0;
        for (const auto& e : spectrum.entries) sum += std::pow(e.occupancy, alpha);
        return std::log2(sum) / (1.0 - alpha);
    };

    auto closed_entropy = [&](double alpha) -> double {
        if (std::isinf(alpha)) return min_entropy(ratios);
        double s = alpha == 1.0 ? von_neumann_term(ratios.zeta, true)
                                : renyi_term(ratios.zeta, alpha, true);
        for (double xi : ratios.xi)
            s += alpha == 1.0 ? von_neumann_term(xi, false) : renyi_term(xi, alpha, false);
        return s;
    };

    for (double alpha : alphas) {
        CrosscheckRow row;
        row.alpha = alpha;
        row.closed_form = closed_entropy(alpha);
        row.spectrum_sum = spectrum_entropy(alpha);
        row.svd_based = svd_entropy(alpha);
        row.max_deviation = std::max({std::abs(row.closed_form - row.spectrum_sum),
                                      std::abs(row.closed_form - row.svd_based),
                                      std::abs(row.spectrum_sum - row.svd_based)});
        rep.rows.push_back(row);
    }

    rep.linear_closed = linear_entropy(ratios);
    double sq = 0.0;
    for (const auto& e : spectrum.entries) sq += e.occupancy * e.occupancy;
    rep.linear_spectrum = 1.0 - sq;
    rep.linear_deviation = std::abs(rep.linear_closed - rep.linear_spectrum);
    return rep;
}

}  // namespace wigner
