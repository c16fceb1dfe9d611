#include "wigner/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "wigner/format.hpp"

namespace wigner {

TrapGeometry::TrapGeometry(int dim_, std::vector<double> eps_)
    : dim(dim_), eps(std::move(eps_)) {
    if (dim < 2) throw std::domain_error("trap geometry: dimension must be >= 2");
    if (static_cast<int>(eps.size()) != dim - 1)
        throw std::domain_error("trap geometry: need D-1 anisotropy parameters");
    for (size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 1.0))
            throw std::domain_error(
                "trap geometry: eps must be > 1 (isotropic trap has no discrete minima)");
        if (i > 0 && !(eps[i] > eps[i - 1]))
            throw std::domain_error("trap geometry: eps must be strictly increasing");
    }
}

double zeta_ratio(double omega_x_sq) {
    if (!(omega_x_sq > 0.0)) throw std::domain_error("zeta: omega_x^2 must be > 0");
    const double two_w = 2.0 * omega_x_sq;
    const double t = std::pow(two_w, 0.25);
    // t - 1 = (two_w - 1) / ((t+1)(t^2+1)); keeps the double zero at 1/2 exact
    const double num = two_w - 1.0;
    const double den = (t + 1.0) * (t + 1.0) * (t * t + 1.0);
    const double q = num / den;
    return q * q;
}

double xi_ratio(double eps) {
    if (!(eps > 1.0)) throw std::domain_error("xi: eps must be > 1 (isotropic limit diverges)");
    const double u = (eps - 1.0) * (eps + 1.0);  // eps^2 - 1 without cancellation
    const double a2 = std::sqrt(u);
    const double a = std::sqrt(a2);
    const double b = std::sqrt(eps);
    // a^4 - b^4 = -1 exactly, so a - b = -1 / ((a+b)(a^2+b^2))
    const double q = 1.0 / ((a + b) * (a + b) * (a2 + eps));
    return q * q;
}

SpectralRatios spectral_ratios(const HarmonicApproximation& ha, const TrapGeometry& geometry) {
    SpectralRatios r;
    r.zeta = zeta_ratio(ha.omega_x_sq);
    r.xi.reserve(geometry.eps.size());
    for (double e : geometry.eps) r.xi.push_back(xi_ratio(e));
    r.overlap = ha.overlap;
    return r;
}

double x_occupancy(double zeta, double overlap, int l) {
    return (1.0 - zeta) / (2.0 * (1.0 + overlap)) * std::pow(zeta, l);
}

double y_occupancy(double xi, int ltilde) { return (1.0 - xi) * std::pow(xi, ltilde); }

double occupancy(const SpectralRatios& ratios, const OccupancyIndex& index) {
    if (index.l < 0) throw std::domain_error("occupancy: negative index");
    if (index.ltilde.size() != ratios.xi.size())
        throw std::domain_error("occupancy: transverse label count mismatch");
    double v = x_occupancy(ratios.zeta, ratios.overlap, index.l);
    for (size_t i = 0; i < ratios.xi.size(); ++i) {
        if (index.ltilde[i] < 0) throw std::domain_error("occupancy: negative index");
        v *= y_occupancy(ratios.xi[i], index.ltilde[i]);
    }
    return v;
}

namespace {

// Smallest label count whose geometric remainder ratio^cap stays below tau.
int geometric_cap(double ratio, double tau, int index_cap) {
    if (ratio <= 0.0) return 1;
    const int cap = static_cast<int>(std::ceil(std::log(tau) / std::log(ratio)));
    return std::clamp(cap, 1, index_cap);
}

bool index_less(const OccupancyIndex& a, const OccupancyIndex& b) {
    if (a.l != b.l) return a.l < b.l;
    if (a.ltilde != b.ltilde) return a.ltilde < b.ltilde;
    return a.parity == Parity::plus && b.parity == Parity::minus;
}

}  // namespace

SpectrumList enumerate_spectrum(const SpectralRatios& ratios, double tail_bound, int index_cap) {
    if (!(tail_bound > 0.0) || tail_bound >= 1.0)
        throw std::invalid_argument("enumerate_spectrum: tail_bound must lie in (0,1)");

    const size_t ny = ratios.xi.size();
    SpectrumList out;
    out.total_mass = 1.0 / (1.0 + ratios.overlap);

    // Per-coordinate relative remainder targets; rectangle truncation keeps the
    // omitted mass analytic.
    const double tau = tail_bound / (out.total_mass * static_cast<double>(1 + ny));
    const int lx = geometric_cap(ratios.zeta, tau, index_cap);
    std::vector<int> ly(ny);
    for (size_t i = 0; i < ny; ++i) ly[i] = geometric_cap(ratios.xi[i], tau, index_cap);

    double covered = 1.0 - std::pow(ratios.zeta, lx);
    for (size_t i = 0; i < ny; ++i) covered *= 1.0 - std::pow(ratios.xi[i], ly[i]);
    out.omitted_mass = out.total_mass * (1.0 - covered);
    out.captured_mass = out.total_mass * covered;
    if (out.omitted_mass > tail_bound)
        throw TruncationError("enumerate_spectrum: tail_bound unreachable within index cap " +
                                  std::to_string(index_cap) + "; omitted mass " +
                                  float17(out.omitted_mass),
                              out.omitted_mass);

    size_t rect = 1;
    for (int c : ly) rect *= static_cast<size_t>(c);
    out.entries.reserve(2 * static_cast<size_t>(lx) * rect);

    OccupancyIndex idx;
    idx.ltilde.assign(ny, 0);
    for (idx.l = 0; idx.l < lx; ++idx.l) {
        std::fill(idx.ltilde.begin(), idx.ltilde.end(), 0);
        while (true) {
            idx.parity = Parity::plus;
            const double v = occupancy(ratios, idx);
            out.entries.push_back({idx, v});
            idx.parity = Parity::minus;
            out.entries.push_back({idx, v});

            // odometer over the transverse labels
            size_t k = 0;
            while (k < ny && idx.ltilde[k] + 1 >= ly[k]) {
                idx.ltilde[k] = 0;
                ++k;
            }
            if (k == ny) break;
            ++idx.ltilde[k];
        }
    }

    std::sort(out.entries.begin(), out.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) {
                  if (a.occupancy != b.occupancy) return a.occupancy > b.occupancy;
                  return index_less(a.index, b.index);
              });
    return out;
}

double hermite_function(int l, double u, int cap) {
    if (l < 0 || l > cap)
        throw std::invalid_argument("hermite_function: label outside [0, cap]");
    const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u);
    if (l == 0) return h0;
    double prev = h0;
    double cur = std::sqrt(2.0) * u * h0;
    for (int k = 1; k < l; ++k) {
        const double next =
            std::sqrt(2.0 / (k + 1.0)) * u * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double oscillator_function(int l, double kappa, double u) {
    return std::sqrt(kappa) * hermite_function(l, kappa * u);
}

double orbital_scale_x(const HarmonicApproximation& ha) {
    return std::pow(std::sqrt(2.0) * std::sqrt(ha.omega_x_sq), 0.25);
}

double orbital_scale_y(double eps) {
    if (!(eps > 1.0)) throw std::domain_error("orbital_scale_y: eps must be > 1");
    return std::pow(eps * std::sqrt((eps - 1.0) * (eps + 1.0)), 0.25);
}

double natural_orbital_x(const HarmonicApproximation& ha, int l, Parity parity, double u) {
    const double kappa = orbital_scale_x(ha);
    const double a = 0.5 * ha.x0;
    const double right = oscillator_function(l, kappa, u - a);
    const double left = oscillator_function(l, kappa, u + a);
    const double sq2 = std::sqrt(2.0);
    return parity == Parity::plus ? (left + right) / sq2 : (right - left) / sq2;
}

double natural_orbital_y(double eps, int m, double v) {
    return oscillator_function(m, orbital_scale_y(eps), v);
}

double psi_x(const HarmonicApproximation& ha, double x1, double x2) {
    const double omega = std::sqrt(ha.omega_x_sq);
    const double w = std::sqrt(2.0) * omega;
    const double qa = 0.25 * (1.0 + w);
    const double qb = 0.5 * (1.0 - w);
    const double a = 0.5 * ha.x0;
    auto q = [&](double u, double v) { return std::exp(-qa * (u * u + v * v) - qb * u * v); };
    const double cx =
        std::sqrt(std::sqrt(omega) / (std::pow(2.0, 0.75) * M_PI * (1.0 + ha.overlap)));
    return cx * (q(x1 - a, x2 + a) + q(x1 + a, x2 - a));
}

double psi_y(double eps, double y1, double y2) {
    const double root = std::sqrt((eps - 1.0) * (eps + 1.0));
    const double cy = std::sqrt(std::sqrt(eps * root) / M_PI);
    return cy * std::exp(-0.25 * (eps + root) * (y1 * y1 + y2 * y2) -
                         0.5 * (eps - root) * y1 * y2);
}

double ground_state(const HarmonicApproximation& ha, const TrapGeometry& geometry,
                    std::span<const double> r1, std::span<const double> r2) {
    if (static_cast<int>(r1.size()) != geometry.dim ||
        static_cast<int>(r2.size()) != geometry.dim)
        throw std::invalid_argument("ground_state: coordinate count must equal D");
    double v = psi_x(ha, r1[0], r2[0]);
    for (int i = 1; i < geometry.dim; ++i) v *= psi_y(geometry.eps[i - 1], r1[i], r2[i]);
    return v;
}

std::string spectrum_csv(const SpectrumList& spectrum, int dim) {
    std::string out = "l";
    if (dim == 2) {
        out += ",ltilde";
    } else {
        for (int i = 1; i < dim; ++i) out += ",ltilde" + std::to_string(i);
    }
    out += ",parity,occupancy\n";
    for (const auto& e : spectrum.entries) {
        out += std::to_string(e.index.l);
        for (int lt : e.index.ltilde) out += ',' + std::to_string(lt);
        out += e.index.parity == Parity::plus ? ",+," : ",-,";
        out += float17(e.occupancy);
        out += '\n';
    }
    return out;
}

}  // namespace wigner
