#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "quadrature.hpp"
#include "wigner/spectrum.hpp"

using namespace wigner;

// references computed independently with 60-digit arithmetic
namespace ref {
constexpr double zeta_w2 = 0.029437251522859414;      // = 17 - 12 sqrt(2)
constexpr double xi_sqrt5 = 7.776129584474217e-4;
constexpr double xi_3 = 2.1673185916996310e-4;
constexpr double xi_1000 = 1.5625015625014160e-14;
constexpr double lam00 = 0.4852813742385703;          // = 6 sqrt(2) - 8
constexpr double lam10 = 0.014285349872819663;
constexpr double h0_at_0 = 0.7511255444649425;        // pi^(-1/4)
}  // namespace ref

namespace {

HarmonicApproximation calogero_ha(double g) {
    InversePower ip(1.0);
    return solve_harmonic({g, &ip});
}

}  // namespace

TEST_CASE("zeta ratio: value, zero and double zero") {
    CHECK(zeta_ratio(0.5) == 0.0);
    CHECK(zeta_ratio(2.0) == doctest::Approx(ref::zeta_w2).epsilon(1e-15));

    // zeta(1/2 + d) / d^2 -> 1/16 and the convergence is monotone in d
    double prev_err = 1e300;
    for (double d : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double ratio = zeta_ratio(0.5 + d) / (d * d);
        const double err = std::abs(ratio - 0.0625);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(zeta_ratio(0.5 + 1e-8) / 1e-16 == doctest::Approx(0.0625).epsilon(1e-6));
    // approaching from below as well
    CHECK(zeta_ratio(0.5 - 1e-8) / 1e-16 == doctest::Approx(0.0625).epsilon(1e-6));

    // increasing away from the minimum on both sides
    double prev = 0.0;
    for (double w = 0.5; w <= 5.0; w += 0.25) {
        const double z = zeta_ratio(w);
        if (w > 0.5) CHECK(z > prev);
        prev = z;
    }
    CHECK(zeta_ratio(0.1) > zeta_ratio(0.2));

    CHECK_THROWS_AS(zeta_ratio(0.0), std::domain_error);
    CHECK_THROWS_AS(zeta_ratio(-1.0), std::domain_error);
}

TEST_CASE("xi ratio: values and limits") {
    CHECK(xi_ratio(std::sqrt(5.0)) == doctest::Approx(ref::xi_sqrt5).epsilon(1e-14));
    CHECK(xi_ratio(3.0) == doctest::Approx(ref::xi_3).epsilon(1e-14));
    CHECK(xi_ratio(1000.0) == doctest::Approx(ref::xi_1000).epsilon(1e-13));

    CHECK(xi_ratio(1.0 + 1e-12) > 0.995);  // 1 - xi ~ 4 (eps^2-1)^{1/4}
    CHECK(xi_ratio(1.0 + 1e-12) < 1.0);
    CHECK(xi_ratio(1e8) < 1e-30);
    CHECK(xi_ratio(1e8) > 0.0);

    // strictly decreasing in eps
    double prev = 1.0;
    for (double e : {1.001, 1.1, 1.5, 2.0, 5.0, 50.0}) {
        const double x = xi_ratio(e);
        CHECK(x < prev);
        prev = x;
    }

    CHECK_THROWS_AS(xi_ratio(1.0), std::domain_error);
    CHECK_THROWS_AS(xi_ratio(0.5), std::domain_error);
}

TEST_CASE("trap geometry invariants") {
    CHECK_NOTHROW(TrapGeometry(3, {2.0, 3.0}));
    CHECK_THROWS_AS(TrapGeometry(2, {1.0}), std::domain_error);   // isotropic
    CHECK_THROWS_AS(TrapGeometry(2, {0.9}), std::domain_error);
    CHECK_THROWS_AS(TrapGeometry(3, {3.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(TrapGeometry(3, {2.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(TrapGeometry(1, {}), std::domain_error);
    CHECK_THROWS_AS(TrapGeometry(3, {2.0}), std::domain_error);
}

TEST_CASE("occupancies: frozen head values and exact parity degeneracy") {
    const SpectralRatios ratios{ref::zeta_w2, {0.0}, 0.0};  // Calogero, eps >> 1, s -> 0
    CHECK(occupancy(ratios, {0, {0}, Parity::plus}) ==
          doctest::Approx(ref::lam00).epsilon(1e-14));
    CHECK(occupancy(ratios, {1, {0}, Parity::plus}) ==
          doctest::Approx(ref::lam10).epsilon(1e-13));
    CHECK(occupancy(ratios, {0, {0}, Parity::plus}) ==
          occupancy(ratios, {0, {0}, Parity::minus}));
    CHECK(occupancy(ratios, {2, {0}, Parity::plus}) == 0.4852813742385703 * ref::zeta_w2 *
                                                           ref::zeta_w2);

    CHECK_THROWS_AS(occupancy(ratios, {-1, {0}, Parity::plus}), std::domain_error);
    CHECK_THROWS_AS(occupancy(ratios, {0, {0, 0}, Parity::plus}), std::domain_error);
}

TEST_CASE("rank-2 x branch: zeta = 0 kills every l >= 1") {
    const SpectralRatios ratios{0.0, {0.5}, 0.0};
    CHECK(occupancy(ratios, {0, {2}, Parity::plus}) == doctest::Approx(0.0625));
    CHECK(occupancy(ratios, {1, {0}, Parity::plus}) == 0.0);
    CHECK(occupancy(ratios, {3, {1}, Parity::minus}) == 0.0);
}

TEST_CASE("enumerate_spectrum: geometric example, order and masses") {
    const SpectralRatios ratios{0.0, {0.5}, 0.0};
    const auto spec = enumerate_spectrum(ratios, 1e-3);

    REQUIRE(spec.entries.size() >= 8);
    CHECK(spec.entries[0].occupancy == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(spec.entries[1].occupancy == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(spec.entries[2].occupancy == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(spec.entries[3].occupancy == doctest::Approx(0.125).epsilon(1e-15));
    // ties resolved by parity, + first
    CHECK(spec.entries[0].index.parity == Parity::plus);
    CHECK(spec.entries[1].index.parity == Parity::minus);
    CHECK(spec.entries[0].index.ltilde[0] == 0);
    CHECK(spec.entries[2].index.ltilde[0] == 1);

    // non-increasing order
    for (size_t i = 1; i < spec.entries.size(); ++i)
        CHECK(spec.entries[i].occupancy <= spec.entries[i - 1].occupancy);

    CHECK(spec.total_mass == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spec.captured_mass >= 1.0 - 1e-3);
    CHECK(spec.captured_mass <= 1.0 + 1e-15);
    CHECK(spec.omitted_mass < 1e-3);

    double direct = 0.0;
    for (const auto& e : spec.entries) direct += e.occupancy;
    CHECK(direct == doctest::Approx(spec.captured_mass).epsilon(1e-12));
}

TEST_CASE("enumerate_spectrum: Calogero at eps_c orders x above y excitations") {
    // zeta(2) > xi(sqrt 5), so Lambda_{1,0} > Lambda_{0,1}
    const SpectralRatios ratios{ref::zeta_w2, {ref::xi_sqrt5}, 0.0};
    CHECK(occupancy(ratios, {1, {0}, Parity::plus}) >
          occupancy(ratios, {0, {1}, Parity::plus}));

    const auto spec = enumerate_spectrum(ratios, 1e-10);
    CHECK(spec.entries[0].index.l == 0);
    CHECK(spec.entries[0].index.ltilde[0] == 0);
    CHECK(spec.entries[2].index.l == 1);
    CHECK(spec.entries[2].index.ltilde[0] == 0);
}

TEST_CASE("normalization identities via geometric sums") {
    const double s = 1e-5;
    const double zeta = 0.37;
    // partial sum plus analytic geometric tail reproduces 1/(2(1+s))
    double partial = 0.0;
    const int cut = 60;
    for (int l = 0; l < cut; ++l) partial += x_occupancy(zeta, s, l);
    const double tail =
        (1.0 - zeta) / (2.0 * (1.0 + s)) * std::pow(zeta, cut) / (1.0 - zeta);
    const double branch_sum = partial + tail;
    CHECK(std::abs(branch_sum - 1.0 / (2.0 * (1.0 + s))) < 1e-14);

    // y normalization is exactly 1
    const double xi = 0.81;
    double ysum = 0.0;
    for (int l = 0; l < 200; ++l) ysum += y_occupancy(xi, l);
    ysum += std::pow(xi, 200);  // analytic remainder of (1-xi) xi^l
    CHECK(std::abs(ysum - 1.0) < 1e-14);
}

TEST_CASE("enumerate_spectrum: D = 3 occupancies factor into coordinate products") {
    const SpectralRatios ratios{0.2, {0.3, 0.05}, 1e-12};
    const auto spec = enumerate_spectrum(ratios, 1e-8);
    for (size_t i = 0; i < spec.entries.size(); i += 97) {
        const auto& e = spec.entries[i];
        const double product = x_occupancy(0.2, 1e-12, e.index.l) *
                               y_occupancy(0.3, e.index.ltilde[0]) *
                               y_occupancy(0.05, e.index.ltilde[1]);
        CHECK(e.occupancy == doctest::Approx(product).epsilon(1e-15));
    }
    // against an explicit 2D x (extra y) double product on the head
    const SpectralRatios flat{0.2, {0.3}, 1e-12};
    const double lam_head = occupancy(flat, {1, {2}, Parity::plus});
    CHECK(occupancy(ratios, {1, {2, 3}, Parity::plus}) ==
          doctest::Approx(lam_head * y_occupancy(0.05, 3)).epsilon(1e-15));
}

TEST_CASE("enumerate_spectrum: unreachable tail bound reports achieved mass") {
    const SpectralRatios ratios{0.0, {0.999}, 0.0};
    CHECK_THROWS_AS(enumerate_spectrum(ratios, 1e-10, 500), TruncationError);
    try {
        enumerate_spectrum(ratios, 1e-10, 500);
    } catch (const TruncationError& e) {
        CHECK(e.achieved_omitted_mass > 1e-10);
        CHECK(e.achieved_omitted_mass < 1.0);
    }
    CHECK_THROWS_AS(enumerate_spectrum(ratios, 0.0), std::invalid_argument);
}

TEST_CASE("hermite functions: values, parity, stability cap") {
    CHECK(hermite_function(0, 0.0) == doctest::Approx(ref::h0_at_0).epsilon(1e-15));
    CHECK(hermite_function(1, 0.0) == 0.0);
    CHECK(hermite_function(17, 0.0) == 0.0);
    CHECK_THROWS_AS(hermite_function(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hermite_function(501, 0.0), std::invalid_argument);
    CHECK_NOTHROW(hermite_function(500, 1.0));
}

TEST_CASE("hermite orthonormality against the Gauss-Hermite oracle") {
    const auto gh = testq::gauss_hermite(64);
    double worst = 0.0;
    for (int l = 0; l <= 30; l += 3) {
        for (int m = l; m <= 30; m += 3) {
            double acc = 0.0;
            for (size_t i = 0; i < gh.nodes.size(); ++i) {
                const double x = gh.nodes[i];
                const double lift = std::exp(0.5 * x * x);
                acc += gh.weights[i] * (hermite_function(l, x) * lift) *
                       (hermite_function(m, x) * lift);
            }
            worst = std::max(worst, std::abs(acc - (l == m ? 1.0 : 0.0)));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("natural orbitals: parity is exact in floating point") {
    const auto ha = calogero_ha(1e4);
    for (double u : {0.3, 1.7, 5.0, 7.2, 11.0}) {
        CHECK(natural_orbital_x(ha, 0, Parity::plus, u) ==
              natural_orbital_x(ha, 0, Parity::plus, -u));
        CHECK(natural_orbital_x(ha, 0, Parity::minus, u) ==
              -natural_orbital_x(ha, 0, Parity::minus, -u));
        CHECK(natural_orbital_x(ha, 1, Parity::plus, u) ==
              -natural_orbital_x(ha, 1, Parity::plus, -u));
    }
}

TEST_CASE("natural orbitals: orthonormality at large g by quadrature") {
    const auto ha = calogero_ha(1e4);
    const double half = 0.5 * ha.x0 + 12.0;
    const int n = 6001;

    for (int l = 0; l <= 5; ++l) {
        for (int m = 0; m <= 5; ++m) {
            const double pp = testq::trapezoid(
                [&](double u) {
                    return natural_orbital_x(ha, l, Parity::plus, u) *
                           natural_orbital_x(ha, m, Parity::plus, u);
                },
                -half, half, n);
            const double mm = testq::trapezoid(
                [&](double u) {
                    return natural_orbital_x(ha, l, Parity::minus, u) *
                           natural_orbital_x(ha, m, Parity::minus, u);
                },
                -half, half, n);
            const double pm = testq::trapezoid(
                [&](double u) {
                    return natural_orbital_x(ha, l, Parity::plus, u) *
                           natural_orbital_x(ha, m, Parity::minus, u);
                },
                -half, half, n);
            const double want = l == m ? 1.0 : 0.0;
            CAPTURE(l);
            CAPTURE(m);
            CHECK(std::abs(pp - want) < 1e-12);
            CHECK(std::abs(mm - want) < 1e-12);
            CHECK(std::abs(pm) < 1e-12);
        }
    }
}

TEST_CASE("transverse natural orbitals are orthonormal") {
    const double eps = 3.0;
    for (int l = 0; l <= 4; ++l)
        for (int m = l; m <= 4; ++m) {
            const double ov = testq::trapezoid(
                [&](double v) {
                    return natural_orbital_y(eps, l, v) * natural_orbital_y(eps, m, v);
                },
                -9.0, 9.0, 4001);
            CHECK(std::abs(ov - (l == m ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("pair wavefunctions are normalized") {
    const auto ha = calogero_ha(1e4);
    const double half = 0.5 * ha.x0 + 10.0;
    const double nx = testq::trapezoid2d(
        [&](double a, double b) {
            const double v = psi_x(ha, a, b);
            return v * v;
        },
        -half, half, 1201);
    CHECK(nx == doctest::Approx(1.0).epsilon(1e-8));

    const double ny = testq::trapezoid2d(
        [&](double a, double b) {
            const double v = psi_y(3.0, a, b);
            return v * v;
        },
        -7.0, 7.0, 801);
    CHECK(ny == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("ground state: exchange symmetry is exact and factors multiply") {
    const auto ha = calogero_ha(1e4);
    const TrapGeometry geometry(3, {2.0, 3.0});
    const std::vector<double> r1{-7.0, 0.3, -0.2};
    const std::vector<double> r2{7.1, -0.4, 0.6};
    const double v12 = ground_state(ha, geometry, r1, r2);
    const double v21 = ground_state(ha, geometry, r2, r1);
    CHECK(v12 == v21);
    CHECK(v12 == doctest::Approx(psi_x(ha, -7.0, 7.1) * psi_y(2.0, 0.3, -0.4) *
                                 psi_y(3.0, -0.2, 0.6))
                     .epsilon(1e-15));
    CHECK_THROWS_AS(ground_state(ha, geometry, std::vector<double>{1.0}, r2),
                    std::invalid_argument);
}

TEST_CASE("full 2D ground state is normalized at large coupling") {
    const auto ha = calogero_ha(1e4);
    const double half = 0.5 * ha.x0 + 10.0;
    const double nx = testq::trapezoid2d(
        [&](double a, double b) {
            const double v = psi_x(ha, a, b);
            return v * v;
        },
        -half, half, 1201);
    const double ny = testq::trapezoid2d(
        [&](double a, double b) {
            const double v = psi_y(3.0, a, b);
            return v * v;
        },
        -7.0, 7.0, 801);
    CHECK(nx * ny == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Schmidt series with 40 terms reproduces psi_x pointwise") {
    const auto ha = calogero_ha(1e4);
    const double zeta = zeta_ratio(ha.omega_x_sq);
    const double a = 0.5 * ha.x0;
    const double kappa = orbital_scale_x(ha);

    const std::vector<std::pair<double, double>> pts{
        {-7.0710678, 7.0710678}, {-6.6, 7.5}, {-7.5, 6.6}, {-7.8, 7.3}, {-5.9, 8.4}};
    for (const auto& [x1, x2] : pts) {
        double series = 0.0;
        double series_pm = 0.0;
        for (int l = 0; l < 40; ++l) {
            const double lam = std::sqrt(x_occupancy(zeta, ha.overlap, l));
            series += lam * (oscillator_function(l, kappa, x1 - a) *
                                 oscillator_function(l, kappa, x2 + a) +
                             oscillator_function(l, kappa, x1 + a) *
                                 oscillator_function(l, kappa, x2 - a));
            series_pm += lam * (natural_orbital_x(ha, l, Parity::plus, x1) *
                                    natural_orbital_x(ha, l, Parity::plus, x2) -
                                natural_orbital_x(ha, l, Parity::minus, x1) *
                                    natural_orbital_x(ha, l, Parity::minus, x2));
        }
        const double direct = psi_x(ha, x1, x2);
        CHECK(series == doctest::Approx(direct).epsilon(1e-10));
        CHECK(series_pm == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("spectrum CSV dump format") {
    const SpectralRatios ratios{0.0, {0.5}, 0.0};
    const auto spec = enumerate_spectrum(ratios, 1e-3);
    const std::string csv = spectrum_csv(spec, 2);
    CHECK(csv.rfind("l,ltilde,parity,occupancy\n", 0) == 0);
    CHECK(csv.find("0,0,+,2.5000000000000000e-01\n") != std::string::npos);
    CHECK(csv.find("0,0,-,2.5000000000000000e-01\n") != std::string::npos);

    const SpectralRatios r3{0.1, {0.2, 0.3}, 0.0};
    const auto spec3 = enumerate_spectrum(r3, 1e-4);
    CHECK(spectrum_csv(spec3, 3).rfind("l,ltilde1,ltilde2,parity,occupancy\n", 0) == 0);
}
