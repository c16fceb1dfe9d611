#pragma once

// Test-only integration oracles. Kept independent of the library code paths
// they verify.

#include <cmath>
#include <functional>
#include <vector>

namespace testq {

struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;  // include the exp(-x^2) weight
};

// Classic Newton-polished Gauss-Hermite rule (weight exp(-x^2)); the
// derivative-based weights keep full relative accuracy in the tails, which
// eigenvector-based Golub-Welsch weights do not.
inline GaussHermite gauss_hermite(int n) {
    const double pim4 = std::pow(M_PI, -0.25);
    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * gh.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * gh.nodes[1];
        else
            z = 2.0 * z - gh.nodes[i - 2];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 3e-14) break;
        }
        gh.nodes[i] = z;
        gh.nodes[n - 1 - i] = -z;
        gh.weights[i] = 2.0 / (pp * pp);
        gh.weights[n - 1 - i] = gh.weights[i];
    }
    return gh;
}

inline double trapezoid(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / (n - 1);
    double s = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < n - 1; ++i) s += f(lo + i * h);
    return s * h;
}

inline double trapezoid2d(const std::function<double(double, double)>& f, double lo, double hi,
                          int n) {
    const double h = (hi - lo) / (n - 1);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double x = lo + i * h;
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            row += wj * f(x, lo + j * h);
        }
        s += wi * row;
    }
    return s * h * h;
}

}  // namespace testq
