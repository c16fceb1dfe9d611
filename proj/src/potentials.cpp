#include "wigner/potentials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wigner {

namespace {

// Shared inverse-power forms so sip(beta, gamma=0) reproduces ip(beta) bit
// for bit.
double ip_value(double beta, double r) { return std::pow(r, -2.0 * beta); }
double ip_first(double beta, double r) { return -2.0 * beta * std::pow(r, -2.0 * beta - 1.0); }
double ip_second(double beta, double r) {
    return 2.0 * beta * (2.0 * beta + 1.0) * std::pow(r, -2.0 * beta - 2.0);
}
double ip_minimum(double beta, double g) {
    return std::pow(4.0 * g * beta, 1.0 / (2.0 * (beta + 1.0)));
}

std::string param_str(const char* fmt, double a, double b = 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

}  // namespace

PotentialEval InteractionPotential::evaluate(double r) const {
    if (!(r > 0.0)) throw std::domain_error("potential evaluated at r <= 0");
    PotentialEval e;
    e.value = value(r);
    e.first = first_derivative(r);
    e.second = second_derivative(r);
    e.overflow = !(std::isfinite(e.value) && std::isfinite(e.first) && std::isfinite(e.second));
    return e;
}

// ---- inverse power -------------------------------------------------------

InversePower::InversePower(double beta) : beta_(beta) {
    if (!(beta > 0.0) || beta > 50.0)
        throw std::domain_error("inverse power: beta must lie in (0, 50]");
}

double InversePower::value(double r) const { return ip_value(beta_, r); }
double InversePower::first_derivative(double r) const { return ip_first(beta_, r); }
double InversePower::second_derivative(double r) const { return ip_second(beta_, r); }
std::string InversePower::describe() const { return param_str("ip(beta=%.17g)", beta_); }

std::optional<double> InversePower::closed_form_minimum(double g) const {
    return ip_minimum(beta_, g);
}
std::optional<double> InversePower::closed_form_omega_sq(double, double) const {
    return beta_ + 1.0;
}
std::optional<double> InversePower::closed_form_epsilon_c() const {
    return std::sqrt(2.0 * (beta_ + 1.0) + 1.0);
}

// ---- inverse logarithmic -------------------------------------------------

double InverseLog::value(double r) const { return 1.0 / std::log1p(r); }

double InverseLog::first_derivative(double r) const {
    const double lg = std::log1p(r);
    return -1.0 / ((r + 1.0) * lg * lg);
}

double InverseLog::second_derivative(double r) const {
    const double lg = std::log1p(r);
    const double rp1 = r + 1.0;
    return (lg + 2.0) / (rp1 * rp1 * lg * lg * lg);
}

std::string InverseLog::describe() const { return "il()"; }

std::optional<double> InverseLog::closed_form_omega_sq(double, double x0) const {
    // algebraic reduction of the generic frequency ratio for this family
    const double lg = std::log1p(x0);
    return 0.5 * (1.0 + (2.0 / lg + 1.0) / (1.0 / x0 + 1.0));
}

// ---- screened inverse power ----------------------------------------------

ScreenedInversePower::ScreenedInversePower(double beta, double gamma)
    : beta_(beta), gamma_(gamma) {
    if (!(beta >= 0.0) || beta > 50.0)
        throw std::domain_error("screened inverse power: beta must lie in [0, 50]");
    if (!(gamma >= 0.0) || gamma > 50.0)
        throw std::domain_error("screened inverse power: gamma must lie in [0, 50]");
    if (beta == 0.0 && gamma == 0.0)
        throw std::domain_error("screened inverse power: beta and gamma cannot both vanish");
}

double ScreenedInversePower::value(double r) const {
    if (gamma_ == 0.0) return ip_value(beta_, r);
    return std::exp(-gamma_ * r) * std::pow(r, -2.0 * beta_);
}

double ScreenedInversePower::first_derivative(double r) const {
    if (gamma_ == 0.0) return ip_first(beta_, r);
    return -std::exp(-gamma_ * r) * std::pow(r, -2.0 * beta_ - 1.0) * (gamma_ * r + 2.0 * beta_);
}

double ScreenedInversePower::second_derivative(double r) const {
    if (gamma_ == 0.0) return ip_second(beta_, r);
    const double u = gamma_ * r;
    return std::exp(-gamma_ * r) * std::pow(r, -2.0 * beta_ - 2.0) *
           (u * u + 4.0 * beta_ * u + 2.0 * beta_ * (2.0 * beta_ + 1.0));
}

std::string ScreenedInversePower::describe() const {
    return param_str("sip(beta=%.17g,gamma=%.17g)", beta_, gamma_);
}

std::optional<double> ScreenedInversePower::closed_form_minimum(double g) const {
    if (gamma_ == 0.0) return ip_minimum(beta_, g);
    return std::nullopt;
}

std::optional<double> ScreenedInversePower::closed_form_omega_sq(double, double x0) const {
    if (gamma_ == 0.0) return beta_ + 1.0;
    const double u = gamma_ * x0;
    return 0.5 * (1.0 + 2.0 * beta_ / (2.0 * beta_ + u) + 2.0 * beta_ + u);
}

// ---- Gaussian repulsive ----------------------------------------------------

GaussianRepulsive::GaussianRepulsive(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || sigma > 1e3)
        throw std::domain_error("gaussian: sigma must lie in (0, 1e3]");
}

double GaussianRepulsive::value(double r) const {
    return std::exp(-r * r / (2.0 * sigma_ * sigma_));
}

double GaussianRepulsive::first_derivative(double r) const {
    return -r / (sigma_ * sigma_) * value(r);
}

double GaussianRepulsive::second_derivative(double r) const {
    const double s2 = sigma_ * sigma_;
    return (r * r / s2 - 1.0) / s2 * value(r);
}

std::string GaussianRepulsive::describe() const { return param_str("gr(sigma=%.17g)", sigma_); }

std::optional<double> GaussianRepulsive::closed_form_minimum(double g) const {
    const double t = std::log(2.0 * g / (sigma_ * sigma_));
    if (t < 0.0) throw std::domain_error("gaussian: g below sigma^2/2");
    return sigma_ * std::sqrt(2.0 * t);
}

std::optional<double> GaussianRepulsive::closed_form_omega_sq(double, double x0) const {
    return x0 * x0 / (2.0 * sigma_ * sigma_);
}

std::optional<double> GaussianRepulsive::closed_form_g_c() const {
    return sigma_ * sigma_ * std::exp(0.5) / 2.0;
}

double GaussianRepulsive::coupling_lower_bound() const { return sigma_ * sigma_ / 2.0; }

// ---- numeric-derivative adapter --------------------------------------------

NumericDerivativePotential::NumericDerivativePotential(std::function<double(double)> value,
                                                       std::string description)
    : f_(std::move(value)), description_(std::move(description)) {}

double NumericDerivativePotential::value(double r) const { return f_(r); }

double NumericDerivativePotential::first_derivative(double r) const {
    const double h = 1e-6 * std::max(1.0, r);
    auto central = [&](double step) { return (f_(r + step) - f_(r - step)) / (2.0 * step); };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

double NumericDerivativePotential::second_derivative(double r) const {
    const double h = 1e-4 * std::max(1.0, r);
    auto stencil = [&](double step) {
        return (f_(r + step) - 2.0 * f_(r) + f_(r - step)) / (step * step);
    };
    return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
}

std::string NumericDerivativePotential::describe() const { return description_; }

// ---- validation -------------------------------------------------------------

ValidityReport validate(const InteractionPotential& potential, std::span<const double> r_grid) {
    if (r_grid.empty()) throw std::invalid_argument("validate: empty grid");
    for (size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0)) throw std::invalid_argument("validate: grid radii must be > 0");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw std::invalid_argument("validate: grid must be strictly increasing");
    }

    ValidityReport rep;
    constexpr double kUnderflowFloor = 1e-280;  // below this the tail has left double range
    double prev = 0.0;
    for (size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        const double v = potential.value(r);
        const double dv = potential.first_derivative(r);
        const double d2v = potential.second_derivative(r);
        const bool underflowed = std::abs(v) < kUnderflowFloor || std::abs(dv) < kUnderflowFloor;

        if (!(v >= 0.0) || (!underflowed && v == 0.0)) {
            rep.positive = false;
            rep.bad_positive.push_back(r);
        }
        const bool mono_ok = underflowed ? (i == 0 || v <= prev) && dv <= 0.0
                                         : dv < 0.0 && (i == 0 || v < prev);
        if (!mono_ok) {
            rep.monotone_decreasing = false;
            rep.bad_monotone.push_back(r);
        }

        // Richardson-extrapolated central differences at relative step 1e-5 r;
        // underflowed tail points carry no derivative information to check.
        const double h = 1e-5 * r;
        if (!underflowed) {
            auto central = [&](auto&& f, double step) {
                return (f(r + step) - f(r - step)) / (2.0 * step);
            };
            auto value_fn = [&](double x) { return potential.value(x); };
            auto deriv_fn = [&](double x) { return potential.first_derivative(x); };
            const double fd1 =
                (4.0 * central(value_fn, h / 2.0) - central(value_fn, h)) / 3.0;
            const double fd2 =
                (4.0 * central(deriv_fn, h / 2.0) - central(deriv_fn, h)) / 3.0;
            const double scale1 = std::max(std::abs(dv), std::abs(v) / r);
            const double scale2 = std::max(std::abs(d2v), std::abs(dv) / r);
            if (std::abs(fd1 - dv) > 1e-6 * scale1 || std::abs(fd2 - d2v) > 1e-6 * scale2) {
                rep.derivatives_consistent = false;
                rep.bad_derivative.push_back(r);
            }
        }
        prev = v;
    }

    const double v_lo = potential.value(r_grid.front());
    const double v_hi = potential.value(r_grid.back());
    rep.decay_ratio = v_hi / v_lo;
    rep.decays = rep.positive && v_hi < 0.5 * v_lo;
    return rep;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

// ---- grammar parser ----------------------------------------------------------

namespace {

std::string strip_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

double parse_value(const std::string& token, const std::string& key) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0)
        throw std::domain_error("potential grammar: expected '" + prefix + "...', got '" +
                                token + "'");
    const std::string num = token.substr(prefix.size());
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(num, &used);
    } catch (const std::exception&) {
        throw std::domain_error("potential grammar: bad number in '" + token + "'");
    }
    if (used != num.size())
        throw std::domain_error("potential grammar: trailing junk in '" + token + "'");
    return v;
}

std::vector<std::string> split_args(const std::string& body) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= body.size()) {
        size_t comma = body.find(',', start);
        if (comma == std::string::npos) {
            if (start < body.size()) out.push_back(body.substr(start));
            break;
        }
        out.push_back(body.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::unique_ptr<InteractionPotential> parse_potential(std::string_view text) {
    const std::string s = strip_lower(text);
    if (s.empty()) throw std::domain_error("potential grammar: empty specification");

    std::string name = s;
    std::string body;
    const size_t open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')')
            throw std::domain_error("potential grammar: missing ')' in '" + s + "'");
        name = s.substr(0, open);
        body = s.substr(open + 1, s.size() - open - 2);
    }
    const auto args = split_args(body);

    auto expect_arity = [&](size_t n) {
        if (args.size() != n)
            throw std::domain_error("potential grammar: '" + name + "' takes " +
                                    std::to_string(n) + " parameter(s)");
    };

    if (name == "ip") {
        expect_arity(1);
        return std::make_unique<InversePower>(parse_value(args[0], "beta"));
    }
    if (name == "il") {
        expect_arity(0);
        return std::make_unique<InverseLog>();
    }
    if (name == "sip") {
        expect_arity(2);
        return std::make_unique<ScreenedInversePower>(parse_value(args[0], "beta"),
                                                      parse_value(args[1], "gamma"));
    }
    if (name == "gr") {
        expect_arity(1);
        return std::make_unique<GaussianRepulsive>(parse_value(args[0], "sigma"));
    }
    throw std::domain_error("potential grammar: unknown family '" + name + "'");
}

}  // namespace wigner
