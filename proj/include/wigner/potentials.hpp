#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wigner {

/// Value and first two radial derivatives of an interaction potential at one r.
/// `overflow` is set instead of throwing when the closed form leaves double
/// range (e.g. r -> 0 for an inverse power); the components then hold the
/// signed infinities so sweep code can skip the point.
struct PotentialEval {
    double value = 0.0;
    double first = 0.0;
    double second = 0.0;
    bool overflow = false;
};

/// Radially symmetric repulsive interaction V(r; {gamma_i}) in oscillator
/// units, with analytic first and second derivatives. Valid families satisfy
/// V > 0, V' < 0 and V -> 0 as r -> infinity; validate() checks these on a
/// grid.
class InteractionPotential {
  public:
    virtual ~InteractionPotential() = default;

    virtual double value(double r) const = 0;
    virtual double first_derivative(double r) const = 0;
    virtual double second_derivative(double r) const = 0;

    /// Grammar form, e.g. "ip(beta=1)". Used in reports and CSV headers.
    virtual std::string describe() const = 0;

    /// Closed-form minimum abscissa x0(g) of the effective potential, when the
    /// family has one. Generic families fall back to bracketed root finding.
    virtual std::optional<double> closed_form_minimum(double /*g*/) const { return std::nullopt; }

    /// Closed-form squared HA frequency given the solved minimum.
    virtual std::optional<double> closed_form_omega_sq(double /*g*/, double /*x0*/) const {
        return std::nullopt;
    }

    /// Anisotropy at which the relative HA Hamiltonian is locally isotropic,
    /// when g-independent (inverse power only).
    virtual std::optional<double> closed_form_epsilon_c() const { return std::nullopt; }

    /// Coupling at which omega_x^2 = 1/2, when the family has a closed form.
    virtual std::optional<double> closed_form_g_c() const { return std::nullopt; }

    /// Strict lower bound on admissible g (Gaussian: sigma^2/2; 0 otherwise).
    virtual double coupling_lower_bound() const { return 0.0; }

    /// Value + derivatives at r > 0. Throws std::domain_error for r <= 0;
    /// tags non-finite results as overflow instead of throwing.
    PotentialEval evaluate(double r) const;
};

/// V = r^{-2 beta}. beta = 1 is the Calogero model, beta = 1/2 the Hook model.
class InversePower final : public InteractionPotential {
  public:
    explicit InversePower(double beta);

    double value(double r) const override;
    double first_derivative(double r) const override;
    double second_derivative(double r) const override;
    std::string describe() const override;
    std::optional<double> closed_form_minimum(double g) const override;
    std::optional<double> closed_form_omega_sq(double g, double x0) const override;
    std::optional<double> closed_form_epsilon_c() const override;

    double beta() const { return beta_; }

  private:
    double beta_;
};

/// V = 1 / ln(r + 1). Parameter-free.
class InverseLog final : public InteractionPotential {
  public:
    double value(double r) const override;
    double first_derivative(double r) const override;
    double second_derivative(double r) const override;
    std::string describe() const override;
    std::optional<double> closed_form_omega_sq(double g, double x0) const override;
};

/// V = exp(-gamma r) / r^{2 beta}; 1/gamma is the cut-off distance.
/// gamma = 0 reproduces InversePower bit for bit.
class ScreenedInversePower final : public InteractionPotential {
  public:
    ScreenedInversePower(double beta, double gamma);

    double value(double r) const override;
    double first_derivative(double r) const override;
    double second_derivative(double r) const override;
    std::string describe() const override;
    std::optional<double> closed_form_minimum(double g) const override;
    std::optional<double> closed_form_omega_sq(double g, double x0) const override;

    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

  private:
    double beta_;
    double gamma_;
};

/// V = exp(-r^2 / (2 sigma^2)); sigma is the half width.
class GaussianRepulsive final : public InteractionPotential {
  public:
    explicit GaussianRepulsive(double sigma);

    double value(double r) const override;
    double first_derivative(double r) const override;
    double second_derivative(double r) const override;
    std::string describe() const override;
    std::optional<double> closed_form_minimum(double g) const override;
    std::optional<double> closed_form_omega_sq(double g, double x0) const override;
    std::optional<double> closed_form_g_c() const override;
    double coupling_lower_bound() const override;

    double sigma() const { return sigma_; }

  private:
    double sigma_;
};

/// Adapter for user potentials that only provide a value callable.
/// Derivatives by Richardson-extrapolated central differences,
/// step 1e-6*max(1,r) for V' and 1e-4*max(1,r) for V''.
class NumericDerivativePotential final : public InteractionPotential {
  public:
    NumericDerivativePotential(std::function<double(double)> value, std::string description);

    double value(double r) const override;
    double first_derivative(double r) const override;
    double second_derivative(double r) const override;
    std::string describe() const override;

  private:
    std::function<double(double)> f_;
    std::string description_;
};

/// Per-check outcome of validate(); offending abscissas listed per failed check.
struct ValidityReport {
    bool positive = true;
    bool monotone_decreasing = true;
    bool decays = true;
    bool derivatives_consistent = true;

    std::vector<double> bad_positive;
    std::vector<double> bad_monotone;
    std::vector<double> bad_derivative;
    double decay_ratio = 0.0;  // V(r_max) / V(r_min)

    bool all_ok() const {
        return positive && monotone_decreasing && decays && derivatives_consistent;
    }
};

/// Checks repulsiveness, monotone decrease, decay and derivative consistency
/// on a strictly increasing grid of positive radii. First derivatives are
/// compared against Richardson-extrapolated central differences of the value
/// at relative step 1e-5 r, second derivatives against the same stencil on
/// the analytic first derivative, both at relative tolerance 1e-6. Grid
/// points whose value or slope has underflowed double range are exempt from
/// the sign and derivative checks (the tail has decayed to zero there).
ValidityReport validate(const InteractionPotential& potential, std::span<const double> r_grid);

/// Log-spaced grid, inclusive endpoints.
std::vector<double> log_grid(double lo, double hi, int n);

/// Parses the potential grammar: ip(beta=<f>), il(), sip(beta=<f>,gamma=<f>),
/// gr(sigma=<f>). Case-insensitive, whitespace-tolerant.
/// Throws std::domain_error on unknown families, malformed syntax or
/// out-of-range parameters (beta in (0,50], gamma in [0,50], sigma in (0,1e3]).
std::unique_ptr<InteractionPotential> parse_potential(std::string_view text);

}  // namespace wigner
