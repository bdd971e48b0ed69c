#pragma once

#include <optional>

namespace kerrint {

/// Device-level description of one pair of coupled flexural resonators.
/// All quantities in SI units. Both resonators share m, omega, Q; the
/// Duffing coefficients may differ (chi for mode a, chi_b for mode b).
struct PhysicalParams {
    double l = 0;         // bar length [m]
    double a_width = 0;   // lateral width [m]
    double m = 0;         // effective mass [kg]
    double omega = 0;     // angular frequency [rad/s]
    double d = 0;         // characteristic capacitive gap [m]
    double f = 1.0;       // geometry factor, order unity; stored but not used
                          // by the reduced model (only the cross term survives)
    double C0 = 0;        // equilibrium capacitance [F]
    double V0 = 0;        // bias voltage [V]
    double Q_factor = 0;  // mechanical quality factor

    // Nonlinearity of mode a: either chi directly or a_c (critical amplitude),
    // at least one must be present.
    std::optional<double> a_c;  // [m]
    std::optional<double> chi;  // [1/m^2]
    double chi_b = 0.0;         // mode-b Duffing coefficient [1/m^2], 0 = linear arm

    /// Throws std::invalid_argument on non-positive dimensional fields,
    /// Q_factor < 1, or a missing nonlinearity spec.
    void validate() const;

    /// Duffing coefficient of mode a. Prefers the direct chi; falls back to
    /// the a_c route. If both are present and disagree by more than 10%,
    /// the direct value still wins (the config loader emits the warning).
    double resolved_chi() const;
};

/// Reduced model coefficients entering the interferometer formulas.
struct ModelParams {
    double gamma = 0;    // Kerr rate of mode a [1/s]
    double beta_b = 0;   // Kerr rate of mode b [1/s]
    double Gamma_a = 0;  // damping rate of mode a [1/s]
    double Gamma_b = 0;  // damping rate of mode b [1/s]
    double kappa = 0;    // beamsplitter coupling strength [1/s]
    double delta_x = 0;  // ground-state half-width [m]
    double n = 0;        // mean phonon number of the input coherent state
    double t = 0;        // inter-pulse evolution time [s]
    double delta_t = 0;  // beamsplitter pulse duration, pi/(4 kappa) [s]

    void validate() const;
};

/// Order-of-magnitude reading of the asymptotic conditions: "x << y" is taken
/// as x/y < much_less, "x >> y" as x/y > much_greater. Overridable from the
/// configuration file.
struct RegimeThresholds {
    double much_less = 0.1;
    double much_greater = 10.0;
};

/// Which closed-form approximations are trustworthy at a parameter point,
/// together with the margins the decision was based on.
struct RegimeReport {
    bool short_time_valid = false;
    double short_time_margin = 0;  // max of n (gamma t)^2 and n (beta t)^2

    bool strong_damping_valid = false;
    double damping_ratio_a = 0;  // Gamma_a / (gamma sqrt(n)); +inf for a linear arm
    double damping_ratio_b = 0;  // Gamma_b / (beta  sqrt(n))
    double gamma_t = 0;
    double beta_t = 0;
    double Gamma_a_t_over_n = 0;
    double Gamma_b_t_over_n = 0;

    bool pulse_assumptions_valid = false;
    double kappa_over_omega = 0;  // must be << 1 (rotating wave)
    double kappa_t = 0;           // must be >> 1 (instantaneous pulses)
};

/// chi = 2 sqrt(3) / (9 a_c^2 Q), the standard route from the measured
/// critical amplitude of forced bistable oscillations.
double chi_from_critical_amplitude(double a_c, double Q_factor);

/// Reduce device parameters to model coefficients:
///   delta_x = sqrt(hbar / 2 m omega)
///   gamma   = (3/4) omega chi delta_x^2      (same formula for beta_b)
///   kappa   = C0 V0^2 / (2 m omega d^2)
///   Gamma   = omega / Q                      (both modes)
///   delta_t = pi / (4 kappa)
ModelParams derive_model_params(const PhysicalParams& p, double n, double t);

RegimeReport classify_regime(const ModelParams& mp, double omega,
                             const RegimeThresholds& th = {});

}  // namespace kerrint
