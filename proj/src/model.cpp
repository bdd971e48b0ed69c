#include "kerrint/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kerrint/constants.hpp"

namespace kerrint {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

void PhysicalParams::validate() const {
    require_positive(l, "l");
    require_positive(a_width, "a_width");
    require_positive(m, "m");
    require_positive(omega, "omega");
    require_positive(d, "d");
    require_positive(C0, "C0");
    require_positive(V0, "V0");
    if (!(Q_factor >= 1)) {
        throw std::invalid_argument("Q_factor must be >= 1");
    }
    if (!a_c && !chi) {
        throw std::invalid_argument("need at least one of a_c or chi");
    }
    if (a_c) require_positive(*a_c, "a_c");
    if (chi) require_positive(*chi, "chi");
    if (chi_b < 0 || !std::isfinite(chi_b)) {
        throw std::invalid_argument("chi_b must be non-negative and finite");
    }
}

double PhysicalParams::resolved_chi() const {
    if (chi) return *chi;
    if (a_c) return chi_from_critical_amplitude(*a_c, Q_factor);
    throw std::invalid_argument("no nonlinearity specified (a_c or chi)");
}

void ModelParams::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (v < 0 || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + " must be non-negative and finite");
        }
    };
    nonneg(gamma, "gamma");
    nonneg(beta_b, "beta_b");
    nonneg(Gamma_a, "Gamma_a");
    nonneg(Gamma_b, "Gamma_b");
    nonneg(kappa, "kappa");
    nonneg(n, "n");
    nonneg(t, "t");
    if (kappa > 0) {
        double expected = kPi / (4.0 * kappa);
        if (std::abs(delta_t - expected) > 1e-12 * expected) {
            throw std::invalid_argument("delta_t must equal pi/(4 kappa)");
        }
    }
}

double chi_from_critical_amplitude(double a_c, double Q_factor) {
    if (!(a_c > 0) || !(Q_factor > 0)) {
        throw std::domain_error("chi_from_critical_amplitude: inputs must be positive");
    }
    return 2.0 * std::sqrt(3.0) / (9.0 * a_c * a_c * Q_factor);
}

ModelParams derive_model_params(const PhysicalParams& p, double n, double t) {
    p.validate();
    if (n < 0 || t < 0) {
        throw std::invalid_argument("n and t must be non-negative");
    }
    ModelParams mp;
    mp.delta_x = std::sqrt(kHBar / (2.0 * p.m * p.omega));
    double dx2 = mp.delta_x * mp.delta_x;
    mp.gamma = 0.75 * p.omega * p.resolved_chi() * dx2;
    mp.beta_b = 0.75 * p.omega * p.chi_b * dx2;
    mp.kappa = p.C0 * p.V0 * p.V0 / (2.0 * p.m * p.omega * p.d * p.d);
    mp.Gamma_a = p.omega / p.Q_factor;
    mp.Gamma_b = mp.Gamma_a;
    mp.delta_t = kPi / (4.0 * mp.kappa);
    mp.n = n;
    mp.t = t;
    return mp;
}

RegimeReport classify_regime(const ModelParams& mp, double omega,
                             const RegimeThresholds& th) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    RegimeReport rep;

    double gt = mp.gamma * mp.t;
    double bt = mp.beta_b * mp.t;
    rep.gamma_t = gt;
    rep.beta_t = bt;
    rep.short_time_margin = mp.n * std::max(gt * gt, bt * bt);
    rep.short_time_valid = rep.short_time_margin < th.much_less;

    double sqn = std::sqrt(mp.n);
    // A linear arm (g = 0) dephases at any damping rate: ratio +inf.
    rep.damping_ratio_a =
        mp.gamma * sqn > 0 ? mp.Gamma_a / (mp.gamma * sqn) : (mp.Gamma_a > 0 ? inf : 0.0);
    rep.damping_ratio_b =
        mp.beta_b * sqn > 0 ? mp.Gamma_b / (mp.beta_b * sqn) : (mp.Gamma_b > 0 ? inf : 0.0);
    rep.Gamma_a_t_over_n = mp.n > 0 ? mp.Gamma_a * mp.t / mp.n : inf;
    rep.Gamma_b_t_over_n = mp.n > 0 ? mp.Gamma_b * mp.t / mp.n : inf;
    rep.strong_damping_valid =
        mp.Gamma_a > 0 && mp.Gamma_b > 0 &&
        rep.damping_ratio_a > th.much_greater && rep.damping_ratio_b > th.much_greater &&
        gt < th.much_less && bt < th.much_less &&
        rep.Gamma_a_t_over_n < th.much_less && rep.Gamma_b_t_over_n < th.much_less;

    rep.kappa_over_omega = omega > 0 ? mp.kappa / omega : inf;
    rep.kappa_t = mp.kappa * mp.t;
    rep.pulse_assumptions_valid =
        rep.kappa_over_omega < th.much_less && rep.kappa_t > th.much_greater;
    return rep;
}

}  // namespace kerrint
