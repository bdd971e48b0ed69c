#include "kerrint/kerr_analytics.hpp"

#include <cmath>
#include <vector>

#include "kerrint/constants.hpp"

namespace kerrint {

namespace {

// exp(z) - 1 without cancellation for small |z|.
std::complex<double> cexpm1(std::complex<double> z) {
    double x = z.real(), y = z.imag();
    double sy2 = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * sy2 * sy2, std::exp(x) * std::sin(y)};
}

}  // namespace

void KerrPoint::validate() const {
    if (n < 0 || Gamma < 0 || t < 0 || !std::isfinite(n) || !std::isfinite(g) ||
        !std::isfinite(Gamma) || !std::isfinite(t)) {
        throw std::domain_error("KerrPoint: n, Gamma, t must be non-negative and finite");
    }
}

PhaseKernels cr_dr(int r, double g, double Gamma, double t) {
    if (r != 2 && r != 4) throw std::domain_error("cr_dr: r must be 2 or 4");
    if (g < 0 || Gamma < 0 || t < 0) throw std::domain_error("cr_dr: negative input");
    if (g == 0 || t == 0) return {0.0, 0.0};
    std::complex<double> z(Gamma, r * g);
    std::complex<double> v = std::complex<double>(0.0, r * g) * (-cexpm1(-z * t)) / z;
    return {v.real(), v.imag()};
}

std::complex<double> first_moment(const KerrPoint& kp) {
    kp.validate();
    if (kp.n == 0) return {0.0, 0.0};
    // g < 0 via the parity identity: conjugate of the |g| evaluation.
    double g = std::abs(kp.g);
    PhaseKernels k2 = cr_dr(2, g, kp.Gamma, kp.t);
    double log_mag = 0.5 * std::log(kp.n) - 0.5 * (kp.Gamma * kp.t + kp.n * k2.c);
    double phase = -(g * kp.t + 0.5 * kp.n * k2.d);
    if (kp.g < 0) phase = -phase;
    return std::polar(std::exp(log_mag), phase);
}

std::pair<double, double> quadrature_second_moments(const KerrPoint& kp) {
    kp.validate();
    double g = std::abs(kp.g);  // s_x, s_y are even in g
    PhaseKernels k4 = cr_dr(4, g, kp.Gamma, kp.t);
    double base = 1.0 + 0.5 * kp.n * std::exp(-kp.Gamma * kp.t);
    double osc = 0.5 * kp.n * std::exp(-kp.Gamma * kp.t - 0.5 * kp.n * k4.c) *
                 std::cos(4.0 * g * kp.t + 0.5 * kp.n * k4.d);
    return {base + osc, base - osc};
}

ModeMoments mode_moments(const KerrPoint& kp) {
    ModeMoments mm;
    mm.first = first_moment(kp);
    auto [sx, sy] = quadrature_second_moments(kp);
    mm.s_x = sx;
    mm.s_y = sy;
    mm.n_total = kp.n;
    mm.t = kp.t;
    return mm;
}

double q_value(std::complex<double> alpha, double alpha0, double g, double Gamma,
               double t, double tail_tol, const QSeriesOptions& opts) {
    if (alpha0 < 0 || Gamma < 0 || t < 0 || !(tail_tol > 0)) {
        throw std::domain_error("q_value: invalid input");
    }
    const double amp = alpha0 / std::sqrt(2.0);  // per-arm coherent amplitude
    const double n = alpha0 * alpha0;
    const double r = std::abs(alpha) * amp;
    const double aa = std::norm(alpha);

    int p_max = opts.p_max_override > 0
                    ? opts.p_max_override
                    : static_cast<int>(
                          std::ceil(r + 10.0 * std::sqrt(std::max(r, 1.0)) + 20.0));
    p_max = std::min(p_max, opts.max_terms);
    // Poisson-tail truncation bound: grow p_max until the tail mass at mean r
    // drops below tail_tol, give up at max_terms.
    auto poisson_tail = [](double mean, int cut) {
        if (mean <= 0) return 0.0;
        double log_term = -mean;  // k = 0
        double head = 0.0;
        for (int k = 0; k < cut; ++k) {
            head += std::exp(log_term);
            log_term += std::log(mean) - std::log1p(k);
        }
        return std::max(0.0, 1.0 - head);
    };
    while (poisson_tail(r, p_max) >= tail_tol) {
        if (p_max >= opts.max_terms) {
            throw TruncationError("q_value: series tail above tail_tol at max_terms");
        }
        p_max = std::min(opts.max_terms, p_max + std::max(8, p_max / 4));
    }

    std::vector<double> lg(static_cast<std::size_t>(p_max) + 1);
    for (int k = 0; k <= p_max; ++k) lg[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);

    // Per-term exponent factors depend only on m = p - q.
    // Gamma > 0: L_m = (f_m + i delta_m) / (2 (1 + i delta_m)),
    //            f_m = exp(-Gamma t - 2 i g t m), delta_m = 2 g m / Gamma.
    // Gamma = 0: L_m -> 1/2.
    std::vector<std::complex<double>> E(2 * static_cast<std::size_t>(p_max) + 1);
    for (int m = -p_max; m <= p_max; ++m) {
        std::complex<double> L;
        if (Gamma == 0.0) {
            L = 0.5;
        } else {
            double delta = 2.0 * g * m / Gamma;
            std::complex<double> f = std::exp(std::complex<double>(-Gamma * t, -2.0 * g * t * m));
            L = (f + std::complex<double>(0.0, delta)) /
                (2.0 * (1.0 + std::complex<double>(0.0, delta)));
        }
        double re_exp = -n * L.real();
        if (re_exp > 700.0) {
            throw TruncationError("q_value: per-term factor overflows (n too large here)");
        }
        E[static_cast<std::size_t>(m + p_max)] =
            std::exp(std::complex<double>(re_exp, -n * L.imag()));
    }

    const double theta = (alpha == std::complex<double>(0.0, 0.0)) ? 0.0 : std::arg(alpha);
    const double log_r = r > 0 ? std::log(r) : 0.0;
    std::complex<double> total(0.0, 0.0);
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= p_max; ++q) {
            int s = p + q, m = p - q;
            if (r == 0.0 && s > 0) break;
            double log_mag = -aa + s * log_r - lg[static_cast<std::size_t>(p)] -
                             lg[static_cast<std::size_t>(q)] - 0.5 * Gamma * t * s;
            double phase = -theta * m - g * t * m * s;
            total += std::exp(std::complex<double>(log_mag, phase)) *
                     E[static_cast<std::size_t>(m + p_max)];
        }
    }
    return total.real() / kPi;
}

}  // namespace kerrint
