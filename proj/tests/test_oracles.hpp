#pragma once

// Test-only numerical oracles, kept independent of the library paths they
// check: adaptive Simpson quadrature for the phase-kernel integrals and a
// 2-D trapezoid rule over the phase-space grid for Q-function moments.

#include <cmath>
#include <complex>
#include <functional>

#include "kerrint/kerr_analytics.hpp"

namespace test_oracles {

using cplx = std::complex<double>;

inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                    cplx fm, cplx fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cplx flm = f(lm), frm = f(rm);
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

inline cplx integrate(const std::function<cplx(double)>& f, double a, double b,
                      double tol = 1e-14) {
    double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

/// Independent evaluation of (c, d): c + i d = i r g Int_0^t e^{-(Gamma + i r g)s} ds
/// by adaptive quadrature of the real integrand pair.
inline kerrint::PhaseKernels cr_dr_by_quadrature(int r, double g, double Gamma, double t) {
    cplx I = integrate(
        [&](double s) {
            return std::exp(cplx(-Gamma * s, 0.0)) *
                   cplx(std::cos(r * g * s), -std::sin(r * g * s));
        },
        0.0, t, 1e-16);
    cplx v = cplx(0.0, r * g) * I;
    return {v.real(), v.imag()};
}

struct QGridMoments {
    double mass = 0;
    cplx first = 0;  // sqrt(2) * Int alpha Q d^2alpha
    double s_x = 0;  // 2 Int (Re alpha)^2 Q
    double s_y = 0;  // 2 Int (Im alpha)^2 Q
};

/// Trapezoid quadrature of the Q series over [-L, L]^2 with step h. The
/// integrand decays like a Gaussian, so the rule is effectively spectral.
inline QGridMoments q_grid_moments(double alpha0, double g, double Gamma, double t,
                                   double h, double L) {
    QGridMoments out;
    long count = std::lround(2.0 * L / h);
    for (long i = 0; i <= count; ++i) {
        double x = -L + h * static_cast<double>(i);
        double wx = (i == 0 || i == count) ? 0.5 : 1.0;
        for (long j = 0; j <= count; ++j) {
            double y = -L + h * static_cast<double>(j);
            double wy = (j == 0 || j == count) ? 0.5 : 1.0;
            double q = kerrint::q_value({x, y}, alpha0, g, Gamma, t);
            double w = wx * wy * q;
            out.mass += w;
            out.first += cplx(x, y) * w;
            out.s_x += x * x * w;
            out.s_y += y * y * w;
        }
    }
    double cell = h * h;
    out.mass *= cell;
    out.first *= std::sqrt(2.0) * cell;
    out.s_x *= 2.0 * cell;
    out.s_y *= 2.0 * cell;
    return out;
}

}  // namespace test_oracles
