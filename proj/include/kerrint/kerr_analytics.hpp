#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace kerrint {

/// Inputs for one mode of the interferometer between the beamsplitter pulses:
/// the (shared) input phonon number n = alpha0^2, this mode's Kerr rate g,
/// its damping rate Gamma, and the evolution time t.
///
/// g may be signed; n, Gamma and t must be non-negative.
struct KerrPoint {
    double n = 0;
    double g = 0;
    double Gamma = 0;
    double t = 0;

    void validate() const;
};

/// Q-representation moments of a single mode that start, at t = 0, from a
/// coherent state of amplitude sqrt(n/2):
///   first = sqrt(2) <a>            (equals sqrt(n) at t = 0)
///   s_x   = <a'a> + Re<a^2> + 1    (equals 1 + n at t = 0)
///   s_y   = <a'a> - Re<a^2> + 1    (equals 1     at t = 0)
/// n_total keeps the input n for bookkeeping; t records the evolution time
/// when known (NaN otherwise, e.g. when extracted from a bare density matrix).
struct ModeMoments {
    std::complex<double> first;
    double s_x = 0;
    double s_y = 0;
    double n_total = 0;
    double t = std::numeric_limits<double>::quiet_NaN();
};

/// The pair (c, d) defined by c + i d = i r g Int_0^t exp[-(Gamma + i r g) s] ds,
/// the cumulative kernels of damped Kerr dephasing. c >= 0 always; the mode
/// moments below use exp(-n c / 2) as amplitude decay and n d / 2 as phase drag.
///
/// r must be 2 or 4; g, Gamma, t must be non-negative (throws std::domain_error
/// otherwise). g = 0 gives (0, 0), the analytic limit. Gamma = 0 gives
/// (1 - cos(r g t), sin(r g t)).
struct PhaseKernels {
    double c = 0;
    double d = 0;
};
PhaseKernels cr_dr(int r, double g, double Gamma, double t);

/// sqrt(2) <a> at time t:
///   sqrt(n) exp[-(Gamma t + n C2)/2] exp[-i (g t + n D2/2)]
///
/// The phase sign follows the generator convention
///   drho/dt = -i g [(a'a)^2, rho] + (Gamma/2)(2 a rho a' - a'a rho - rho a'a),
/// under which a positive Kerr rate drags the mean phasor to negative phase;
/// the Fock-space integrator (oracle.hpp) is the reference for this choice.
/// Magnitudes are assembled in log space so that n ~ 1e7 cannot overflow.
std::complex<double> first_moment(const KerrPoint& kp);

/// (s_x, s_y) at time t:
///   1 + (n/2) e^{-Gamma t} +/- (n/2) e^{-Gamma t - n C4/2} cos(4 g t + n D4/2)
/// with + for s_x and - for s_y.
std::pair<double, double> quadrature_second_moments(const KerrPoint& kp);

/// Bundles first_moment and quadrature_second_moments into ModeMoments.
ModeMoments mode_moments(const KerrPoint& kp);

class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QSeriesOptions {
    int max_terms = 512;     // hard ceiling on the truncation order p_max
    int p_max_override = 0;  // > 0 forces the truncation order
};

/// Pointwise Q function of one mode at phase-space point alpha, evolved for
/// time t from the post-beamsplitter coherent state of amplitude alpha0/sqrt(2)
/// (alpha0 >= 0 real). Evaluates the double series solution of the associated
/// Fokker-Planck equation, truncated at order p_max chosen so the neglected
/// Poisson-weighted tail stays below tail_tol:
///   p_max = ceil(x + 10 sqrt(x) + 20),  x = |alpha| alpha0 / sqrt(2).
///
/// Gamma = 0 is handled by the analytic limit of the per-term exponent factor
/// (f + i delta) / (2 (1 + i delta)) -> 1/2, which reproduces the free and
/// pure-Kerr propagators exactly.
///
/// Throws TruncationError if the tail bound cannot be met within
/// opts.max_terms, and std::domain_error on invalid inputs.
double q_value(std::complex<double> alpha, double alpha0, double g, double Gamma,
               double t, double tail_tol = 1e-12, const QSeriesOptions& opts = {});

}  // namespace kerrint
