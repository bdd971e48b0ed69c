#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kerrint/interferometer.hpp"
#include "kerrint/model.hpp"

namespace kerrint {

enum class Regime { General, NoDamping, StrongDamping, ShortTime };
const char* to_string(Regime r);

/// One precision evaluation: the uncertainty delta(gamma t) of an estimate of
/// gamma t from repeated measurements of one output quadrature,
///   delta = sigma / |d<Z>/d(gamma t)|.
/// `infinite` marks fringe boundaries (derivative below 1e-30); such points
/// carry delta = +inf for convenience but the flag is authoritative.
struct PrecisionPoint {
    Quadrature quad = Quadrature::XPlus;
    double n = 0;
    double gamma_t = 0;
    double delta = 0;
    bool infinite = false;
    double derivative = 0;  // d<Z>/d(gamma t), signed
    double sigma = 0;       // Delta Z at the operating point
    Regime regime = Regime::General;
};

struct PrecisionOptions {
    double step = 0;          // finite-difference step in gamma t units; 0 -> 1e-3/n
    bool richardson = false;  // 4th-order Richardson-extrapolated derivative
    double shots = 1;         // M repeated measurements scale delta by 1/sqrt(M)
};

/// Full analytic pipeline: sigma from output_stats at mp, derivative by a
/// central finite difference of the selected mean over gamma t +- step.
/// The default step 1e-3/n resolves the fastest fringe scale (the means
/// oscillate in gamma t with angular frequency ~ n).
PrecisionPoint precision_general(Quadrature q, const ModelParams& mp,
                                 const PrecisionOptions& opts = {});

/// Zero-damping short-time closed form (beta = 0):
///   delta_X = 1 / (n^{3/2} |sin(n gamma t)|),  delta_Y with |cos|.
PrecisionPoint precision_no_damping(Quadrature q, double n, double gamma_t,
                                    double shots = 1);

/// Strong-damping closed form (beta = 0):
///   delta_X = Gamma_a t e^{Gamma_a t/2} /
///             [n^{3/2} (1 - e^{-Gamma_a t}) |sin(n gamma (1-e^{-Gamma_a t})/Gamma_a)|]
/// and |cos| for Y. Requires Gamma_a > 0 and t > 0.
PrecisionPoint precision_strong_damping(Quadrature q, double n, double gamma,
                                        double Gamma_a, double t, double shots = 1);

struct BoundaryOptions {
    double step = 0;               // FD step for the derivative, gamma t units; 0 -> 1e-3/n
    int samples_per_fringe = 16;   // scan density relative to the pi/n fringe scale
    std::size_t max_samples = 4'000'000;
    double tol_n_gamma_t = 1e-8;   // bisection tolerance, in n gamma t units
    bool general_path = false;     // see below
};

/// Zeros of d<Z>/d(gamma t) over gamma in [gamma_lo, gamma_hi], located by
/// sign-change bracketing plus bisection on the finite-difference derivative
/// (beta = 0, Gamma_a = Gamma_b = Gamma). Endpoints where the derivative
/// vanishes without a sign change (e.g. gamma = 0 for X+) are detected by a
/// relative near-zero test.
///
/// By default the mean being differentiated is the one the precision regime
/// picker selects for these parameters (at Gamma = 0 inside the short-time
/// region that puts the boundaries exactly at n gamma t = m pi/2, alternating
/// between the X and Y families; under strong damping at
/// n gamma (1 - e^{-Gamma t})/Gamma = m pi/2). With general_path = true the
/// full analytic pipeline is differentiated instead; its boundaries approach
/// the closed-form ones as n grows, with a finite-n displacement of order
/// n gamma t / n.
std::vector<double> locate_fringe_boundaries(Quadrature q, double n, double t,
                                             double Gamma, double gamma_lo,
                                             double gamma_hi,
                                             const BoundaryOptions& opts = {});

class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ScalingFit {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    std::size_t points_used = 0;
};

/// Ordinary least squares of ln(delta) against ln(n). Points with
/// non-positive or non-finite delta (fringe-boundary flags) are excluded;
/// fewer than 3 surviving points throws FitError.
ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points);

/// Closed-form regime pickers shared by the CLI's `auto` mode.
Regime select_moments_regime(const ModelParams& mp, const RegimeThresholds& th = {});
Regime select_precision_regime(const ModelParams& mp, const RegimeThresholds& th = {});

}  // namespace kerrint
