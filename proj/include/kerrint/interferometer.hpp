#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "kerrint/kerr_analytics.hpp"

namespace kerrint {

enum class Quadrature { XPlus, XMinus, YPlus, YMinus };

inline constexpr std::array<Quadrature, 4> kAllQuadratures = {
    Quadrature::XPlus, Quadrature::XMinus, Quadrature::YPlus, Quadrature::YMinus};

const char* to_string(Quadrature q);                           // "x+", "x-", "y+", "y-"
std::optional<Quadrature> quadrature_from_string(std::string_view s);

/// Means and variances of the four output quadratures
///   X+- = (a + a' +- b +- b')/sqrt(2),  Y+- = -i(a - a' +- b -+ b')/sqrt(2),
/// in dimensionless quadrature units.
struct QuadratureStats {
    double mean_x_plus = 0, mean_x_minus = 0, mean_y_plus = 0, mean_y_minus = 0;
    double var_x_plus = 0, var_x_minus = 0, var_y_plus = 0, var_y_minus = 0;

    double mean(Quadrature q) const;
    double var(Quadrature q) const;
};

struct FourMeans {
    double x_plus = 0, x_minus = 0, y_plus = 0, y_minus = 0;
    double get(Quadrature q) const;
};

struct FourSecondMoments {
    double x_plus = 0, x_minus = 0, y_plus = 0, y_minus = 0;
    double get(Quadrature q) const;
};

/// Combine two independently evolved modes:
///   <X+->   = Re a.first +- Re b.first
///   <X+-^2> = -1 + a.s_x + b.s_x +- 2 Re(a.first) Re(b.first)
/// and the analogous Y expressions with Im; variances are second moment minus
/// squared mean. Throws std::domain_error when both inputs carry a known
/// evolution time and the times differ.
QuadratureStats output_stats(const ModeMoments& a, const ModeMoments& b);

/// Closed forms for Gamma_a = Gamma_b = 0, exact at any t. Implemented as the
/// literal trigonometric expressions, independently of the general path, so
/// the two can cross-check each other.
FourMeans means_no_damping(double n, double gamma, double beta, double t);
FourSecondMoments second_moments_no_damping(double n, double gamma, double beta, double t);

/// Classical-interferometer limit, valid for n (g t)^2 << 1 with n >> 1:
///   <X+-> = sqrt(n) cos(n gamma t) +- sqrt(n) cos(n beta t)
///   <Y+-> = -(sqrt(n) sin(n gamma t) +- sqrt(n) sin(n beta t))
FourMeans means_short_time(double n, double gamma, double beta, double t);

/// Strong-damping closed forms (Gamma/g >> sqrt(n), g t << 1, Gamma t / n << 1):
///   <X+-> = sqrt(n) e^{-Gamma_a t/2} cos(theta_a) +- (b term),
///   theta  = n g (1 - e^{-Gamma t}) / Gamma,
/// Y analogous with -sin. In this regime all quadrature variances sit at the
/// coherent-state value 1 (callers wanting actual variances use the general
/// path). Throws std::domain_error when Gamma_a or Gamma_b is zero.
FourMeans means_strong_damping(double n, double gamma, double beta, double Gamma_a,
                               double Gamma_b, double t);

}  // namespace kerrint
