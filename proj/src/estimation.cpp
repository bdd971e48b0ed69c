#include "kerrint/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kerrint/constants.hpp"

namespace kerrint {

namespace {

constexpr double kDerivFloor = 1e-30;
constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureStats stats_at(const ModelParams& mp) {
    ModeMoments a = mode_moments({mp.n, mp.gamma, mp.Gamma_a, mp.t});
    ModeMoments b = mode_moments({mp.n, mp.beta_b, mp.Gamma_b, mp.t});
    return output_stats(a, b);
}

double mean_at_gamma(const ModelParams& mp, Quadrature q, double gamma) {
    // first_moment accepts signed g, so a central difference may cross zero.
    ModeMoments a = mode_moments({mp.n, gamma, mp.Gamma_a, mp.t});
    ModeMoments b = mode_moments({mp.n, mp.beta_b, mp.Gamma_b, mp.t});
    return output_stats(a, b).mean(q);
}

PrecisionPoint make_point(Quadrature q, double n, double gamma_t, double deriv,
                          double sigma, double shots, Regime regime) {
    PrecisionPoint pt;
    pt.quad = q;
    pt.n = n;
    pt.gamma_t = gamma_t;
    pt.derivative = deriv;
    pt.sigma = sigma;
    pt.regime = regime;
    if (std::abs(deriv) < kDerivFloor) {
        pt.infinite = true;
        pt.delta = kInf;
    } else {
        pt.infinite = false;
        pt.delta = sigma / std::abs(deriv) / std::sqrt(shots);
    }
    return pt;
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::General: return "general";
        case Regime::NoDamping: return "no_damping";
        case Regime::StrongDamping: return "strong_damping";
        case Regime::ShortTime: return "short_time";
    }
    return "?";
}

PrecisionPoint precision_general(Quadrature q, const ModelParams& mp,
                                 const PrecisionOptions& opts) {
    if (!(mp.n > 0)) throw std::domain_error("precision_general: n must be positive");
    if (!(mp.t > 0)) throw std::domain_error("precision_general: t must be positive");
    if (opts.step < 0 || !(opts.shots > 0)) {
        throw std::domain_error("precision_general: bad options");
    }
    double step = opts.step > 0 ? opts.step : 1e-3 / mp.n;  // gamma t units

    auto central = [&](double h_gamma_t) {
        double d = h_gamma_t / mp.t;
        return (mean_at_gamma(mp, q, mp.gamma + d) - mean_at_gamma(mp, q, mp.gamma - d)) /
               (2.0 * h_gamma_t);
    };
    double deriv = central(step);
    if (opts.richardson) {
        double half = central(step / 2.0);
        deriv = (4.0 * half - deriv) / 3.0;
    }
    double sigma = std::sqrt(std::max(0.0, stats_at(mp).var(q)));
    return make_point(q, mp.n, mp.gamma * mp.t, deriv, sigma, opts.shots, Regime::General);
}

PrecisionPoint precision_no_damping(Quadrature q, double n, double gamma_t,
                                    double shots) {
    if (!(n > 0)) throw std::domain_error("precision_no_damping: n must be positive");
    double n32 = std::pow(n, 1.5);
    bool is_x = q == Quadrature::XPlus || q == Quadrature::XMinus;
    double deriv = is_x ? -n32 * std::sin(n * gamma_t) : -n32 * std::cos(n * gamma_t);
    return make_point(q, n, gamma_t, deriv, 1.0, shots, Regime::NoDamping);
}

PrecisionPoint precision_strong_damping(Quadrature q, double n, double gamma,
                                        double Gamma_a, double t, double shots) {
    if (!(n > 0)) throw std::domain_error("precision_strong_damping: n must be positive");
    if (!(Gamma_a > 0) || !(t > 0)) {
        throw std::domain_error("precision_strong_damping: needs Gamma_a > 0 and t > 0");
    }
    double drained = -std::expm1(-Gamma_a * t);  // 1 - e^{-Gamma t}
    double arg = n * gamma * drained / Gamma_a;
    double scale = std::pow(n, 1.5) * std::exp(-0.5 * Gamma_a * t) * drained / (Gamma_a * t);
    bool is_x = q == Quadrature::XPlus || q == Quadrature::XMinus;
    double deriv = is_x ? -scale * std::sin(arg) : -scale * std::cos(arg);
    return make_point(q, n, gamma * t, deriv, 1.0, shots, Regime::StrongDamping);
}

std::vector<double> locate_fringe_boundaries(Quadrature q, double n, double t,
                                             double Gamma, double gamma_lo,
                                             double gamma_hi,
                                             const BoundaryOptions& opts) {
    if (!(n > 0) || !(t > 0) || Gamma < 0) {
        throw std::domain_error("locate_fringe_boundaries: bad parameters");
    }
    if (!(gamma_hi > gamma_lo) || !std::isfinite(gamma_lo) || !std::isfinite(gamma_hi)) {
        throw std::domain_error("locate_fringe_boundaries: bad search range");
    }
    ModelParams mp;
    mp.n = n;
    mp.t = t;
    mp.Gamma_a = Gamma;
    mp.Gamma_b = Gamma;

    // The regime is frozen once for the whole scan (mixing means across
    // samples would fabricate sign changes); classified at the midpoint.
    Regime regime = Regime::General;
    if (!opts.general_path) {
        ModelParams mid = mp;
        mid.gamma = 0.5 * (gamma_lo + gamma_hi);
        regime = select_precision_regime(mid);
    }
    auto mean_at = [&](double gamma) {
        double g = std::abs(gamma);  // closed forms take g >= 0; means are even/odd in g
        double sign = 1.0;
        switch (regime) {
            case Regime::NoDamping:
            case Regime::ShortTime: {
                FourMeans m = means_short_time(n, g, 0.0, t);
                sign = (gamma < 0 && (q == Quadrature::YPlus || q == Quadrature::YMinus))
                           ? -1.0
                           : 1.0;
                return sign * m.get(q);
            }
            case Regime::StrongDamping: {
                FourMeans m = means_strong_damping(n, g, 0.0, Gamma, Gamma, t);
                sign = (gamma < 0 && (q == Quadrature::YPlus || q == Quadrature::YMinus))
                           ? -1.0
                           : 1.0;
                return sign * m.get(q);
            }
            case Regime::General: return mean_at_gamma(mp, q, gamma);
        }
        return mean_at_gamma(mp, q, gamma);
    };

    double step = opts.step > 0 ? opts.step : 1e-3 / n;
    double dg = step / t;
    auto deriv = [&](double gamma) {
        return (mean_at(gamma + dg) - mean_at(gamma - dg)) / (2.0 * step);
    };

    // Undamped fringes repeat every pi/(n t) in gamma; damping only widens them.
    double fringe = kPi / (n * t);
    std::size_t samples = static_cast<std::size_t>(
        std::ceil((gamma_hi - gamma_lo) / fringe * opts.samples_per_fringe));
    samples = std::clamp<std::size_t>(samples, 64, opts.max_samples);

    std::vector<double> gs(samples + 1), ds(samples + 1);
    double h = (gamma_hi - gamma_lo) / static_cast<double>(samples);
    double dmax = 0;
    for (std::size_t i = 0; i <= samples; ++i) {
        gs[i] = gamma_lo + h * static_cast<double>(i);
        ds[i] = deriv(gs[i]);
        dmax = std::max(dmax, std::abs(ds[i]));
    }

    std::vector<double> zeros;
    double tol_gamma = opts.tol_n_gamma_t / (n * t);
    for (std::size_t i = 0; i < samples; ++i) {
        if (ds[i] == 0.0) {
            zeros.push_back(gs[i]);
            continue;
        }
        if ((ds[i] > 0) == (ds[i + 1] > 0) || ds[i + 1] == 0.0) continue;
        double lo = gs[i], hi = gs[i + 1], flo = ds[i];
        while (hi - lo > tol_gamma) {
            double mid = 0.5 * (lo + hi);
            double fm = deriv(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        zeros.push_back(0.5 * (lo + hi));
    }
    // Endpoint zeros that produce no sign change (e.g. gamma = 0 for X+).
    if (dmax > 0) {
        if (std::abs(ds.front()) < 1e-9 * dmax) zeros.push_back(gs.front());
        if (std::abs(ds.back()) < 1e-9 * dmax) zeros.push_back(gs.back());
    }
    std::sort(zeros.begin(), zeros.end());
    std::vector<double> out;
    for (double z : zeros) {
        if (out.empty() || z - out.back() > 2.0 * tol_gamma + 0.25 * fringe) {
            out.push_back(z);
        }
    }
    return out;
}

ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points) {
    std::vector<std::pair<double, double>> ln;
    ln.reserve(points.size());
    for (const auto& [n, delta] : points) {
        if (!(n > 0)) throw FitError("fit_scaling_exponent: n must be positive");
        if (!(delta > 0) || !std::isfinite(delta)) continue;  // fringe-boundary flags
        ln.emplace_back(std::log(n), std::log(delta));
    }
    if (ln.size() < 3) {
        throw FitError("fit_scaling_exponent: fewer than 3 finite points");
    }
    double xm = 0, ym = 0;
    for (auto& [x, y] : ln) {
        xm += x;
        ym += y;
    }
    xm /= static_cast<double>(ln.size());
    ym /= static_cast<double>(ln.size());
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : ln) {
        sxx += (x - xm) * (x - xm);
        sxy += (x - xm) * (y - ym);
    }
    if (sxx == 0) throw FitError("fit_scaling_exponent: degenerate abscissa");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    double ss = 0;
    for (auto& [x, y] : ln) {
        double r = y - fit.slope * x - fit.intercept;
        ss += r * r;
    }
    fit.points_used = ln.size();
    fit.stderr_slope =
        ln.size() > 2 ? std::sqrt(ss / (static_cast<double>(ln.size() - 2) * sxx)) : 0.0;
    return fit;
}

Regime select_moments_regime(const ModelParams& mp, const RegimeThresholds& th) {
    if (mp.Gamma_a == 0 && mp.Gamma_b == 0) return Regime::NoDamping;  // exact there
    RegimeReport rep = classify_regime(mp, 0.0, th);
    if (rep.strong_damping_valid) return Regime::StrongDamping;
    return Regime::General;
}

Regime select_precision_regime(const ModelParams& mp, const RegimeThresholds& th) {
    RegimeReport rep = classify_regime(mp, 0.0, th);
    if (mp.Gamma_a == 0 && mp.Gamma_b == 0 && rep.short_time_valid) {
        return Regime::NoDamping;
    }
    if (rep.strong_damping_valid) return Regime::StrongDamping;
    return Regime::General;
}

}  // namespace kerrint
