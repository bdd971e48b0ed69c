#include "kerrint/interferometer.hpp"

#include <cmath>
#include <stdexcept>

namespace kerrint {

const char* to_string(Quadrature q) {
    switch (q) {
        case Quadrature::XPlus: return "x+";
        case Quadrature::XMinus: return "x-";
        case Quadrature::YPlus: return "y+";
        case Quadrature::YMinus: return "y-";
    }
    return "?";
}

std::optional<Quadrature> quadrature_from_string(std::string_view s) {
    if (s == "x+" || s == "X+") return Quadrature::XPlus;
    if (s == "x-" || s == "X-") return Quadrature::XMinus;
    if (s == "y+" || s == "Y+") return Quadrature::YPlus;
    if (s == "y-" || s == "Y-") return Quadrature::YMinus;
    return std::nullopt;
}

double QuadratureStats::mean(Quadrature q) const {
    switch (q) {
        case Quadrature::XPlus: return mean_x_plus;
        case Quadrature::XMinus: return mean_x_minus;
        case Quadrature::YPlus: return mean_y_plus;
        case Quadrature::YMinus: return mean_y_minus;
    }
    return 0;
}

double QuadratureStats::var(Quadrature q) const {
    switch (q) {
        case Quadrature::XPlus: return var_x_plus;
        case Quadrature::XMinus: return var_x_minus;
        case Quadrature::YPlus: return var_y_plus;
        case Quadrature::YMinus: return var_y_minus;
    }
    return 0;
}

double FourMeans::get(Quadrature q) const {
    switch (q) {
        case Quadrature::XPlus: return x_plus;
        case Quadrature::XMinus: return x_minus;
        case Quadrature::YPlus: return y_plus;
        case Quadrature::YMinus: return y_minus;
    }
    return 0;
}

double FourSecondMoments::get(Quadrature q) const {
    switch (q) {
        case Quadrature::XPlus: return x_plus;
        case Quadrature::XMinus: return x_minus;
        case Quadrature::YPlus: return y_plus;
        case Quadrature::YMinus: return y_minus;
    }
    return 0;
}

QuadratureStats output_stats(const ModeMoments& a, const ModeMoments& b) {
    if (std::isfinite(a.t) && std::isfinite(b.t)) {
        double scale = std::max({std::abs(a.t), std::abs(b.t), 1e-300});
        if (std::abs(a.t - b.t) > 1e-12 * scale) {
            throw std::domain_error("output_stats: modes evolved for different times");
        }
    }
    double ra = a.first.real(), rb = b.first.real();
    double ia = a.first.imag(), ib = b.first.imag();

    QuadratureStats st;
    st.mean_x_plus = ra + rb;
    st.mean_x_minus = ra - rb;
    st.mean_y_plus = ia + ib;
    st.mean_y_minus = ia - ib;

    double xx = -1.0 + a.s_x + b.s_x;
    double yy = -1.0 + a.s_y + b.s_y;
    st.var_x_plus = xx + 2.0 * ra * rb - st.mean_x_plus * st.mean_x_plus;
    st.var_x_minus = xx - 2.0 * ra * rb - st.mean_x_minus * st.mean_x_minus;
    st.var_y_plus = yy + 2.0 * ia * ib - st.mean_y_plus * st.mean_y_plus;
    st.var_y_minus = yy - 2.0 * ia * ib - st.mean_y_minus * st.mean_y_minus;
    return st;
}

namespace {

struct ArmPhasor {
    double envelope;  // sqrt(n) exp[-n (1 - cos 2 g t)/2]
    double phase;     // g t + (n/2) sin 2 g t
};

// 1 - cos(th) as 2 sin^2(th/2): the difference form loses ~n ulp when the
// n-scaled exponent meets a tiny angle.
double one_minus_cos(double th) {
    double s = std::sin(0.5 * th);
    return 2.0 * s * s;
}

ArmPhasor arm_no_damping(double n, double g, double t) {
    return {std::sqrt(n) * std::exp(-0.5 * n * one_minus_cos(2.0 * g * t)),
            g * t + 0.5 * n * std::sin(2.0 * g * t)};
}

void check_nonneg(double v, const char* name) {
    if (v < 0 || !std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be non-negative and finite");
    }
}

}  // namespace

FourMeans means_no_damping(double n, double gamma, double beta, double t) {
    check_nonneg(n, "n");
    check_nonneg(gamma, "gamma");
    check_nonneg(beta, "beta");
    check_nonneg(t, "t");
    ArmPhasor a = arm_no_damping(n, gamma, t);
    ArmPhasor b = arm_no_damping(n, beta, t);
    double ca = a.envelope * std::cos(a.phase), cb = b.envelope * std::cos(b.phase);
    double sa = a.envelope * std::sin(a.phase), sb = b.envelope * std::sin(b.phase);
    // Positive Kerr rotates the phasor to negative phase, hence the Y signs.
    return {ca + cb, ca - cb, -(sa + sb), -(sa - sb)};
}

FourSecondMoments second_moments_no_damping(double n, double gamma, double beta,
                                            double t) {
    check_nonneg(n, "n");
    check_nonneg(gamma, "gamma");
    check_nonneg(beta, "beta");
    check_nonneg(t, "t");
    auto self = [n, t](double g) {
        return 0.5 * n * std::exp(-0.5 * n * one_minus_cos(4.0 * g * t)) *
               std::cos(4.0 * g * t + 0.5 * n * std::sin(4.0 * g * t));
    };
    double sa = self(gamma), sb = self(beta);
    double env = n * std::exp(-0.5 * n * (one_minus_cos(2.0 * gamma * t) +
                                          one_minus_cos(2.0 * beta * t)));
    double pa = gamma * t + 0.5 * n * std::sin(2.0 * gamma * t);
    double pb = beta * t + 0.5 * n * std::sin(2.0 * beta * t);
    double cross_diff = env * std::cos(pa - pb);
    double cross_sum = env * std::cos(pa + pb);

    FourSecondMoments m;
    m.x_plus = 1.0 + n + sa + sb + cross_diff + cross_sum;
    m.x_minus = 1.0 + n + sa + sb - cross_diff - cross_sum;
    m.y_plus = 1.0 + n - sa - sb + cross_diff - cross_sum;
    m.y_minus = 1.0 + n - sa - sb - cross_diff + cross_sum;
    return m;
}

FourMeans means_short_time(double n, double gamma, double beta, double t) {
    check_nonneg(n, "n");
    check_nonneg(gamma, "gamma");
    check_nonneg(beta, "beta");
    check_nonneg(t, "t");
    double rn = std::sqrt(n);
    double ca = rn * std::cos(n * gamma * t), cb = rn * std::cos(n * beta * t);
    double sa = rn * std::sin(n * gamma * t), sb = rn * std::sin(n * beta * t);
    return {ca + cb, ca - cb, -(sa + sb), -(sa - sb)};
}

FourMeans means_strong_damping(double n, double gamma, double beta, double Gamma_a,
                               double Gamma_b, double t) {
    check_nonneg(n, "n");
    check_nonneg(gamma, "gamma");
    check_nonneg(beta, "beta");
    check_nonneg(t, "t");
    if (!(Gamma_a > 0) || !(Gamma_b > 0)) {
        throw std::domain_error(
            "means_strong_damping: needs Gamma_a, Gamma_b > 0 (use the general path)");
    }
    double rn = std::sqrt(n);
    double ea = rn * std::exp(-0.5 * Gamma_a * t), eb = rn * std::exp(-0.5 * Gamma_b * t);
    double tha = n * gamma * -std::expm1(-Gamma_a * t) / Gamma_a;
    double thb = n * beta * -std::expm1(-Gamma_b * t) / Gamma_b;
    double ca = ea * std::cos(tha), cb = eb * std::cos(thb);
    double sa = ea * std::sin(tha), sb = eb * std::sin(thb);
    return {ca + cb, ca - cb, -(sa + sb), -(sa - sb)};
}

}  // namespace kerrint
