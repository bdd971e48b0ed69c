#include <doctest.h>

#include <cmath>

#include "kerrint/constants.hpp"
#include "kerrint/interferometer.hpp"
#include "kerrint/oracle.hpp"

using namespace kerrint;

namespace {

double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

QuadratureStats general_stats(double n, double gamma, double beta, double Ga, double Gb,
                              double t) {
    return output_stats(mode_moments({n, gamma, Ga, t}), mode_moments({n, beta, Gb, t}));
}

}  // namespace

TEST_CASE("output_stats of two fresh coherent arms") {
    double n = 9.0;
    ModeMoments a = mode_moments({n, 0.2, 0.1, 0.0});
    ModeMoments b = mode_moments({n, 0.0, 0.3, 0.0});
    QuadratureStats st = output_stats(a, b);
    CHECK(st.mean_x_plus == doctest::Approx(2 * std::sqrt(n)).epsilon(1e-14));
    CHECK(st.mean_x_minus == doctest::Approx(0.0));
    CHECK(st.mean_y_plus == doctest::Approx(0.0));
    for (Quadrature q : kAllQuadratures) {
        CHECK(st.var(q) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // second moment identity at t = 0: <X+^2> = 1 + 4n
    CHECK(st.var_x_plus + st.mean_x_plus * st.mean_x_plus ==
          doctest::Approx(1 + 4 * n).epsilon(1e-12));
}

TEST_CASE("vacuum arm reduces to single-mode statistics") {
    ModeMoments a = mode_moments({6.0, 0.15, 0.02, 0.7});
    ModeMoments vac = mode_moments({0.0, 0.0, 0.0, 0.7});
    QuadratureStats st = output_stats(a, vac);
    CHECK(st.mean_x_plus == st.mean_x_minus);
    CHECK(st.mean_y_plus == st.mean_y_minus);
    CHECK(st.var_x_plus == doctest::Approx(a.s_x - a.first.real() * a.first.real()));
    CHECK(st.var_y_plus == doctest::Approx(a.s_y - a.first.imag() * a.first.imag()));
}

TEST_CASE("output_stats rejects mismatched evolution times") {
    ModeMoments a = mode_moments({4.0, 0.1, 0.0, 1.0});
    ModeMoments b = mode_moments({4.0, 0.1, 0.0, 2.0});
    CHECK_THROWS_AS(output_stats(a, b), std::domain_error);

    b.t = std::numeric_limits<double>::quiet_NaN();  // unknown time: no check possible
    CHECK_NOTHROW(output_stats(a, b));
}

TEST_CASE("two independently evolved Fock modes combine like the analytics") {
    double n = 9.0, gamma = 0.1, beta = 0.0, Gamma = 0.05, t = 1.0;
    std::complex<double> amp(std::sqrt(n / 2.0), 0.0);
    int cutoff = oracle::choose_cutoff(amp, 1e-12);
    auto rho0 = oracle::coherent_density(amp, cutoff);

    ModeMoments oa = oracle::mode_moments_from_density(
        oracle::evolve_lindblad_exact(rho0, gamma, Gamma, t));
    ModeMoments ob = oracle::mode_moments_from_density(
        oracle::evolve_lindblad_exact(rho0, beta, Gamma, t));
    oa.t = t;
    ob.t = t;
    QuadratureStats got = output_stats(oa, ob);
    QuadratureStats want = general_stats(n, gamma, beta, Gamma, Gamma, t);

    for (Quadrature q : kAllQuadratures) {
        CAPTURE(to_string(q));
        CHECK(rel(got.mean(q), want.mean(q)) < 1e-6);
        CHECK(rel(got.var(q), want.var(q)) < 1e-6);
    }
}

TEST_CASE("no-damping closed forms") {
    SUBCASE("linear limits") {
        FourMeans m = means_no_damping(9.0, 0.0, 0.0, 3.0);
        CHECK(m.x_plus == doctest::Approx(6.0));
        CHECK(m.x_minus == doctest::Approx(0.0));
        CHECK(m.y_plus == doctest::Approx(0.0));
        CHECK(m.y_minus == doctest::Approx(0.0));
    }
    SUBCASE("symmetric arms cancel the minus ports") {
        FourMeans m = means_no_damping(16.0, 0.3, 0.3, 1.7);
        CHECK(m.x_minus == doctest::Approx(0.0));
        CHECK(m.y_minus == doctest::Approx(0.0));
    }
    SUBCASE("equals the general path at Gamma = 0") {
        double n = 1e7, gamma = 1e-4, t = 1e-3;
        FourMeans m = means_no_damping(n, gamma, 0.0, t);
        QuadratureStats st = general_stats(n, gamma, 0.0, 0.0, 0.0, t);
        for (Quadrature q : kAllQuadratures) {
            CHECK(rel(m.get(q), st.mean(q)) < 1e-9);
        }
    }
    SUBCASE("second moments: t = 0 and small-damping consistency") {
        double n = 9.0;
        FourSecondMoments m0 = second_moments_no_damping(n, 0.4, 0.1, 0.0);
        CHECK(m0.x_plus == doctest::Approx(1 + 4 * n).epsilon(1e-12));
        CHECK(m0.x_minus == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m0.y_plus == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m0.y_minus == doctest::Approx(1.0).epsilon(1e-12));

        double gamma = 0.1, beta = 0.03, t = 1.0;
        FourSecondMoments cf = second_moments_no_damping(n, gamma, beta, t);
        QuadratureStats st = general_stats(n, gamma, beta, 1e-9, 1e-9, t);
        for (Quadrature q : kAllQuadratures) {
            double m2 = st.var(q) + st.mean(q) * st.mean(q);
            CHECK(rel(cf.get(q), m2) < 1e-6);
        }
    }
    SUBCASE("gamma = beta = 0 gives coherent variances at any t") {
        double n = 25.0, t = 2.0;
        FourMeans m = means_no_damping(n, 0.0, 0.0, t);
        FourSecondMoments m2 = second_moments_no_damping(n, 0.0, 0.0, t);
        for (Quadrature q : kAllQuadratures) {
            CHECK(m2.get(q) - m.get(q) * m.get(q) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("short-time closed forms") {
    double n = 1e7;
    FourMeans z = means_short_time(n, 0.0, 0.0, 1.0);
    CHECK(z.x_plus == doctest::Approx(2 * std::sqrt(n)));
    CHECK(z.x_minus == 0.0);
    CHECK(z.y_plus == 0.0);
    CHECK(z.y_minus == 0.0);

    // n gamma t = pi: the two arms cancel in X+
    double t = 1e-3, gamma = kPi / (n * t);
    FourMeans m = means_short_time(n, gamma, 0.0, t);
    CHECK(std::abs(m.x_plus) < 1e-6);

    // agreement with the exact no-damping forms inside the validity region
    gamma = 1e-7 / t;  // gamma t = 1e-7, n (gamma t)^2 = 1e-7
    FourMeans st = means_short_time(n, gamma, 0.0, t);
    FourMeans nd = means_no_damping(n, gamma, 0.0, t);
    for (Quadrature q : kAllQuadratures) {
        CHECK(std::abs(st.get(q) - nd.get(q)) /
                  std::max(std::sqrt(n), std::abs(nd.get(q))) <
              1e-5);
    }
}

TEST_CASE("strong-damping closed forms") {
    double n = 1e7, gamma = 1e-4, Gamma = 4700.0, t = 1e-3;
    FourMeans m = means_strong_damping(n, gamma, 0.0, Gamma, Gamma, t);

    double theta = n * gamma * (1 - std::exp(-Gamma * t)) / Gamma;
    CHECK(theta == doctest::Approx(0.2108).epsilon(1e-3));
    double envelope = std::sqrt(n) * std::exp(-0.5 * Gamma * t);
    CHECK(envelope == doctest::Approx(std::sqrt(n) * 0.0954).epsilon(1e-3));
    CHECK(m.x_plus == doctest::Approx(envelope * (std::cos(theta) + 1)).epsilon(1e-12));

    SUBCASE("within 1% of the general path at the fiducial point") {
        QuadratureStats st = general_stats(n, gamma, 0.0, Gamma, Gamma, t);
        double scale = envelope;
        for (Quadrature q : kAllQuadratures) {
            CHECK(std::abs(m.get(q) - st.mean(q)) / scale < 0.01);
        }
    }
    SUBCASE("everything decays at long times") {
        FourMeans late = means_strong_damping(n, gamma, 0.0, Gamma, Gamma, 1.0);
        for (Quadrature q : kAllQuadratures) {
            CHECK(std::abs(late.get(q)) < 1e-9);
        }
    }
    SUBCASE("symmetric arms cancel") {
        FourMeans s = means_strong_damping(n, gamma, gamma, Gamma, Gamma, t);
        CHECK(s.x_minus == doctest::Approx(0.0));
        CHECK(s.y_minus == doctest::Approx(0.0));
    }
    SUBCASE("zero damping is out of domain") {
        CHECK_THROWS_AS(means_strong_damping(n, gamma, 0.0, 0.0, Gamma, t), std::domain_error);
        CHECK_THROWS_AS(means_strong_damping(n, gamma, 0.0, Gamma, 0.0, t), std::domain_error);
    }
}

TEST_CASE("swapping the arms flips the minus ports exactly") {
    ModeMoments a = mode_moments({9.0, 0.25, 0.04, 0.8});
    ModeMoments b = mode_moments({9.0, 0.10, 0.07, 0.8});
    QuadratureStats ab = output_stats(a, b);
    QuadratureStats ba = output_stats(b, a);
    CHECK(ba.mean_x_plus == ab.mean_x_plus);
    CHECK(ba.mean_y_plus == ab.mean_y_plus);
    CHECK(ba.mean_x_minus == -ab.mean_x_minus);
    CHECK(ba.mean_y_minus == -ab.mean_y_minus);
    CHECK(ba.var_x_minus == doctest::Approx(ab.var_x_minus).epsilon(1e-14));
}

TEST_CASE("energy bookkeeping with two linear arms") {
    for (double Gamma : {0.0, 0.4, 2.0}) {
        for (double t : {0.3, 1.5}) {
            double n = 16.0;
            QuadratureStats st = general_stats(n, 0.0, 0.0, Gamma, Gamma, t);
            double energy = st.mean_x_plus * st.mean_x_plus + st.mean_y_plus * st.mean_y_plus;
            CHECK(energy == doctest::Approx(4 * n * std::exp(-Gamma * t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Heisenberg bound on conjugate pair variances") {
    for (double n : {1.0, 10.0, 1e5}) {
        for (double gt : {0.0, 0.05, 0.4, 1.2}) {
            for (double Gt : {0.0, 0.3, 3.0}) {
                QuadratureStats st = general_stats(n, gt, 0.0, Gt, Gt, 1.0);
                CHECK(st.var_x_plus * st.var_y_plus >= 1.0 - 1e-9);
                CHECK(st.var_x_minus * st.var_y_minus >= 1.0 - 1e-9);
                CHECK(st.var_x_plus >= 0.0);
                CHECK(st.var_y_minus >= 0.0);
            }
        }
    }
}

TEST_CASE("Kerr squeezing appears without damping and dies with it") {
    double n = 10.0, t = 1e-3;
    double min_var = 1e9;
    for (int i = 1; i <= 2000; ++i) {
        double gamma_t = 2 * kPi / n * i / 2000.0;
        QuadratureStats st = general_stats(n, gamma_t / t, 0.0, 0.0, 0.0, t);
        min_var = std::min(min_var, st.var_x_plus);
    }
    CHECK(min_var < 1.0);  // strict squeezing below the coherent level

    double ratio = 1e4 * std::sqrt(n);
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
        double gamma_t = 2 * kPi / n * i / 200.0;
        double gamma = gamma_t / t;
        QuadratureStats st = general_stats(n, gamma, 0.0, ratio * gamma, ratio * gamma, t);
        for (Quadrature q : kAllQuadratures) {
            worst = std::max(worst, std::abs(st.var(q) - 1.0));
        }
    }
    CHECK(worst < 1e-3);  // coherent-level variances under strong damping
}
