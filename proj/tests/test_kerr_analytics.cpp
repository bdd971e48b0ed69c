#include <doctest.h>

#include <cmath>
#include <complex>

#include "kerrint/kerr_analytics.hpp"
#include "kerrint/oracle.hpp"
#include "test_oracles.hpp"

using namespace kerrint;
using test_oracles::cr_dr_by_quadrature;

namespace {

double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

double rel_c(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

ModeMoments fock_moments(double n, double g, double Gamma, double t) {
    std::complex<double> amp(std::sqrt(n / 2.0), 0.0);
    int cutoff = oracle::choose_cutoff(amp, 1e-12);
    auto rho = oracle::evolve_lindblad_exact(oracle::coherent_density(amp, cutoff), g, Gamma, t);
    return oracle::mode_moments_from_density(rho);
}

}  // namespace

TEST_CASE("cr_dr basics") {
    auto z = cr_dr(2, 0.3, 0.1, 0.0);
    CHECK(z.c == 0.0);
    CHECK(z.d == 0.0);

    auto zg = cr_dr(4, 0.0, 0.1, 2.0);  // g = 0 analytic limit
    CHECK(zg.c == 0.0);
    CHECK(zg.d == 0.0);

    // Gamma = 0 closed form
    for (double gt : {0.05, 0.7, 2.9}) {
        auto k = cr_dr(2, gt, 0.0, 1.0);
        CHECK(k.c == doctest::Approx(1 - std::cos(2 * gt)).epsilon(1e-14));
        CHECK(k.d == doctest::Approx(std::sin(2 * gt)).epsilon(1e-14));
    }

    CHECK_THROWS_AS(cr_dr(3, 0.1, 0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(cr_dr(2, -0.1, 0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(cr_dr(2, 0.1, -0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(cr_dr(2, 0.1, 0.1, -1.0), std::domain_error);
}

TEST_CASE("cr_dr against adaptive quadrature") {
    struct Case {
        int r;
        double g, Gamma, t;
    };
    for (const Case& c : {Case{2, 1e-4, 4700.0, 1e-3}, Case{4, 0.3, 0.2, 2.0},
                          Case{2, 0.05, 0.0, 3.0}, Case{4, 2.0, 5.0, 0.7},
                          Case{2, 1.0, 1e-6, 10.0}}) {
        auto got = cr_dr(c.r, c.g, c.Gamma, c.t);
        auto want = cr_dr_by_quadrature(c.r, c.g, c.Gamma, c.t);
        CHECK(rel(got.c, want.c) < 1e-10);
        CHECK(rel(got.d, want.d) < 1e-10);
    }
}

TEST_CASE("cr_dr limit consistency near zero damping") {
    for (double g : {0.03, 0.4, 2.0}) {
        for (double t : {0.1, 1.0, 7.0}) {
            for (int r : {2, 4}) {
                auto k = cr_dr(r, g, 1e-9 * g, t);
                CHECK(rel(k.c, 1 - std::cos(r * g * t)) < 1e-6);
                CHECK(rel(k.d, std::sin(r * g * t)) < 1e-6);
            }
        }
    }
}

TEST_CASE("first_moment closed-form limits") {
    CHECK(std::abs(first_moment({9.0, 0.0, 0.0, 5.0}) - std::complex<double>(3.0, 0.0)) <
          1e-14);
    CHECK(first_moment({0.0, 0.3, 0.1, 1.0}) == std::complex<double>(0.0, 0.0));

    // free decay
    auto damped = first_moment({4.0, 0.0, 0.5, 2.0});
    CHECK(damped.real() == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(damped.imag() == 0.0);

    // Gamma = 0: magnitude sqrt(n) exp[-n(1 - cos 2gt)/2], phase -(gt + n sin(2gt)/2)
    double n = 6.0, g = 0.21, t = 1.3;
    auto v = first_moment({n, g, 0.0, t});
    CHECK(std::abs(v) ==
          doctest::Approx(std::sqrt(n) * std::exp(-0.5 * n * (1 - std::cos(2 * g * t))))
              .epsilon(1e-12));
    CHECK(std::arg(v) ==
          doctest::Approx(std::remainder(-(g * t + 0.5 * n * std::sin(2 * g * t)),
                                         2 * 3.14159265358979324))
              .epsilon(1e-9));
}

TEST_CASE("first_moment matches the Fock-space oracle") {
    auto got = first_moment({4.0, 0.1, 0.05, 1.0});
    auto want = fock_moments(4.0, 0.1, 0.05, 1.0).first;
    CHECK(rel_c(got, want) < 1e-6);
}

TEST_CASE("quadrature_second_moments limits and oracle point") {
    double n = 7.0;
    auto [sx0, sy0] = quadrature_second_moments({n, 0.4, 0.2, 0.0});
    CHECK(sx0 == doctest::Approx(1 + n).epsilon(1e-14));
    CHECK(sy0 == doctest::Approx(1.0).epsilon(1e-14));

    auto [sxg, syg] = quadrature_second_moments({n, 0.0, 0.3, 2.0});
    CHECK(sxg == doctest::Approx(1 + n * std::exp(-0.6)).epsilon(1e-14));
    CHECK(syg == doctest::Approx(1.0).epsilon(1e-14));

    auto [sx, sy] = quadrature_second_moments({4.0, 0.1, 0.05, 1.0});
    ModeMoments want = fock_moments(4.0, 0.1, 0.05, 1.0);
    CHECK(rel(sx, want.s_x) < 1e-6);
    CHECK(rel(sy, want.s_y) < 1e-6);
}

TEST_CASE("mode_moments composition and decay endpoints") {
    ModeMoments t0 = mode_moments({25.0, 1.0, 2.0, 0.0});
    CHECK(std::abs(t0.first - std::complex<double>(5.0, 0.0)) < 1e-14);
    CHECK(t0.s_x == doctest::Approx(26.0));
    CHECK(t0.s_y == doctest::Approx(1.0));
    CHECK(t0.n_total == 25.0);
    CHECK(t0.t == 0.0);

    // strong-damping fiducial: |first| within 1% of sqrt(n) e^{-Gamma t/2}
    double n = 1e7, g = 1e-4, Gamma = 4700, t = 1e-3;
    ModeMoments fid = mode_moments({n, g, Gamma, t});
    double envelope = std::sqrt(n) * std::exp(-0.5 * Gamma * t);
    CHECK(rel(std::abs(fid.first), envelope) < 0.01);
    double nC2 = n * cr_dr(2, g, Gamma, t).c;
    CHECK(nC2 < 1e-6);

    ModeMoments dead = mode_moments({9.0, 0.3, 2000.0, 1.0});
    CHECK(std::abs(dead.first) < 1e-12);
    CHECK(dead.s_x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dead.s_y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle equivalence on a coarse grid") {
    for (double n : {1.0, 4.0}) {
        for (double gt : {0.1, 0.5}) {
            for (double Gt : {0.0, 0.5}) {
                ModeMoments a = mode_moments({n, gt, Gt, 1.0});
                ModeMoments o = fock_moments(n, gt, Gt, 1.0);
                CAPTURE(n);
                CAPTURE(gt);
                CAPTURE(Gt);
                CHECK(rel_c(a.first, o.first) < 1e-6);
                CHECK(rel(a.s_x, o.s_x) < 1e-6);
                CHECK(rel(a.s_y, o.s_y) < 1e-6);
            }
        }
    }
}

TEST_CASE("phase parity: negating g conjugates the first moment") {
    for (double n : {2.0, 9.0}) {
        for (double g : {0.05, 0.8}) {
            for (double Gamma : {0.0, 0.3}) {
                for (double t : {0.4, 2.0}) {
                    auto plus = first_moment({n, g, Gamma, t});
                    auto minus = first_moment({n, -g, Gamma, t});
                    CHECK(minus == std::conj(plus));
                    auto [sxp, syp] = quadrature_second_moments({n, g, Gamma, t});
                    auto [sxm, sym] = quadrature_second_moments({n, -g, Gamma, t});
                    CHECK(sxm == sxp);
                    CHECK(sym == syp);
                }
            }
        }
    }
}

TEST_CASE("monotone decay envelope |first| <= sqrt(n) exp(-Gamma t/2)") {
    for (double n : {1.0, 16.0, 1e6}) {
        for (double g : {1e-4, 0.1, 3.0}) {
            for (double Gamma : {0.0, 0.05, 10.0}) {
                for (double t : {0.01, 0.9, 4.0}) {
                    auto k2 = cr_dr(2, g, Gamma, t);
                    CHECK(k2.c >= -1e-15);  // the envelope statement in kernel form
                    double bound = std::sqrt(n) * std::exp(-0.5 * Gamma * t);
                    CHECK(std::abs(first_moment({n, g, Gamma, t})) <= bound * (1 + 1e-12));
                }
            }
        }
    }
}

TEST_CASE("KerrPoint validation") {
    CHECK_THROWS_AS(first_moment({-1.0, 0.1, 0.1, 1.0}), std::domain_error);
    CHECK_THROWS_AS(first_moment({1.0, 0.1, -0.1, 1.0}), std::domain_error);
    CHECK_THROWS_AS(first_moment({1.0, 0.1, 0.1, -1.0}), std::domain_error);
    CHECK_NOTHROW(first_moment({1.0, -0.1, 0.1, 1.0}));  // signed g is allowed
}
