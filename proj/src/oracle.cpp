#include "kerrint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kerrint::oracle {

double DensityMatrix::trace_real() const {
    double tr = 0;
    for (int k = 0; k < dim_; ++k) tr += at(k, k).real();
    return tr;
}

double DensityMatrix::hermiticity_defect() const {
    double worst = 0;
    for (int j = 0; j < dim_; ++j) {
        for (int k = j; k < dim_; ++k) {
            worst = std::max(worst, std::abs(at(j, k) - std::conj(at(k, j))));
        }
    }
    return worst;
}

int choose_cutoff(std::complex<double> amp, double tail_tol) {
    if (!(tail_tol > 0)) throw std::domain_error("choose_cutoff: tail_tol must be positive");
    double mean = std::norm(amp);
    if (mean == 0) return 4;
    double log_term = -mean;  // Poisson log pmf at k = 0
    double head = 0;
    int k = 0;
    // Occupations live on 0..cutoff-1; stop once P(X >= cutoff) < tail_tol.
    while (true) {
        head += std::exp(log_term);
        ++k;
        if (1.0 - head < tail_tol) break;
        if (k > 100000) throw std::domain_error("choose_cutoff: amplitude too large");
        log_term += std::log(mean) - std::log(static_cast<double>(k));
    }
    return std::max(4, static_cast<int>(std::ceil(1.2 * k)));
}

DensityMatrix coherent_density(std::complex<double> amp, int cutoff, double tail_tol) {
    if (cutoff < 2) throw std::domain_error("coherent_density: cutoff must be >= 2");
    std::vector<std::complex<double>> c(static_cast<std::size_t>(cutoff));
    double mean = std::norm(amp);
    double log_amp = mean > 0 ? 0.5 * std::log(mean) : 0.0;
    double arg = (mean > 0) ? std::arg(amp) : 0.0;
    double head = 0;
    for (int k = 0; k < cutoff; ++k) {
        double log_mag = -0.5 * mean + k * log_amp - 0.5 * std::lgamma(k + 1.0);
        c[static_cast<std::size_t>(k)] =
            (mean > 0 || k == 0) ? std::polar(std::exp(log_mag), arg * k)
                                 : std::complex<double>(0.0, 0.0);
        head += std::norm(c[static_cast<std::size_t>(k)]);
    }
    double tail = 1.0 - head;
    if (tail > tail_tol) {
        std::ostringstream msg;
        msg << "coherent_density: truncated tail " << tail << " above tail_tol " << tail_tol
            << " at cutoff " << cutoff;
        throw CutoffError(msg.str(), choose_cutoff(amp, tail_tol));
    }
    DensityMatrix rho(cutoff);
    for (int j = 0; j < cutoff; ++j) {
        for (int k = 0; k < cutoff; ++k) {
            rho.at(j, k) = c[static_cast<std::size_t>(j)] *
                           std::conj(c[static_cast<std::size_t>(k)]) / head;
        }
    }
    return rho;
}

namespace {

// drho_jk/dt = [-i g (j^2 - k^2) - Gamma (j + k)/2] rho_jk
//              + Gamma sqrt((j+1)(k+1)) rho_{j+1,k+1}
void lindblad_rhs(const DensityMatrix& rho, double g, double Gamma, DensityMatrix& out) {
    int N = rho.dim();
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            std::complex<double> v =
                std::complex<double>(-0.5 * Gamma * (j + k), -g * (double(j) * j - double(k) * k)) *
                rho.at(j, k);
            if (j + 1 < N && k + 1 < N) {
                v += Gamma * std::sqrt(double(j + 1) * double(k + 1)) * rho.at(j + 1, k + 1);
            }
            out.at(j, k) = v;
        }
    }
}

DensityMatrix rk4_run(const DensityMatrix& rho0, double g, double Gamma, double t,
                      long steps, const OracleConfig& cfg) {
    int N = rho0.dim();
    DensityMatrix rho = rho0;
    DensityMatrix k1(N), k2(N), k3(N), k4(N), tmp(N);
    double h = t / static_cast<double>(steps);
    auto axpy = [](DensityMatrix& dst, const DensityMatrix& a, double s,
                   const DensityMatrix& b) {
        for (std::size_t i = 0; i < dst.data().size(); ++i) {
            dst.data()[i] = a.data()[i] + s * b.data()[i];
        }
    };
    for (long it = 0; it < steps; ++it) {
        lindblad_rhs(rho, g, Gamma, k1);
        axpy(tmp, rho, 0.5 * h, k1);
        lindblad_rhs(tmp, g, Gamma, k2);
        axpy(tmp, rho, 0.5 * h, k2);
        lindblad_rhs(tmp, g, Gamma, k3);
        axpy(tmp, rho, h, k3);
        lindblad_rhs(tmp, g, Gamma, k4);
        for (std::size_t i = 0; i < rho.data().size(); ++i) {
            rho.data()[i] += (h / 6.0) * (k1.data()[i] + 2.0 * k2.data()[i] +
                                          2.0 * k3.data()[i] + k4.data()[i]);
        }
        if ((it & 1023) == 0) {
            double top = rho.at(N - 1, N - 1).real();
            if (top > cfg.tail_tol) {
                throw CutoffError("evolve_lindblad: top-level population above tail_tol",
                                  static_cast<int>(std::ceil(1.5 * N)));
            }
        }
    }
    double drift = std::abs(rho.trace_real() - 1.0);
    if (drift > cfg.trace_tol) {
        throw ConvergenceError("evolve_lindblad: trace drift " + std::to_string(drift));
    }
    return rho;
}

double max_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

}  // namespace

DensityMatrix evolve_lindblad(const DensityMatrix& rho0, double g, double Gamma, double t,
                              const OracleConfig& cfg) {
    if (g < 0 || Gamma < 0 || t < 0) throw std::domain_error("evolve_lindblad: negative input");
    if (rho0.dim() < 2) throw std::domain_error("evolve_lindblad: dim must be >= 2");
    if (t == 0) return rho0;
    {
        double top = rho0.at(rho0.dim() - 1, rho0.dim() - 1).real();
        if (top > cfg.tail_tol) {
            throw CutoffError("evolve_lindblad: initial top-level population above tail_tol",
                              static_cast<int>(std::ceil(1.5 * rho0.dim())));
        }
    }
    double N2 = static_cast<double>(rho0.dim()) * rho0.dim();
    double h = t;
    if (Gamma > 0) h = std::min(h, cfg.step_scale / Gamma);
    if (g > 0) h = std::min(h, cfg.step_scale / (g * N2));
    long steps = std::max(1L, static_cast<long>(std::ceil(t / h)));

    DensityMatrix coarse = rk4_run(rho0, g, Gamma, t, steps, cfg);
    for (int halving = 0; halving < cfg.max_halvings; ++halving) {
        steps *= 2;
        DensityMatrix fine = rk4_run(rho0, g, Gamma, t, steps, cfg);
        if (max_diff(coarse, fine) < cfg.convergence_tol) return fine;
        coarse = std::move(fine);
    }
    throw ConvergenceError("evolve_lindblad: no step convergence below tolerance");
}

DensityMatrix evolve_lindblad_exact(const DensityMatrix& rho0, double g, double Gamma,
                                    double t) {
    if (g < 0 || Gamma < 0 || t < 0) {
        throw std::domain_error("evolve_lindblad_exact: negative input");
    }
    int N = rho0.dim();
    if (N < 2) throw std::domain_error("evolve_lindblad_exact: dim must be >= 2");
    std::vector<double> lg(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) lg[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);

    DensityMatrix out(N);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            int m = j - k;
            std::complex<double> w(0.0, 0.0);
            if (Gamma > 0) {
                std::complex<double> mu(0.5 * Gamma, g * m);
                w = Gamma * (1.0 - std::exp(-2.0 * mu * t)) / (2.0 * mu);
            }
            std::complex<double> sum(0.0, 0.0);
            std::complex<double> w_pow(1.0, 0.0);
            int l_max = N - 1 - std::max(j, k);
            for (int l = 0; l <= l_max; ++l) {
                if (l > 0) w_pow *= w / static_cast<double>(l);
                double boost = std::exp(0.5 * (lg[static_cast<std::size_t>(j + l)] -
                                               lg[static_cast<std::size_t>(j)] +
                                               lg[static_cast<std::size_t>(k + l)] -
                                               lg[static_cast<std::size_t>(k)]));
                sum += w_pow * boost * rho0.at(j + l, k + l);
                if (w == std::complex<double>(0.0, 0.0)) break;  // only l = 0 survives
            }
            std::complex<double> lambda(-0.5 * Gamma * (j + k),
                                        -g * (double(j) * j - double(k) * k));
            out.at(j, k) = std::exp(lambda * t) * sum;
        }
    }
    return out;
}

ModeMoments mode_moments_from_density(const DensityMatrix& rho) {
    int N = rho.dim();
    std::complex<double> a_mean(0, 0), a2(0, 0);
    double occupancy = 0;
    for (int k = 0; k + 1 < N; ++k) {
        a_mean += std::sqrt(k + 1.0) * rho.at(k + 1, k);
    }
    for (int k = 0; k + 2 < N; ++k) {
        a2 += std::sqrt((k + 1.0) * (k + 2.0)) * rho.at(k + 2, k);
    }
    for (int k = 0; k < N; ++k) occupancy += k * rho.at(k, k).real();

    ModeMoments mm;
    mm.first = std::sqrt(2.0) * a_mean;
    mm.s_x = occupancy + a2.real() + 1.0;
    mm.s_y = occupancy - a2.real() + 1.0;
    mm.n_total = 2.0 * occupancy;
    return mm;
}

void dump_csv(const DensityMatrix& rho, std::ostream& out) {
    ModeMoments mm = mode_moments_from_density(rho);
    out << "# trace=" << rho.trace_real() << " herm_defect=" << rho.hermiticity_defect()
        << " first_re=" << mm.first.real() << " first_im=" << mm.first.imag()
        << " s_x=" << mm.s_x << " s_y=" << mm.s_y << "\n";
    out << "k,population\n";
    for (int k = 0; k < rho.dim(); ++k) {
        out << k << "," << rho.at(k, k).real() << "\n";
    }
}

}  // namespace kerrint::oracle
