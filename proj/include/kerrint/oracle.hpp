#pragma once

#include <complex>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "kerrint/kerr_analytics.hpp"

namespace kerrint::oracle {

/// Raised when a truncated-basis result cannot be trusted: the coherent tail
/// beyond the cutoff, or the top-level population during evolution, exceeds
/// the configured bound. Carries a usable cutoff suggestion.
class CutoffError : public std::runtime_error {
  public:
    CutoffError(const std::string& msg, int suggested)
        : std::runtime_error(msg), suggested_cutoff(suggested) {}
    int suggested_cutoff = 0;
};

class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dense single-mode density matrix in the number basis, row-major.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(int dim)
        : dim_(dim), m_(static_cast<std::size_t>(dim) * dim) {}

    int dim() const { return dim_; }
    std::complex<double>& at(int j, int k) { return m_[idx(j, k)]; }
    const std::complex<double>& at(int j, int k) const { return m_[idx(j, k)]; }
    std::vector<std::complex<double>>& data() { return m_; }
    const std::vector<std::complex<double>>& data() const { return m_; }

    double trace_real() const;
    double hermiticity_defect() const;  // max_jk |rho_jk - conj(rho_kj)|

  private:
    std::size_t idx(int j, int k) const {
        return static_cast<std::size_t>(j) * dim_ + k;
    }
    int dim_ = 0;
    std::vector<std::complex<double>> m_;
};

struct OracleConfig {
    double tail_tol = 1e-12;       // acceptable population beyond the cutoff
    double step_scale = 1e-2;      // initial step: Gamma h <= step_scale and g Nc^2 h <= step_scale
    double convergence_tol = 1e-9; // halve the step until max |rho_h - rho_{h/2}| is below this
    double trace_tol = 1e-9;       // trace drift beyond this fails the run (never renormalized)
    int max_halvings = 14;
};

/// Smallest cutoff whose Poisson tail (mean |amp|^2) is below tail_tol,
/// padded by 20% headroom.
int choose_cutoff(std::complex<double> amp, double tail_tol);

/// Truncated, renormalized |amp><amp|. Throws CutoffError (with a suggested
/// cutoff) when the truncated tail exceeds tail_tol.
DensityMatrix coherent_density(std::complex<double> amp, int cutoff,
                               double tail_tol = 1e-12);

/// Brute-force integration of
///   drho/dt = -i g [(a'a)^2, rho] + (Gamma/2)(2 a rho a' - a'a rho - rho a'a)
/// by fixed-step classical RK4. The starting step obeys
///   Gamma h <= step_scale  and  g Nc^2 h <= step_scale
/// (the fastest coherence phase in the truncated space) and is halved until
/// two consecutive runs agree elementwise below convergence_tol; the finer
/// result is returned. Trace drift is monitored, never repaired.
DensityMatrix evolve_lindblad(const DensityMatrix& rho0, double g, double Gamma,
                              double t, const OracleConfig& cfg = {});

/// Independent second path: the exact per-element propagator. The Kerr term
/// is diagonal and the dissipator couples each element only to its upper
/// neighbor along the same off-diagonal, so each element integrates in closed
/// form:
///   rho_jk(t) = e^{lambda_jk t} Sum_l  (w^l / l!) sqrt[(j+l)!(k+l)!/(j!k!)] rho_{j+l,k+l}(0)
///   lambda_jk = -i g (j^2 - k^2) - Gamma (j + k)/2
///   w         = Gamma (1 - e^{-2 mu t}) / (2 mu),  mu = Gamma/2 + i g (j - k)
/// |w| stays O(1) and all terms share its phase, so the sum is cancellation-free.
DensityMatrix evolve_lindblad_exact(const DensityMatrix& rho0, double g,
                                    double Gamma, double t);

/// Extract ModeMoments via the antinormal-ordering identities
///   first = sqrt(2) tr(rho a),
///   s_x   = <a'a> + Re<a^2> + 1,   s_y = <a'a> - Re<a^2> + 1.
/// With amp = sqrt(n/2) at t = 0 this reproduces (sqrt(n), 1 + n, 1) exactly.
/// n_total is reported as 2 <a'a> (the instantaneous equivalent); t is NaN.
ModeMoments mode_moments_from_density(const DensityMatrix& rho);

/// Debug dump: number-basis populations and the extracted moments, CSV.
void dump_csv(const DensityMatrix& rho, std::ostream& out);

}  // namespace kerrint::oracle
