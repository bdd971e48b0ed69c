#include "kerrint/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "kerrint/config.hpp"
#include "kerrint/constants.hpp"
#include "kerrint/oracle.hpp"
#include "kerrint/parallel.hpp"
#include "kerrint/version.hpp"

namespace kerrint::cli {

namespace {

struct LoadedConfig {
    Config cfg;
    ModelParams mp;
};

LoadedConfig load(const CommonOptions& common, std::ostream& err) {
    if (common.config_path.empty()) throw ConfigError("--config is required");
    LoadedConfig lc{load_config(common.config_path), {}};
    lc.mp = derive_model_params(lc.cfg.phys, lc.cfg.n, lc.cfg.t);
    for (const auto& w : lc.cfg.warnings) err << "warning: " << w << "\n";
    return lc;
}

int run_to_output(const CommonOptions& common, std::ostream& fallback,
                  const std::function<int(std::ostream&)>& body) {
    if (common.out_path.empty()) return body(fallback);
    std::ofstream f(common.out_path);
    if (!f) throw ConfigError("cannot open output file: " + common.out_path);
    return body(f);
}

std::vector<Quadrature> parse_quads(const std::string& text) {
    if (text == "all") {
        return {kAllQuadratures.begin(), kAllQuadratures.end()};
    }
    std::vector<Quadrature> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) {
        auto q = quadrature_from_string(cur);
        if (!q) throw ConfigError("unknown quadrature '" + cur + "'");
        out.push_back(*q);
    }
    if (out.empty()) throw ConfigError("empty quadrature selection");
    return out;
}

ModelParams apply_overrides(ModelParams mp, const SweepOptions& sw) {
    if (sw.n) mp.n = *sw.n;
    if (sw.gamma) mp.gamma = *sw.gamma;
    if (sw.beta) mp.beta_b = *sw.beta;
    if (sw.Gamma_a) mp.Gamma_a = *sw.Gamma_a;
    if (sw.Gamma_b) mp.Gamma_b = *sw.Gamma_b;
    if (sw.t) mp.t = *sw.t;
    mp.validate();
    return mp;
}

RegimeSelect parse_regime(const std::string& text) {
    auto r = regime_from_string(text);
    if (!r) throw ConfigError("unknown regime '" + text + "'");
    return *r;
}

std::string context_line(const ModelParams& mp, const std::string& extra) {
    std::ostringstream os;
    os << "params: n=" << format_double(mp.n) << " gamma=" << format_double(mp.gamma)
       << " beta=" << format_double(mp.beta_b) << " Gamma_a=" << format_double(mp.Gamma_a)
       << " Gamma_b=" << format_double(mp.Gamma_b) << " t=" << format_double(mp.t);
    if (!extra.empty()) os << " " << extra;
    return os.str();
}

std::vector<std::string> scaling_fits(const std::vector<PrecisionRow>& rows,
                                      const std::vector<Quadrature>& quads) {
    // One fit per quadrature over whatever n values appear in the rows.
    std::vector<std::string> out;
    for (Quadrature q : quads) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows) {
            if (r.point.quad == q) pts.emplace_back(r.p.n, r.point.delta);
        }
        ScalingFit fit = fit_scaling_exponent(pts);  // throws FitError if impossible
        std::ostringstream os;
        os << "fit quad=" << to_string(q) << " slope=" << format_double(fit.slope)
           << " intercept=" << format_double(fit.intercept)
           << " stderr=" << format_double(fit.stderr_slope) << " points=" << fit.points_used;
        out.push_back(os.str());
    }
    return out;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFit;
    } catch (const oracle::CutoffError& e) {
        err << "error: " << e.what() << " (suggested cutoff " << e.suggested_cutoff << ")\n";
        return kExitOracle;
    } catch (const oracle::ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitOracle;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int cmd_params(const CommonOptions& common, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        LoadedConfig lc = load(common, err);
        const ModelParams& mp = lc.mp;
        RegimeReport rep = classify_regime(mp, lc.cfg.phys.omega, lc.cfg.thresholds);
        return run_to_output(common, out, [&](std::ostream& os) {
            os << "# kerrint " << kVersion << " params\n";
            os << "key,value\n";
            auto row = [&os](const char* k, double v) {
                os << k << ',' << format_double(v) << "\n";
            };
            row("chi", lc.cfg.phys.resolved_chi());
            row("delta_x", mp.delta_x);
            row("gamma", mp.gamma);
            row("beta", mp.beta_b);
            row("Gamma_a", mp.Gamma_a);
            row("Gamma_b", mp.Gamma_b);
            row("kappa", mp.kappa);
            row("delta_t", mp.delta_t);
            row("n", mp.n);
            row("t", mp.t);
            row("n_gamma_t", mp.n * mp.gamma * mp.t);
            os << "short_time_valid," << (rep.short_time_valid ? 1 : 0) << "\n";
            row("short_time_margin", rep.short_time_margin);
            os << "strong_damping_valid," << (rep.strong_damping_valid ? 1 : 0) << "\n";
            row("damping_ratio_a", rep.damping_ratio_a);
            row("damping_ratio_b", rep.damping_ratio_b);
            row("Gamma_a_t_over_n", rep.Gamma_a_t_over_n);
            row("Gamma_b_t_over_n", rep.Gamma_b_t_over_n);
            os << "pulse_assumptions_valid," << (rep.pulse_assumptions_valid ? 1 : 0) << "\n";
            row("kappa_over_omega", rep.kappa_over_omega);
            row("kappa_t", rep.kappa_t);
            return kExitOk;
        });
    });
}

int cmd_moments(const CommonOptions& common, const SweepOptions& sw, std::ostream& out,
                std::ostream& err) {
    return guarded(err, [&] {
        LoadedConfig lc = load(common, err);
        ModelParams base = apply_overrides(lc.mp, sw);
        std::vector<Quadrature> quads = parse_quads(sw.quads);
        RegimeSelect sel = parse_regime(sw.regime);

        std::vector<MomentsRow> rows;
        std::string ctx;
        if (sw.sweep) {
            SweepSpec spec = SweepSpec::parse(*sw.sweep);
            rows = run_moments_sweep(base, spec, quads, sel, lc.cfg.thresholds, common.threads);
            ctx = context_line(base, "sweep=" + spec.describe() + " regime=" + sw.regime);
        } else {
            rows = moments_at_point(base, quads, sel, lc.cfg.thresholds);
            ctx = context_line(base, "regime=" + sw.regime);
        }
        return run_to_output(common, out, [&](std::ostream& os) {
            write_moments_csv(os, rows, ctx);
            return kExitOk;
        });
    });
}

int cmd_precision(const CommonOptions& common, const SweepOptions& sw, std::ostream& out,
                  std::ostream& err) {
    return guarded(err, [&] {
        LoadedConfig lc = load(common, err);
        ModelParams base = apply_overrides(lc.mp, sw);
        std::vector<Quadrature> quads = parse_quads(sw.quads);
        RegimeSelect sel = parse_regime(sw.regime);
        PrecisionOptions popts;

        std::vector<PrecisionRow> rows;
        std::string ctx;
        if (sw.sweep) {
            SweepSpec spec = SweepSpec::parse(*sw.sweep);
            rows = run_precision_sweep(base, spec, quads, sel, lc.cfg.thresholds, popts,
                                       common.threads);
            ctx = context_line(base, "sweep=" + spec.describe() + " regime=" + sw.regime);
        } else {
            rows = precision_at_point(base, quads, sel, lc.cfg.thresholds, popts);
            ctx = context_line(base, "regime=" + sw.regime);
        }
        std::vector<std::string> fits;
        if (sw.fit) fits = scaling_fits(rows, quads);
        return run_to_output(common, out, [&](std::ostream& os) {
            write_precision_csv(os, rows, ctx, fits);
            return kExitOk;
        });
    });
}

int cmd_oracle_check(const CommonOptions& common, const OracleCheckOptions& opts,
                     std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        // Self-contained grid; no config needed.
        const std::vector<double> gts = {0.01, 0.1, 0.5};
        const std::vector<double> Gts = {0.0, 0.5, 2.0};
        const double t = 1.0;

        struct Case {
            double n, gt, Gt;
            bool ok = false;
            double rel = 0, cross = 0, dbl = 0, revival = 0;
        };
        std::vector<Case> cases;
        for (double n : {1.0, 4.0, 9.0, 16.0}) {
            if (n > opts.max_n) continue;
            for (double gt : gts) {
                for (double Gt : Gts) cases.push_back({n, gt, Gt});
            }
        }
        if (cases.empty()) throw ConfigError("oracle-check: empty grid (max-n too small)");

        parallel_for(cases.size(), common.threads, [&](std::size_t i) {
            Case& c = cases[i];
            double g = c.gt / t, Gamma = c.Gt / t;
            std::complex<double> amp(std::sqrt(c.n / 2.0), 0.0);
            int cutoff = opts.cutoff ? *opts.cutoff : oracle::choose_cutoff(amp, 1e-12);
            oracle::DensityMatrix rho0 = oracle::coherent_density(amp, cutoff);

            oracle::DensityMatrix stepped = oracle::evolve_lindblad(rho0, g, Gamma, t);
            oracle::DensityMatrix exact = oracle::evolve_lindblad_exact(rho0, g, Gamma, t);
            for (std::size_t e = 0; e < stepped.data().size(); ++e) {
                c.cross = std::max(c.cross, std::abs(stepped.data()[e] - exact.data()[e]));
            }

            ModeMoments mo = oracle::mode_moments_from_density(stepped);
            ModeMoments ma = mode_moments({c.n, g, Gamma, t});
            auto rel = [&](double a, double b) {
                double diff = std::abs(a - b);
                return diff <= opts.abs_floor
                           ? 0.0
                           : diff / std::max({std::abs(a), std::abs(b), 1e-300});
            };
            c.rel = std::max({std::abs(mo.first - ma.first) <= opts.abs_floor
                                  ? 0.0
                                  : std::abs(mo.first - ma.first) /
                                        std::max(std::abs(ma.first), 1e-300),
                              rel(mo.s_x, ma.s_x), rel(mo.s_y, ma.s_y)});

            // Cutoff insensitivity via the cheap exact path at twice the basis.
            ModeMoments big = oracle::mode_moments_from_density(oracle::evolve_lindblad_exact(
                oracle::coherent_density(amp, 2 * cutoff), g, Gamma, t));
            ModeMoments small = oracle::mode_moments_from_density(exact);
            c.dbl = std::max({std::abs(big.first - small.first) /
                                  std::max(std::abs(big.first), 1e-300),
                              rel(big.s_x, small.s_x), rel(big.s_y, small.s_y)});

            if (Gamma == 0.0) {
                // Kerr revival: |<a>|(t) = |amp| exp[-|amp|^2 (1 - cos 2 g t)]
                double pred = std::abs(amp) *
                              std::exp(-std::norm(amp) * (1.0 - std::cos(2 * g * t)));
                c.revival = std::abs(std::abs(mo.first) / std::sqrt(2.0) - pred);
            }
            c.ok = c.rel < opts.rel_tol && c.cross < opts.cross_tol && c.revival < 1e-8;
        });

        if (!opts.dump_path.empty()) {
            std::ofstream dump(opts.dump_path);
            if (!dump) throw ConfigError("cannot open dump file: " + opts.dump_path);
            std::complex<double> amp(std::sqrt(cases.back().n / 2.0), 0.0);
            int cutoff = opts.cutoff ? *opts.cutoff : oracle::choose_cutoff(amp, 1e-12);
            oracle::dump_csv(
                oracle::evolve_lindblad_exact(oracle::coherent_density(amp, cutoff),
                                              gts.back() / t, Gts.back() / t, t),
                dump);
        }

        bool pass = true;
        double worst_rel = 0, worst_cross = 0, worst_double = 0, worst_revival = 0;
        for (const Case& c : cases) {
            pass = pass && c.ok;
            worst_rel = std::max(worst_rel, c.rel);
            worst_cross = std::max(worst_cross, c.cross);
            worst_double = std::max(worst_double, c.dbl);
            worst_revival = std::max(worst_revival, c.revival);
        }
        return run_to_output(common, out, [&](std::ostream& os) {
            os << "# kerrint " << kVersion << " oracle-check\n";
            for (const Case& c : cases) {
                os << (c.ok ? "ok   " : "FAIL ") << "n=" << c.n << " gt=" << c.gt
                   << " Gt=" << c.Gt << " rel=" << format_double(c.rel)
                   << " cross=" << format_double(c.cross) << "\n";
            }
            os << "max_rel_err=" << format_double(worst_rel)
               << " max_cross_err=" << format_double(worst_cross)
               << " max_double_cutoff_err=" << format_double(worst_double)
               << " max_revival_err=" << format_double(worst_revival) << "\n";
            os << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? kExitOk : kExitOracle;
        });
    });
}

int cmd_figdata(const CommonOptions& common, const FigdataOptions& fig, std::ostream& out,
                std::ostream& err) {
    return guarded(err, [&] {
        LoadedConfig lc = load(common, err);
        ModelParams base = lc.mp;
        const RegimeThresholds& th = lc.cfg.thresholds;
        base.beta_b = 0.0;  // figures use a linear reference arm

        const double n_fid = base.n;
        const double t_fid = base.t;
        const double Gamma_fid = base.Gamma_a;
        std::vector<Quadrature> quads = {Quadrature::XPlus, Quadrature::YPlus};

        switch (fig.figure) {
            case 2:
            case 3: {
                // gamma x Gamma surface at the fiducial point; figure 2 reads the
                // means, figure 3 the variances; both columns are emitted anyway.
                int count = fig.count.value_or(241);
                double gamma_max = 2.0 * kPi / (n_fid * t_fid);
                SweepSpec spec{SweepVar::GammaKerr, 0.0, gamma_max, count, Scale::Linear};
                std::vector<double> Gammas = {0.0,          Gamma_fid / 10.0, Gamma_fid / 4.0,
                                              Gamma_fid / 2.0, Gamma_fid,    2.0 * Gamma_fid};
                std::vector<MomentsRow> rows;
                for (double G : Gammas) {
                    ModelParams b = base;
                    b.Gamma_a = G;
                    b.Gamma_b = G;
                    auto part = run_moments_sweep(b, spec, quads, RegimeSelect::General, th,
                                                  common.threads);
                    rows.insert(rows.end(), part.begin(), part.end());
                }
                return run_to_output(common, out, [&](std::ostream& os) {
                    write_moments_csv(os, rows,
                                      context_line(base, "figure=" + std::to_string(fig.figure) +
                                                             " sweep=" + spec.describe()));
                    return kExitOk;
                });
            }
            case 4: {
                int count = fig.count.value_or(481);
                double gamma_max = 2.0 * kPi / (n_fid * t_fid);
                SweepSpec spec{SweepVar::GammaKerr, 0.0, gamma_max, count, Scale::Linear};
                std::vector<PrecisionRow> rows;
                for (double G : {0.0, Gamma_fid}) {
                    ModelParams b = base;
                    b.Gamma_a = G;
                    b.Gamma_b = G;
                    auto part = run_precision_sweep(b, spec, quads, RegimeSelect::Auto, th, {},
                                                    common.threads);
                    rows.insert(rows.end(), part.begin(), part.end());
                }
                return run_to_output(common, out, [&](std::ostream& os) {
                    write_precision_csv(os, rows,
                                        context_line(base, "figure=4 sweep=" + spec.describe()));
                    return kExitOk;
                });
            }
            case 5: {
                int count = fig.count.value_or(41);
                SweepSpec spec{SweepVar::N, 1e5, 1e7, count, Scale::Log};
                std::vector<PrecisionRow> rows;
                std::vector<std::string> fits;
                for (double G : {0.0, Gamma_fid / 10.0, Gamma_fid}) {
                    ModelParams b = base;
                    b.Gamma_a = G;
                    b.Gamma_b = G;
                    auto part = run_precision_sweep(b, spec, quads, RegimeSelect::Auto, th, {},
                                                    common.threads);
                    if (fig.fit) {
                        for (auto& f : scaling_fits(part, quads)) {
                            fits.push_back("Gamma=" + format_double(G) + " " + f);
                        }
                    }
                    rows.insert(rows.end(), part.begin(), part.end());
                }
                return run_to_output(common, out, [&](std::ostream& os) {
                    write_precision_csv(os, rows,
                                        context_line(base, "figure=5 sweep=" + spec.describe()),
                                        fits);
                    return kExitOk;
                });
            }
            default:
                throw ConfigError("unknown figure id " + std::to_string(fig.figure) +
                                  " (expected 2..5)");
        }
    });
}

}  // namespace kerrint::cli
