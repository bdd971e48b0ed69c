#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kerrint/commands.hpp"
#include "kerrint/version.hpp"

namespace cli = kerrint::cli;

int main(int argc, char** argv) {
    CLI::App app{"Damped-Kerr nanomechanical interferometer toolkit"};
    app.set_version_flag("--version", std::string("kerrint ") + kerrint::kVersion);
    app.require_subcommand(1);

    cli::CommonOptions common;
    cli::SweepOptions sw;
    cli::OracleCheckOptions oc;
    cli::FigdataOptions fig;
    std::optional<unsigned long long> seed;  // reserved; all computation is deterministic

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "key = value parameter file");
        sub->add_option("--out", common.out_path, "output path (default: stdout)");
        sub->add_option("--threads", common.threads, "worker threads (default: hardware)");
        sub->add_option("--seed", seed, "reserved, unused");
    };
    auto add_sweepish = [&](CLI::App* sub) {
        sub->add_option("--sweep", sw.sweep, "VAR:MIN:MAX:COUNT:{lin|log}; VAR in n,gamma,Gamma,t");
        sub->add_option("--quad", sw.quads, "x+, x-, y+, y-, comma list, or all")
            ->default_val("all");
        sub->add_option("--regime", sw.regime,
                        "auto, general, no-damping, strong-damping, short-time")
            ->default_val("auto");
        sub->add_option("--n", sw.n, "override input phonon number");
        sub->add_option("--gamma", sw.gamma, "override mode-a Kerr rate [1/s]");
        sub->add_option("--beta", sw.beta, "override mode-b Kerr rate [1/s]");
        sub->add_option("--Gamma-a", sw.Gamma_a, "override mode-a damping [1/s]");
        sub->add_option("--Gamma-b", sw.Gamma_b, "override mode-b damping [1/s]");
        sub->add_option("--t", sw.t, "override evolution time [s]");
    };

    CLI::App* params = app.add_subcommand("params", "derive model coefficients and regime flags");
    add_common(params);

    CLI::App* moments = app.add_subcommand("moments", "output-quadrature means and variances");
    add_common(moments);
    add_sweepish(moments);

    CLI::App* precision = app.add_subcommand("precision", "estimation precision delta(gamma t)");
    add_common(precision);
    add_sweepish(precision);
    precision->add_flag("--fit", sw.fit, "append log-log scaling fits per quadrature");

    CLI::App* oracle_check =
        app.add_subcommand("oracle-check", "closed forms vs the Fock-space integrator");
    add_common(oracle_check);
    oracle_check->add_option("--max-n", oc.max_n, "largest grid n (default 16)");
    oracle_check->add_option("--cutoff", oc.cutoff, "force a basis cutoff");
    oracle_check->add_option("--rel-tol", oc.rel_tol, "analytic vs integrator tolerance");
    oracle_check->add_option("--dump", oc.dump_path, "density diagnostics CSV");

    CLI::App* figdata = app.add_subcommand("figdata", "figure-ready CSV grids");
    add_common(figdata);
    figdata->add_option("figure", fig.figure, "figure id: 2, 3, 4 or 5")->required();
    figdata->add_option("--count", fig.count, "principal-axis resolution");
    figdata->add_flag("--fit", fig.fit, "figure 5: append scaling fits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    if (params->parsed()) return cli::cmd_params(common, std::cout, std::cerr);
    if (moments->parsed()) return cli::cmd_moments(common, sw, std::cout, std::cerr);
    if (precision->parsed()) return cli::cmd_precision(common, sw, std::cout, std::cerr);
    if (oracle_check->parsed()) return cli::cmd_oracle_check(common, oc, std::cout, std::cerr);
    if (figdata->parsed()) return cli::cmd_figdata(common, fig, std::cout, std::cerr);
    return cli::kExitUsage;
}
