#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kerrint/sweep.hpp"

namespace kerrint::cli {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   // config or usage error
inline constexpr int kExitFit = 3;     // fit impossible (no finite data)
inline constexpr int kExitOracle = 4;  // oracle cutoff/convergence failure

struct CommonOptions {
    std::string config_path;
    std::string out_path;  // empty = stdout
    int threads = 0;       // <= 0: hardware concurrency
};

struct SweepOptions {
    std::optional<std::string> sweep;  // "VAR:MIN:MAX:COUNT:{lin|log}"
    std::string quads = "all";         // "x+", "x-", "y+", "y-", "all"
    std::string regime = "auto";
    bool fit = false;                  // precision sweeps: append scaling-fit comments
    // Base-point overrides applied after the config-derived ModelParams.
    std::optional<double> n, gamma, beta, Gamma_a, Gamma_b, t;
};

struct OracleCheckOptions {
    double max_n = 16;          // grid n in {1,4,9,16} capped here
    std::optional<int> cutoff;  // force a cutoff (error-path testing)
    double rel_tol = 1e-6;
    double abs_floor = 1e-9;
    double cross_tol = 1e-9;    // stepped vs exact-element agreement
    std::string dump_path;      // optional density diagnostics CSV
};

struct FigdataOptions {
    int figure = 0;
    std::optional<int> count;  // principal-axis resolution override
    bool fit = false;          // figure 5: append scaling fits
};

int cmd_params(const CommonOptions& common, std::ostream& out, std::ostream& err);
int cmd_moments(const CommonOptions& common, const SweepOptions& sw, std::ostream& out,
                std::ostream& err);
int cmd_precision(const CommonOptions& common, const SweepOptions& sw, std::ostream& out,
                  std::ostream& err);
int cmd_oracle_check(const CommonOptions& common, const OracleCheckOptions& opts,
                     std::ostream& out, std::ostream& err);
int cmd_figdata(const CommonOptions& common, const FigdataOptions& fig, std::ostream& out,
                std::ostream& err);

}  // namespace kerrint::cli
