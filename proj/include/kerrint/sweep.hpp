#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kerrint/estimation.hpp"
#include "kerrint/model.hpp"

namespace kerrint::cli {

enum class Scale { Linear, Log };
enum class SweepVar { N, GammaKerr, GammaDamp, Time };

const char* to_string(SweepVar v);  // "n", "gamma", "Gamma", "t"

/// One swept variable over a linear or log grid; everything else is held at
/// the base ModelParams. Sweeping "Gamma" sets both damping rates.
struct SweepSpec {
    SweepVar var = SweepVar::GammaKerr;
    double min = 0;
    double max = 0;
    int count = 0;
    Scale scale = Scale::Linear;

    /// Parses "VAR:MIN:MAX:COUNT:{lin|log}", e.g. "gamma:0:6.3e-4:241:lin".
    static SweepSpec parse(const std::string& text);
    void validate() const;  // count >= 2, min < max, log grids need min > 0
    std::vector<double> grid() const;
    std::string describe() const;
};

enum class RegimeSelect { Auto, General, NoDamping, StrongDamping, ShortTime };
const char* to_string(RegimeSelect r);
std::optional<RegimeSelect> regime_from_string(std::string_view s);

ModelParams apply_sweep_value(const ModelParams& base, SweepVar var, double value);

struct MomentsRow {
    ModelParams p;
    Quadrature quad = Quadrature::XPlus;
    double mean = 0;
    double variance = 0;
    Regime regime = Regime::General;
};

struct PrecisionRow {
    ModelParams p;
    PrecisionPoint point;
};

/// Evaluate one parameter point under the selected regime. Auto picks a
/// closed form only when the regime report validates it, otherwise the
/// general path runs; the chosen path is recorded per row.
std::vector<MomentsRow> moments_at_point(const ModelParams& p,
                                         const std::vector<Quadrature>& quads,
                                         RegimeSelect sel, const RegimeThresholds& th);
std::vector<PrecisionRow> precision_at_point(const ModelParams& p,
                                             const std::vector<Quadrature>& quads,
                                             RegimeSelect sel, const RegimeThresholds& th,
                                             const PrecisionOptions& opts);

/// Sweep drivers. Points evaluate concurrently (threads <= 0 means hardware
/// concurrency); results land in preassigned slots so output order and
/// content are deterministic.
std::vector<MomentsRow> run_moments_sweep(const ModelParams& base, const SweepSpec& sweep,
                                          const std::vector<Quadrature>& quads,
                                          RegimeSelect sel, const RegimeThresholds& th,
                                          int threads);
std::vector<PrecisionRow> run_precision_sweep(const ModelParams& base, const SweepSpec& sweep,
                                              const std::vector<Quadrature>& quads,
                                              RegimeSelect sel, const RegimeThresholds& th,
                                              const PrecisionOptions& opts, int threads);

/// Fixed-format helpers: doubles at 17 significant digits, infinities as
/// literal "inf"/"-inf", so identical inputs give byte-identical files.
std::string format_double(double v);

void write_moments_csv(std::ostream& out, const std::vector<MomentsRow>& rows,
                       const std::string& context_comment);
void write_precision_csv(std::ostream& out, const std::vector<PrecisionRow>& rows,
                         const std::string& context_comment,
                         const std::vector<std::string>& fit_comments = {});

}  // namespace kerrint::cli
