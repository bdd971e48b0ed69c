#include "kerrint/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kerrint/parallel.hpp"
#include "kerrint/version.hpp"

namespace kerrint::cli {

const char* to_string(SweepVar v) {
    switch (v) {
        case SweepVar::N: return "n";
        case SweepVar::GammaKerr: return "gamma";
        case SweepVar::GammaDamp: return "Gamma";
        case SweepVar::Time: return "t";
    }
    return "?";
}

const char* to_string(RegimeSelect r) {
    switch (r) {
        case RegimeSelect::Auto: return "auto";
        case RegimeSelect::General: return "general";
        case RegimeSelect::NoDamping: return "no-damping";
        case RegimeSelect::StrongDamping: return "strong-damping";
        case RegimeSelect::ShortTime: return "short-time";
    }
    return "?";
}

std::optional<RegimeSelect> regime_from_string(std::string_view s) {
    if (s == "auto") return RegimeSelect::Auto;
    if (s == "general") return RegimeSelect::General;
    if (s == "no-damping" || s == "no_damping") return RegimeSelect::NoDamping;
    if (s == "strong-damping" || s == "strong_damping") return RegimeSelect::StrongDamping;
    if (s == "short-time" || s == "short_time") return RegimeSelect::ShortTime;
    return std::nullopt;
}

SweepSpec SweepSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 5) {
        throw std::invalid_argument("sweep spec must be VAR:MIN:MAX:COUNT:{lin|log}");
    }
    SweepSpec s;
    if (parts[0] == "n") s.var = SweepVar::N;
    else if (parts[0] == "gamma") s.var = SweepVar::GammaKerr;
    else if (parts[0] == "Gamma" || parts[0] == "damping") s.var = SweepVar::GammaDamp;
    else if (parts[0] == "t") s.var = SweepVar::Time;
    else throw std::invalid_argument("unknown sweep variable '" + parts[0] + "'");
    try {
        std::size_t p1 = 0, p2 = 0, p3 = 0;
        s.min = std::stod(parts[1], &p1);
        s.max = std::stod(parts[2], &p2);
        s.count = std::stoi(parts[3], &p3);
        if (p1 != parts[1].size() || p2 != parts[2].size() || p3 != parts[3].size()) {
            throw std::invalid_argument("junk");
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numbers in sweep spec '" + text + "'");
    }
    if (parts[4] == "lin") s.scale = Scale::Linear;
    else if (parts[4] == "log") s.scale = Scale::Log;
    else throw std::invalid_argument("sweep scale must be lin or log");
    s.validate();
    return s;
}

void SweepSpec::validate() const {
    if (count < 2) throw std::invalid_argument("sweep count must be >= 2");
    if (!(min < max)) throw std::invalid_argument("sweep needs min < max");
    if (scale == Scale::Log && !(min > 0)) {
        throw std::invalid_argument("log sweeps need min > 0");
    }
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> g(static_cast<std::size_t>(count));
    if (scale == Scale::Linear) {
        double h = (max - min) / (count - 1);
        for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = min + h * i;
    } else {
        double lo = std::log(min), h = (std::log(max) - lo) / (count - 1);
        for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(lo + h * i);
    }
    g.front() = min;
    g.back() = max;
    return g;
}

std::string SweepSpec::describe() const {
    std::ostringstream os;
    os << to_string(var) << ":" << format_double(min) << ":" << format_double(max) << ":"
       << count << ":" << (scale == Scale::Linear ? "lin" : "log");
    return os.str();
}

ModelParams apply_sweep_value(const ModelParams& base, SweepVar var, double value) {
    ModelParams p = base;
    switch (var) {
        case SweepVar::N: p.n = value; break;
        case SweepVar::GammaKerr: p.gamma = value; break;
        case SweepVar::GammaDamp:
            p.Gamma_a = value;
            p.Gamma_b = value;
            break;
        case SweepVar::Time: p.t = value; break;
    }
    return p;
}

namespace {

Regime resolve_moments_regime(const ModelParams& p, RegimeSelect sel,
                              const RegimeThresholds& th) {
    switch (sel) {
        case RegimeSelect::Auto: return select_moments_regime(p, th);
        case RegimeSelect::General: return Regime::General;
        case RegimeSelect::NoDamping: return Regime::NoDamping;
        case RegimeSelect::StrongDamping: return Regime::StrongDamping;
        case RegimeSelect::ShortTime: return Regime::ShortTime;
    }
    return Regime::General;
}

}  // namespace

std::vector<MomentsRow> moments_at_point(const ModelParams& p,
                                         const std::vector<Quadrature>& quads,
                                         RegimeSelect sel, const RegimeThresholds& th) {
    Regime regime = resolve_moments_regime(p, sel, th);
    FourMeans means;
    std::array<double, 4> vars{};  // indexed like kAllQuadratures
    switch (regime) {
        case Regime::General: {
            QuadratureStats st = output_stats(mode_moments({p.n, p.gamma, p.Gamma_a, p.t}),
                                              mode_moments({p.n, p.beta_b, p.Gamma_b, p.t}));
            means = {st.mean_x_plus, st.mean_x_minus, st.mean_y_plus, st.mean_y_minus};
            vars = {st.var_x_plus, st.var_x_minus, st.var_y_plus, st.var_y_minus};
            break;
        }
        case Regime::NoDamping: {
            means = means_no_damping(p.n, p.gamma, p.beta_b, p.t);
            FourSecondMoments m2 = second_moments_no_damping(p.n, p.gamma, p.beta_b, p.t);
            for (std::size_t i = 0; i < 4; ++i) {
                Quadrature q = kAllQuadratures[i];
                vars[i] = m2.get(q) - means.get(q) * means.get(q);
            }
            break;
        }
        case Regime::StrongDamping:
            means = means_strong_damping(p.n, p.gamma, p.beta_b, p.Gamma_a, p.Gamma_b, p.t);
            vars = {1.0, 1.0, 1.0, 1.0};  // coherent-state level in this regime
            break;
        case Regime::ShortTime:
            means = means_short_time(p.n, p.gamma, p.beta_b, p.t);
            vars = {1.0, 1.0, 1.0, 1.0};
            break;
    }
    std::vector<MomentsRow> rows;
    rows.reserve(quads.size());
    for (Quadrature q : quads) {
        std::size_t qi = static_cast<std::size_t>(q);
        rows.push_back({p, q, means.get(q), vars[qi], regime});
    }
    return rows;
}

std::vector<PrecisionRow> precision_at_point(const ModelParams& p,
                                             const std::vector<Quadrature>& quads,
                                             RegimeSelect sel, const RegimeThresholds& th,
                                             const PrecisionOptions& opts) {
    Regime regime;
    switch (sel) {
        case RegimeSelect::Auto: regime = select_precision_regime(p, th); break;
        case RegimeSelect::General: regime = Regime::General; break;
        case RegimeSelect::NoDamping: regime = Regime::NoDamping; break;
        case RegimeSelect::StrongDamping: regime = Regime::StrongDamping; break;
        case RegimeSelect::ShortTime: regime = Regime::ShortTime; break;
        default: regime = Regime::General; break;
    }
    std::vector<PrecisionRow> rows;
    rows.reserve(quads.size());
    for (Quadrature q : quads) {
        PrecisionPoint pt;
        switch (regime) {
            case Regime::General: pt = precision_general(q, p, opts); break;
            case Regime::NoDamping:
                pt = precision_no_damping(q, p.n, p.gamma * p.t, opts.shots);
                break;
            case Regime::ShortTime:
                pt = precision_no_damping(q, p.n, p.gamma * p.t, opts.shots);
                pt.regime = Regime::ShortTime;
                break;
            case Regime::StrongDamping:
                pt = precision_strong_damping(q, p.n, p.gamma, p.Gamma_a, p.t, opts.shots);
                break;
        }
        rows.push_back({p, pt});
    }
    return rows;
}

std::vector<MomentsRow> run_moments_sweep(const ModelParams& base, const SweepSpec& sweep,
                                          const std::vector<Quadrature>& quads,
                                          RegimeSelect sel, const RegimeThresholds& th,
                                          int threads) {
    std::vector<double> grid = sweep.grid();
    std::vector<std::vector<MomentsRow>> slots(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        slots[i] = moments_at_point(apply_sweep_value(base, sweep.var, grid[i]), quads, sel, th);
    });
    std::vector<MomentsRow> rows;
    rows.reserve(grid.size() * quads.size());
    for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
    return rows;
}

std::vector<PrecisionRow> run_precision_sweep(const ModelParams& base, const SweepSpec& sweep,
                                              const std::vector<Quadrature>& quads,
                                              RegimeSelect sel, const RegimeThresholds& th,
                                              const PrecisionOptions& opts, int threads) {
    std::vector<double> grid = sweep.grid();
    std::vector<std::vector<PrecisionRow>> slots(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        slots[i] =
            precision_at_point(apply_sweep_value(base, sweep.var, grid[i]), quads, sel, th, opts);
    });
    std::vector<PrecisionRow> rows;
    rows.reserve(grid.size() * quads.size());
    for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
    return rows;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_header(std::ostream& out, const char* kind, const std::string& context) {
    out << "# kerrint " << kerrint::kVersion << " " << kind << "\n";
    if (!context.empty()) out << "# " << context << "\n";
}

void write_params(std::ostream& out, const ModelParams& p) {
    out << format_double(p.n) << ',' << format_double(p.gamma) << ','
        << format_double(p.beta_b) << ',' << format_double(p.Gamma_a) << ','
        << format_double(p.Gamma_b) << ',' << format_double(p.t);
}

}  // namespace

void write_moments_csv(std::ostream& out, const std::vector<MomentsRow>& rows,
                       const std::string& context_comment) {
    write_header(out, "moments", context_comment);
    out << "n,gamma,beta,Gamma_a,Gamma_b,t,quad,mean,variance,regime\n";
    for (const auto& r : rows) {
        write_params(out, r.p);
        out << ',' << to_string(r.quad) << ',' << format_double(r.mean) << ','
            << format_double(r.variance) << ',' << to_string(r.regime) << "\n";
    }
}

void write_precision_csv(std::ostream& out, const std::vector<PrecisionRow>& rows,
                         const std::string& context_comment,
                         const std::vector<std::string>& fit_comments) {
    write_header(out, "precision", context_comment);
    out << "n,gamma,beta,Gamma_a,Gamma_b,t,quad,gamma_t,delta,derivative,sigma,regime\n";
    for (const auto& r : rows) {
        write_params(out, r.p);
        const PrecisionPoint& pt = r.point;
        out << ',' << to_string(pt.quad) << ',' << format_double(pt.gamma_t) << ','
            << format_double(pt.infinite ? std::numeric_limits<double>::infinity() : pt.delta)
            << ',' << format_double(pt.derivative) << ',' << format_double(pt.sigma) << ','
            << to_string(pt.regime) << "\n";
    }
    for (const auto& c : fit_comments) out << "# " << c << "\n";
}

}  // namespace kerrint::cli
