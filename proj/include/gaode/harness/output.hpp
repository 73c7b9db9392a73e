#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "../metrics.hpp"
#include "../rng.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "svg.hpp"

namespace gaode::harness {

/// Shortest round-trip representation.
inline std::string fmt_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline std::string fmt_optional(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Every setting that determines the records, followed by the fixed
/// implementation decisions. Output location and thread count are excluded
/// because they never change results.
inline Metadata experiment_metadata(const ExperimentConfig& cfg)
{
    Metadata m{
        {"config.method", cfg.method},
        {"config.function", cfg.function},
        {"config.dim", std::to_string(cfg.dim)},
        {"config.population", std::to_string(cfg.population())},
        {"config.runs", std::to_string(cfg.runs)},
        {"config.budget", std::to_string(cfg.evaluation_budget())},
        {"config.threshold", fmt_double(cfg.threshold)},
        {"config.seed", std::to_string(cfg.seed)},
        {"config.instance_seed", std::to_string(cfg.instance_seed)},
        {"config.heatmap_bins", std::to_string(cfg.heatmap_bins)},
    };
    if (cfg.method == "gao") {
        m.emplace_back("config.oracle.lambda", std::to_string(cfg.oracle.lambda));
        m.emplace_back("config.oracle.variant", cfg.oracle.variant);
        m.emplace_back("config.oracle.repeats", std::to_string(cfg.oracle.repeats));
        if (cfg.oracle.variant == "custom") {
            m.emplace_back("config.oracle.f_range", "(" + fmt_double(cfg.oracle.range.f_min) + "," +
                                                        fmt_double(cfg.oracle.range.f_max) + "]");
            m.emplace_back("config.oracle.cr_range", "[" + fmt_double(cfg.oracle.range.cr_min) + "," +
                                                         fmt_double(cfg.oracle.range.cr_max) + "]");
        }
        m.emplace_back("note.oracle", "diagnostic oracle; candidate evaluations are not charged to the budget");
    }
    const auto [lo, hi] = default_box(cfg.function_id());
    const Metadata decisions{
        {"decision.operator", "rand/1/bin, generational one-to-one selection, ties keep the trial"},
        {"decision.generator", std::string(generator_name)},
        {"decision.seeding", "run seed = splitmix(master, run index); streams shared/param/init derived per run"},
        {"decision.draw_order", "r1,r2,r3 by rejection; then forced index; then D mask uniforms (shared stream)"},
        {"decision.crossover_rule", "take mutant when mask uniform <= CR or index is forced"},
        {"decision.bound_repair", "midpoint between parent and violated bound"},
        {"decision.bounds", "[" + fmt_double(lo) + "," + fmt_double(hi) + "]^D"},
        {"decision.ellipsoid_conditioning", "1e6"},
        {"decision.rotation", "Gram-Schmidt of a normal matrix seeded by (instance_seed, D)"},
        {"decision.population_rule", "N=20 for D<=4, N=5D otherwise"},
        {"decision.jde", "F0=0.5 CR0=0.9 tauF=0.1 tauCR=0.1 F=0.1+0.9u; new values kept only on success"},
        {"decision.epsde", "F pool 0.4..0.9, CR pool 0.1..0.9; FIFO success memory of capacity N; on failure coin flip pool/memory"},
        {"decision.jade", "c=0.1, muF=muCR=0.5, Cauchy(muF,0.1)/Normal(muCR,0.1); Lehmer F, arithmetic CR; no archive"},
        {"decision.mde", "Fm=0.5 CRm=0.6, power mean n=1.5 for F and CR, wF=0.8+0.2u, wCR=0.9+0.1u"},
        {"decision.shade", "H=10, memories 0.5, weighted Lehmer means for F and CR, improvement weights"},
        {"decision.oracle", "F uniform on (Fmin,Fmax], CR uniform on [CRmin,CRmax]; ties go to the lowest candidate"},
        {"decision.sp1", "mean successful FEvals / success rate (sp1_per_success = mean / success count)"},
        {"decision.success", "|f(x_bsf) - f*| <= threshold on counted evaluations"},
    };
    m.insert(m.end(), decisions.begin(), decisions.end());
    return m;
}

inline void write_comment_header(std::ostream& os, const Metadata& meta)
{
    for (const auto& [k, v] : meta)
        os << "# " << k << "=" << v << "\n";
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

inline std::string runs_csv(const ExperimentConfig& cfg, std::span<const RunRecord> records)
{
    std::ostringstream os;
    write_comment_header(os, experiment_metadata(cfg));
    os << "run,seed,variant,success,fevals_to_success,fevals,oracle_evals,generations,final_error,theta_length\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        os << k << "," << r.seed << "," << r.method << "," << (r.success ? 1 : 0) << ","
           << (r.success ? std::to_string(r.fevals_to_success) : std::string()) << "," << r.fevals << ","
           << r.oracle_evals << "," << r.generations << "," << fmt_double(r.final_error()) << "," << r.theta.size()
           << "\n";
    }
    return os.str();
}

inline std::string summary_csv(const ExperimentConfig& cfg, const ExperimentSummary& s)
{
    std::ostringstream os;
    write_comment_header(os, experiment_metadata(cfg));
    os << "method,function,dim,population,runs,successes,success_rate,sp1,sp1_per_success,mean_success_fevals,"
          "median_fevals,min_success_fevals,best_run,best_fevals,best_oracle_evals,total_fevals,total_oracle_evals\n";
    os << cfg.method << "," << cfg.function << "," << cfg.dim << "," << cfg.population() << "," << s.runs << ","
       << s.successes << "," << fmt_double(s.success_rate) << "," << fmt_optional(s.sp1) << ","
       << fmt_optional(s.sp1_per_success) << "," << fmt_optional(s.mean_success_fevals) << ","
       << fmt_double(s.median_fevals) << ","
       << (s.min_success_fevals ? std::to_string(*s.min_success_fevals) : std::string()) << "," << s.best_run << ","
       << s.best_fevals << "," << s.best_oracle_evals << "," << s.total_fevals << "," << s.total_oracle_evals << "\n";
    return os.str();
}

/// Matrix block: one row per F bin, one column per CR bin.
inline std::string heatmap_csv(const ExperimentConfig& cfg, const Histogram2D& h, std::size_t run)
{
    std::ostringstream os;
    write_comment_header(os, experiment_metadata(cfg));
    os << "# heatmap.run=" << run << "\n";
    os << "f_bin";
    for (std::size_t b = 0; b < h.bins; ++b)
        os << ",cr_" << fmt_double(static_cast<double>(b) / static_cast<double>(h.bins));
    os << "\n";
    for (std::size_t a = 0; a < h.bins; ++a) {
        os << "f_" << fmt_double(static_cast<double>(a) / static_cast<double>(h.bins));
        for (std::size_t b = 0; b < h.bins; ++b)
            os << "," << h(a, b);
        os << "\n";
    }
    return os.str();
}

inline std::string ecdf_csv(const ExperimentConfig& cfg, std::span<const EcdfPoint> curve)
{
    std::ostringstream os;
    write_comment_header(os, experiment_metadata(cfg));
    os << "budget,fevals_per_dim,fraction\n";
    for (const auto& p : curve)
        os << fmt_double(p.budget) << "," << fmt_double(p.fevals_per_dim) << "," << fmt_double(p.fraction) << "\n";
    return os.str();
}

inline std::vector<EcdfPoint> experiment_ecdf(const ExperimentConfig& cfg, std::span<const RunRecord> records)
{
    const auto targets = ecdf_targets();
    const auto budgets = log_budget_grid(cfg.evaluation_budget());
    return ecdf(records, targets, budgets, cfg.dim);
}

struct ExperimentResult {
    std::vector<RunRecord> records;
    ExperimentSummary summary;
    std::filesystem::path output_dir;
};

/// Runs the experiment and writes runs.csv, summary.csv, heatmap_<method>.csv,
/// ecdf_<method>.csv, the SVG plots and meta.txt into the output directory.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    ExperimentResult result;
    result.output_dir = resolve_output_dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(result.output_dir, ec);
    if (ec || !std::filesystem::is_directory(result.output_dir))
        throw std::runtime_error("cannot create output directory " + result.output_dir.string());

    result.records = run_all(cfg);
    result.summary = summarize(result.records);
    const auto& dir = result.output_dir;

    write_file(dir / "runs.csv", runs_csv(cfg, result.records));
    write_file(dir / "summary.csv", summary_csv(cfg, result.summary));

    const auto& best = result.records[result.summary.best_run];
    const Histogram2D h = param_heatmap(best.theta, cfg.heatmap_bins);
    write_file(dir / ("heatmap_" + cfg.method + ".csv"), heatmap_csv(cfg, h, result.summary.best_run));
    write_file(dir / ("heatmap_" + cfg.method + ".svg"),
               svg::heatmap(h, cfg.method + " on " + cfg.function + " D=" + std::to_string(cfg.dim) + " (best run)"));

    const auto curve = experiment_ecdf(cfg, result.records);
    write_file(dir / ("ecdf_" + cfg.method + ".csv"), ecdf_csv(cfg, curve));
    svg::Series series{cfg.method, {}};
    for (const auto& p : curve)
        series.points.emplace_back(p.fevals_per_dim, p.fraction);
    svg::Axes axes{"ECDF " + cfg.function + " D=" + std::to_string(cfg.dim), "FEvals / D", "fraction of (run, target) pairs",
                   true, false, true, std::pair{0.0, 1.0}};
    write_file(dir / ("ecdf_" + cfg.method + ".svg"), svg::line_plot({series}, axes));

    std::ostringstream meta;
    for (const auto& [k, v] : experiment_metadata(cfg))
        meta << k << "=" << v << "\n";
    meta << "run.output_dir=" << dir.string() << "\n";
    meta << "run.threads=" << effective_threads(cfg.threads, cfg.runs) << "\n";
    write_file(dir / "meta.txt", meta.str());
    return result;
}

struct SweepCell {
    std::string method;
    std::string function;
    std::size_t dim = 0;
    ExperimentSummary summary;

    /// SP1 for adaptive methods; fewest successful FEvals for the oracle.
    std::optional<double> reported() const
    {
        if (method == "gao")
            return summary.min_success_fevals ? std::optional<double>(static_cast<double>(*summary.min_success_fevals))
                                              : std::nullopt;
        return summary.sp1;
    }
};

inline std::string sp1_table_csv(const SweepConfig& sweep, const std::vector<SweepCell>& cells)
{
    std::ostringstream os;
    os << "# table.value=SP1 for adaptive methods; fewest successful FEvals for gao\n";
    os << "function,dim";
    for (const auto& m : sweep.methods)
        os << "," << m;
    os << "\n";
    for (const auto& fn : sweep.functions) {
        for (auto d : sweep.dims) {
            os << fn << "," << d;
            for (const auto& m : sweep.methods) {
                os << ",";
                for (const auto& c : cells)
                    if (c.method == m && c.function == fn && c.dim == d)
                        os << fmt_optional(c.reported());
            }
            os << "\n";
        }
    }
    return os.str();
}

/// methods x functions x dims; each cell gets its own subdirectory. Writes
/// sp1_table.csv and one SP1-vs-D plot per function at the sweep root.
inline std::vector<SweepCell> sweep(const SweepConfig& sweep_cfg)
{
    if (sweep_cfg.methods.empty() || sweep_cfg.functions.empty() || sweep_cfg.dims.empty())
        throw ConfigError("sweep needs at least one method, function and dimension");
    const auto root = resolve_output_dir(sweep_cfg.base.output_dir);
    std::vector<SweepCell> cells;
    for (const auto& fn : sweep_cfg.functions) {
        for (auto d : sweep_cfg.dims) {
            for (const auto& m : sweep_cfg.methods) {
                ExperimentConfig cfg = sweep_cfg.base;
                cfg.method = m;
                cfg.function = fn;
                cfg.dim = d;
                cfg.output_dir = (root / (fn + "_D" + std::to_string(d) + "_" + m)).string();
                auto result = run_experiment(cfg);
                cells.push_back({m, fn, d, result.summary});
            }
        }
    }

    write_file(root / "sp1_table.csv", sp1_table_csv(sweep_cfg, cells));
    for (const auto& fn : sweep_cfg.functions) {
        std::vector<svg::Series> series;
        for (const auto& m : sweep_cfg.methods) {
            svg::Series s{m, {}};
            for (const auto& c : cells)
                if (c.method == m && c.function == fn)
                    if (auto v = c.reported())
                        s.points.emplace_back(static_cast<double>(c.dim), *v);
            series.push_back(std::move(s));
        }
        svg::Axes axes{fn, "D", "SP1 (gao: best FEvals)", false, true, false, std::nullopt};
        write_file(root / ("sp1_" + fn + ".svg"), svg::line_plot(series, axes));
    }
    return cells;
}

} // namespace gaode::harness
