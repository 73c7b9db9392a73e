#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptation.hpp"
#include "engine.hpp"
#include "metrics.hpp"
#include "rng.hpp"

/// Greedy approximate oracle for {F, CR}.
///
/// At every trial event the oracle samples `lambda` candidate pairs, builds
/// each candidate's trial under the same frozen TrialRandomness, evaluates
/// all of them without charging the budget, and commits the best. The
/// committed pairs form the oracle's adaptation trace.
///
/// This is a diagnostic device, not a practical optimizer: the counted
/// evaluations ignore the lambda - 1 discarded candidates.
namespace gaode {

struct OracleConfig {
    std::size_t lambda = 200;
    ParameterRange range{};

    void validate() const
    {
        if (lambda < 1)
            throw std::invalid_argument("oracle needs at least one candidate");
        range.validate();
    }

    static OracleConfig gaode00(std::size_t lambda = 200) { return {lambda, {0.0, 1.0, 0.0, 1.0}}; }
    static OracleConfig gaode04(std::size_t lambda = 200) { return {lambda, {0.4, 1.0, 0.0, 1.0}}; }
};

/// Candidates are drawn as one sequence, so the first k of a lambda-draw
/// equal a k-draw from the same stream state.
inline std::vector<ControlParams> sample_candidates(const OracleConfig& cfg, Generator& param)
{
    std::vector<ControlParams> out;
    out.reserve(cfg.lambda);
    for (std::size_t j = 0; j < cfg.lambda; ++j)
        out.push_back(sample_uniform(cfg.range, param));
    return out;
}

struct OracleChoice {
    Individual trial;
    ControlParams params;
    std::size_t index = 0;
};

/// Evaluates every candidate's trial under `tr`; lowest objective wins, ties
/// go to the lowest candidate index.
template <class Objective>
OracleChoice evaluate_and_select(const Population& pop, std::size_t i, const TrialRandomness& tr,
                                 const std::vector<ControlParams>& candidates, const Objective& problem)
{
    if (candidates.empty())
        throw std::invalid_argument("no oracle candidates");
    OracleChoice best;
    best.trial.fx = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        Individual trial = make_trial(i, pop, tr, candidates[j], problem);
        if (j == 0 || trial.fx < best.trial.fx) {
            best.trial = std::move(trial);
            best.params = candidates[j];
            best.index = j;
        }
    }
    return best;
}

class OracleController {
public:
    explicit OracleController(OracleConfig cfg)
        : cfg_(cfg)
    {
        cfg_.validate();
    }

    void begin_generation(std::size_t, Generator&) {}

    Proposal propose(std::size_t i, const Population& pop, const TrialRandomness& tr, const Problem& problem,
                     Generator& param)
    {
        auto candidates = sample_candidates(cfg_, param);
        OracleChoice choice = evaluate_and_select(pop, i, tr, candidates, problem);
        return {std::move(choice.trial), choice.params, cfg_.lambda};
    }

    void observe(std::size_t, const ControlParams&, bool, double) {}
    void end_generation(Generator&) {}

private:
    OracleConfig cfg_;
};

inline std::string oracle_label(const OracleConfig& cfg)
{
    if (cfg.range.f_min == 0.0 && cfg.range.f_max == 1.0 && cfg.range.cr_min == 0.0 && cfg.range.cr_max == 1.0)
        return "gaode00";
    if (cfg.range.f_min == 0.4 && cfg.range.f_max == 1.0 && cfg.range.cr_min == 0.0 && cfg.range.cr_max == 1.0)
        return "gaode04";
    return "gaode";
}

inline RunRecord gaode_run(const Problem& problem, const RunConfig& run_cfg, const OracleConfig& cfg)
{
    OracleController controller(cfg);
    RunRecord record = run_de(problem, run_cfg, controller);
    record.method = oracle_label(cfg);
    return record;
}

/// Best-of composition of GAODE00 and GAODE04: `repeats` runs of each with
/// distinct seeds derived from run_cfg.seed; all 00 runs come before all 04
/// runs for tie-breaking.
inline RunRecord gaode_composite(const Problem& problem, const RunConfig& run_cfg, const OracleConfig& cfg00,
                                 const OracleConfig& cfg04, std::size_t repeats = 1)
{
    if (repeats < 1)
        throw std::invalid_argument("composite needs at least one repeat");
    std::vector<RunRecord> records;
    records.reserve(2 * repeats);
    std::uint64_t tag = 0;
    for (const OracleConfig* cfg : {&cfg00, &cfg04}) {
        for (std::size_t r = 0; r < repeats; ++r) {
            RunConfig rc = run_cfg;
            rc.seed = derive_seed(run_cfg.seed, 0x6a0de000 + tag++);
            records.push_back(gaode_run(problem, rc, *cfg));
        }
    }
    return std::move(records[select_best_run(records)]);
}

} // namespace gaode
