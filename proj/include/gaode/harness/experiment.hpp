#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "../adaptation.hpp"
#include "../benchmarks.hpp"
#include "../engine.hpp"
#include "../gao.hpp"
#include "../metrics.hpp"
#include "config.hpp"

namespace gaode::harness {

inline RunConfig run_config_for(const ExperimentConfig& cfg, std::size_t run_index)
{
    RunConfig rc;
    rc.pop_size = cfg.population();
    rc.budget = cfg.evaluation_budget();
    rc.threshold = cfg.threshold;
    rc.seed = derive_seed(cfg.seed, run_index);
    return rc;
}

inline OracleConfig oracle_config_for(const ExperimentConfig& cfg, const std::string& variant)
{
    if (variant == "gaode00")
        return OracleConfig::gaode00(cfg.oracle.lambda);
    if (variant == "gaode04")
        return OracleConfig::gaode04(cfg.oracle.lambda);
    return {cfg.oracle.lambda, cfg.oracle.range};
}

/// One independent run; the result depends only on (cfg, run_index).
inline RunRecord run_single(const ExperimentConfig& cfg, const Problem& problem, std::size_t run_index)
{
    const RunConfig rc = run_config_for(cfg, run_index);
    if (cfg.method != "gao") {
        auto method = make_method(cfg.method, rc.pop_size);
        if (!method)
            throw ConfigError("unknown method '" + cfg.method + "'");
        return run_adaptive(problem, rc, *method);
    }
    const auto& variant = cfg.oracle.variant;
    if (variant == "composite")
        return gaode_composite(problem, rc, oracle_config_for(cfg, "gaode00"), oracle_config_for(cfg, "gaode04"),
                               cfg.oracle.repeats);
    // single-variant oracle runs still honour `repeats` (best of)
    std::vector<RunRecord> records;
    for (std::size_t r = 0; r < cfg.oracle.repeats; ++r) {
        RunConfig rr = rc;
        if (cfg.oracle.repeats > 1)
            rr.seed = derive_seed(rc.seed, 0x6a0de100 + r);
        records.push_back(gaode_run(problem, rr, oracle_config_for(cfg, variant)));
    }
    return std::move(records[select_best_run(records)]);
}

inline std::size_t effective_threads(std::size_t requested, std::size_t jobs)
{
    std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(n, jobs));
}

/// Runs all `cfg.runs` runs, in parallel across runs. Records are returned in
/// run-index order regardless of scheduling.
inline std::vector<RunRecord> run_all(const ExperimentConfig& cfg)
{
    cfg.validate();
    const Problem problem(cfg.function_id(), cfg.dim, cfg.instance_seed);
    std::vector<RunRecord> records(cfg.runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t k = next++; k < cfg.runs; k = next++) {
            try {
                records[k] = run_single(cfg, problem, k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    const std::size_t n_threads = effective_threads(cfg.threads, cfg.runs);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return records;
}

struct ExperimentSummary {
    std::size_t runs = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    std::optional<double> sp1;
    std::optional<double> sp1_per_success;
    std::optional<double> mean_success_fevals;
    double median_fevals = 0.0;
    std::optional<std::uint64_t> min_success_fevals;
    std::size_t best_run = 0;
    std::uint64_t best_fevals = 0;
    std::uint64_t best_oracle_evals = 0;
    std::uint64_t total_fevals = 0;
    std::uint64_t total_oracle_evals = 0;
};

inline ExperimentSummary summarize(std::span<const RunRecord> records)
{
    ExperimentSummary s;
    s.runs = records.size();
    s.successes = count_successes(records);
    s.success_rate = success_rate(records);
    s.sp1 = sp1(records);
    s.sp1_per_success = sp1_per_success(records);
    s.mean_success_fevals = mean_successful_fevals(records);
    s.median_fevals = median_fevals(records);
    for (const auto& r : records) {
        s.total_fevals += r.fevals;
        s.total_oracle_evals += r.oracle_evals;
        if (r.success && (!s.min_success_fevals || r.fevals_to_success < *s.min_success_fevals))
            s.min_success_fevals = r.fevals_to_success;
    }
    s.best_run = select_best_run(records);
    s.best_fevals = records[s.best_run].fevals;
    s.best_oracle_evals = records[s.best_run].oracle_evals;
    return s;
}

} // namespace gaode::harness
