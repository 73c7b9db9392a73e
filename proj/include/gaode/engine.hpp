#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adaptation.hpp"
#include "benchmarks.hpp"
#include "de.hpp"
#include "rng.hpp"
#include "run_record.hpp"

namespace gaode {

struct RunConfig {
    std::size_t pop_size = 20;
    std::uint64_t budget = 200000;
    double threshold = 1e-8;
    std::uint64_t seed = 1;

    void validate() const
    {
        if (pop_size < 4)
            throw std::invalid_argument("population size must be at least 4");
        if (budget == 0)
            throw std::invalid_argument("budget must be positive");
    }
};

/// The trial committed for one event, as produced by a controller.
struct Proposal {
    Individual trial;
    ControlParams params;
    std::uint64_t oracle_evals = 0;
};

/// Counts evaluations, keeps the best-so-far error trajectory, and decides
/// termination (success or exhausted budget).
class EvaluationLedger {
public:
    EvaluationLedger(RunRecord& record, const RunConfig& cfg, double f_star)
        : record_(record)
        , cfg_(cfg)
        , f_star_(f_star)
    {
    }

    void count(double fx)
    {
        ++record_.fevals;
        const double err = std::abs(fx - f_star_);
        if (record_.trajectory.empty() || err < record_.trajectory.back().error)
            record_.trajectory.push_back({record_.fevals, err});
        if (!record_.success && err <= cfg_.threshold) {
            record_.success = true;
            record_.fevals_to_success = record_.fevals;
        }
    }

    bool done() const { return record_.success || record_.fevals >= cfg_.budget; }

private:
    RunRecord& record_;
    const RunConfig& cfg_;
    double f_star_;
};

/// Runs DE/rand/1/bin driven by `controller`, which supplies the committed
/// trial for each event. Controller interface:
///
///   void begin_generation(std::size_t pop_size, Generator& param);
///   Proposal propose(std::size_t i, const Population&, const TrialRandomness&,
///                    const Problem&, Generator& param);
///   void observe(std::size_t i, const ControlParams&, bool success, double improvement);
///   void end_generation(Generator& param);
///
/// Selection is generational: all trials of generation t are built from P^t.
template <class Controller>
RunRecord run_de(const Problem& problem, const RunConfig& cfg, Controller& controller)
{
    cfg.validate();
    RunRecord record;
    record.seed = cfg.seed;
    record.pop_size = cfg.pop_size;

    RngStreams rng(cfg.seed);
    EvaluationLedger ledger(record, cfg, problem.optimum_value());

    Population pop = initialize_population(problem.bounds(), cfg.pop_size, rng.init);
    for (auto& ind : pop.members) {
        if (ledger.done())
            return record;
        ind.fx = problem(ind.x);
        ind.evaluated = true;
        ledger.count(ind.fx);
    }

    const std::size_t dim = problem.dim();
    while (!ledger.done()) {
        controller.begin_generation(cfg.pop_size, rng.param);
        Population next = pop;
        for (std::size_t i = 0; i < cfg.pop_size && !ledger.done(); ++i) {
            const TrialRandomness tr = draw_trial_randomness(i, cfg.pop_size, dim, rng.shared);
            Proposal p = controller.propose(i, pop, tr, problem, rng.param);
            record.oracle_evals += p.oracle_evals;
            ledger.count(p.trial.fx);
            record.theta.push_back({record.fevals, p.params.f, p.params.cr, p.trial.fx});

            const SelectionOutcome out = selection_step(next[i], std::move(p.trial));
            controller.observe(i, p.params, out.success, out.improvement);
        }
        pop = std::move(next);
        ++pop.generation;
        ++record.generations;
        if (!ledger.done())
            controller.end_generation(rng.param);
    }
    return record;
}

/// Builds, repairs and evaluates the trial for target `i` with fixed params.
/// `Objective` needs bounds() and a call operator on std::span<const double>.
template <class Objective>
Individual make_trial(std::size_t i, const Population& pop, const TrialRandomness& tr, const ControlParams& params,
                      const Objective& problem)
{
    const auto& parent = pop[i].x;
    auto mutant = rand1_mutation(pop, tr, params.f);
    auto trial = repair_bounds(binomial_crossover(parent, mutant, params.cr, tr), parent, problem.bounds());
    Individual ind{std::move(trial), 0.0, true};
    ind.fx = problem(ind.x);
    return ind;
}

/// Controller for the adaptive methods: one assign per individual at the
/// start of a generation, one evaluation per event.
class AdaptiveController {
public:
    explicit AdaptiveController(AdaptationMethod& method)
        : method_(method)
    {
    }

    void begin_generation(std::size_t pop_size, Generator& param)
    {
        assigned_.resize(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i)
            assigned_[i] = method_.assign(i, param);
    }

    Proposal propose(std::size_t i, const Population& pop, const TrialRandomness& tr, const Problem& problem,
                     Generator&)
    {
        return {make_trial(i, pop, tr, assigned_[i], problem), assigned_[i], 0};
    }

    void observe(std::size_t i, const ControlParams& p, bool success, double improvement)
    {
        method_.observe(i, p, success, improvement);
    }

    void end_generation(Generator& param) { method_.end_generation(param); }

private:
    AdaptationMethod& method_;
    std::vector<ControlParams> assigned_;
};

inline RunRecord run_adaptive(const Problem& problem, const RunConfig& cfg, AdaptationMethod& method)
{
    AdaptiveController controller(method);
    RunRecord record = run_de(problem, cfg, controller);
    record.method = std::string(method.name());
    return record;
}

} // namespace gaode
