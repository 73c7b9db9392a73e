#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace gaode {

/// One {F, CR} pair attached to a trial-generation event.
struct ControlParams {
    double f = 0.5;
    double cr = 0.9;

    static ControlParams make(double f, double cr)
    {
        if (!(f > 0.0 && f <= 1.0))
            throw std::invalid_argument("scale factor F must lie in (0, 1], got " + std::to_string(f));
        if (!(cr >= 0.0 && cr <= 1.0))
            throw std::invalid_argument("crossover rate CR must lie in [0, 1], got " + std::to_string(cr));
        return {f, cr};
    }

    bool valid() const { return f > 0.0 && f <= 1.0 && cr >= 0.0 && cr <= 1.0; }

    friend bool operator==(const ControlParams&, const ControlParams&) = default;
};

struct Individual {
    std::vector<double> x;
    double fx = 0.0;
    bool evaluated = false;
};

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const { return lower.size(); }

    bool contains(std::span<const double> x) const
    {
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] < lower[j] || x[j] > upper[j])
                return false;
        return true;
    }
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 1;

    std::size_t size() const { return members.size(); }
    const Individual& operator[](std::size_t i) const { return members[i]; }
    Individual& operator[](std::size_t i) { return members[i]; }

    std::size_t best_index() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < members.size(); ++i)
            if (members[i].fx < members[best].fx)
                best = i;
        return best;
    }
};

/// Random draws frozen for one (target, generation) event. Indices are 0-based.
struct TrialRandomness {
    std::size_t r1 = 0;
    std::size_t r2 = 0;
    std::size_t r3 = 0;
    std::size_t forced_index = 0;
    std::vector<double> mask_uniforms;

    friend bool operator==(const TrialRandomness&, const TrialRandomness&) = default;
};

/// Draws parents (rejection sampling), then the forced index, then exactly
/// `dim` mask uniforms. Only `shared` is advanced.
inline TrialRandomness draw_trial_randomness(std::size_t target, std::size_t pop_size, std::size_t dim,
                                             Generator& shared)
{
    if (pop_size < 4)
        throw std::invalid_argument("rand/1 needs a population of at least 4, got " + std::to_string(pop_size));
    if (dim < 1)
        throw std::invalid_argument("dimension must be at least 1");
    if (target >= pop_size)
        throw std::out_of_range("target index outside the population");

    TrialRandomness tr;
    do {
        tr.r1 = uniform_index(shared, pop_size);
    } while (tr.r1 == target);
    do {
        tr.r2 = uniform_index(shared, pop_size);
    } while (tr.r2 == target || tr.r2 == tr.r1);
    do {
        tr.r3 = uniform_index(shared, pop_size);
    } while (tr.r3 == target || tr.r3 == tr.r1 || tr.r3 == tr.r2);

    tr.forced_index = uniform_index(shared, dim);
    tr.mask_uniforms.resize(dim);
    for (auto& u : tr.mask_uniforms)
        u = uniform01(shared);
    return tr;
}

/// v = x_r1 + F (x_r2 - x_r3)
inline std::vector<double> rand1_mutation(const Population& pop, const TrialRandomness& tr, double f)
{
    const auto& a = pop[tr.r1].x;
    const auto& b = pop[tr.r2].x;
    const auto& c = pop[tr.r3].x;
    std::vector<double> v(a.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = a[j] + f * (b[j] - c[j]);
    return v;
}

inline std::vector<double> binomial_crossover(std::span<const double> parent, std::span<const double> mutant,
                                              double cr, const TrialRandomness& tr)
{
    if (tr.mask_uniforms.size() != parent.size() || mutant.size() != parent.size())
        throw std::invalid_argument("crossover operands disagree on dimension");
    std::vector<double> u(parent.begin(), parent.end());
    for (std::size_t j = 0; j < u.size(); ++j)
        if (tr.mask_uniforms[j] <= cr || j == tr.forced_index)
            u[j] = mutant[j];
    return u;
}

/// Midpoint repair toward the parent for every violated coordinate.
inline std::vector<double> repair_bounds(std::vector<double> trial, std::span<const double> parent,
                                         const Bounds& bounds)
{
    for (std::size_t j = 0; j < trial.size(); ++j) {
        if (trial[j] < bounds.lower[j])
            trial[j] = 0.5 * (parent[j] + bounds.lower[j]);
        else if (trial[j] > bounds.upper[j])
            trial[j] = 0.5 * (parent[j] + bounds.upper[j]);
    }
    return trial;
}

struct SelectionOutcome {
    bool success = false;
    // f(parent) - f(trial) when successful, otherwise 0
    double improvement = 0.0;
};

/// One-to-one survivor selection; ties go to the trial.
inline SelectionOutcome selection_step(Individual& parent, Individual trial)
{
    if (!parent.evaluated || !trial.evaluated)
        throw std::logic_error("selection requires evaluated individuals");
    if (trial.fx <= parent.fx) {
        SelectionOutcome out{true, parent.fx - trial.fx};
        parent = std::move(trial);
        return out;
    }
    return {};
}

inline Population initialize_population(const Bounds& bounds, std::size_t pop_size, Generator& init)
{
    Population pop;
    pop.members.resize(pop_size);
    for (auto& ind : pop.members) {
        ind.x.resize(bounds.dim());
        for (std::size_t j = 0; j < bounds.dim(); ++j)
            ind.x[j] = bounds.lower[j] + uniform01(init) * (bounds.upper[j] - bounds.lower[j]);
    }
    return pop;
}

} // namespace gaode
