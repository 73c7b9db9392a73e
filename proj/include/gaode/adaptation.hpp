#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "de.hpp"
#include "means.hpp"
#include "rng.hpp"

namespace gaode {

/// Generalized parameter adaptation, decoupled from the DE operator.
///
/// Per generation the engine calls assign() once for every individual before
/// any trial is built, observe() once per individual after its selection, and
/// end_generation() once. Implementations only ever draw from the parameter
/// stream handed to them.
class AdaptationMethod {
public:
    virtual ~AdaptationMethod() = default;

    virtual std::string_view name() const = 0;
    virtual ControlParams assign(std::size_t i, Generator& param_stream) = 0;
    virtual void observe(std::size_t i, const ControlParams& used, bool success, double improvement) = 0;
    virtual void end_generation(Generator& param_stream) = 0;
};

// Sampling rules shared by JADE, MDE and SHADE.

/// Cauchy draw acceptance for F: non-positive draws are rejected, values
/// above 1 are truncated to 1.
inline std::optional<double> accept_scale_factor(double sample)
{
    if (!(sample > 0.0))
        return std::nullopt;
    return std::min(sample, 1.0);
}

inline double clamp_crossover_rate(double sample)
{
    return std::clamp(sample, 0.0, 1.0);
}

inline double sample_cauchy_scale_factor(Generator& gen, double location, double scale = 0.1)
{
    for (int attempt = 0; attempt < 1000; ++attempt)
        if (auto f = accept_scale_factor(cauchy(gen, location, scale)))
            return *f;
    return std::clamp(location, 1e-12, 1.0);
}

inline double sample_normal_crossover_rate(Generator& gen, double mean, double stddev = 0.1)
{
    return clamp_crossover_rate(normal(gen, mean, stddev));
}

/// Uniform sampling box for {F, CR}: F on (f_min, f_max], CR on [cr_min, cr_max].
struct ParameterRange {
    double f_min = 0.0;
    double f_max = 1.0;
    double cr_min = 0.0;
    double cr_max = 1.0;

    void validate() const
    {
        if (!(0.0 <= f_min && f_min < f_max && f_max <= 1.0))
            throw std::invalid_argument("F range must satisfy 0 <= F_min < F_max <= 1");
        if (!(0.0 <= cr_min && cr_min <= cr_max && cr_max <= 1.0))
            throw std::invalid_argument("CR range must satisfy 0 <= CR_min <= CR_max <= 1");
    }
};

/// Draws F then CR.
inline ControlParams sample_uniform(const ParameterRange& range, Generator& gen)
{
    double f;
    do {
        f = range.f_min + (1.0 - uniform01(gen)) * (range.f_max - range.f_min);
    } while (f <= range.f_min);
    const double cr = range.cr_min + uniform01_closed(gen) * (range.cr_max - range.cr_min);
    return {f, cr};
}

/// Fresh uniform {F, CR} for every trial; no feedback. This is what the
/// oracle degenerates to with a single candidate.
class UniformRandom final : public AdaptationMethod {
public:
    explicit UniformRandom(ParameterRange range = {})
        : range_(range)
    {
        range_.validate();
    }

    std::string_view name() const override { return "uniform"; }
    ControlParams assign(std::size_t, Generator& gen) override { return sample_uniform(range_, gen); }
    void observe(std::size_t, const ControlParams&, bool, double) override {}
    void end_generation(Generator&) override {}

private:
    ParameterRange range_;
};

/// jDE: per-individual self-adaptive parameters.
class Jde final : public AdaptationMethod {
public:
    static constexpr double tau_f = 0.1;
    static constexpr double tau_cr = 0.1;
    static constexpr double f_lower = 0.1;
    static constexpr double f_upper = 0.9;

    explicit Jde(std::size_t pop_size)
        : current_(pop_size, ControlParams{0.5, 0.9})
        , pending_(current_)
    {
    }

    static double regenerate_f(double u) { return f_lower + u * f_upper; }

    std::string_view name() const override { return "jde"; }

    ControlParams assign(std::size_t i, Generator& gen) override
    {
        ControlParams p = current_[i];
        if (uniform01(gen) < tau_f)
            p.f = regenerate_f(uniform01(gen));
        if (uniform01(gen) < tau_cr)
            p.cr = uniform01(gen);
        pending_[i] = p;
        return p;
    }

    void observe(std::size_t i, const ControlParams&, bool success, double) override
    {
        if (success)
            current_[i] = pending_[i];
    }

    void end_generation(Generator&) override {}

    const std::vector<ControlParams>& state() const { return current_; }

private:
    std::vector<ControlParams> current_;
    std::vector<ControlParams> pending_;
};

/// EPSDE's {F, CR} ensemble: pools plus a FIFO memory of successful pairs.
class Epsde final : public AdaptationMethod {
public:
    static constexpr std::array<double, 6> f_pool{0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    static constexpr std::array<double, 9> cr_pool{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    explicit Epsde(std::size_t pop_size)
        : current_(pop_size)
        , needs_new_(pop_size, true)
        , capacity_(pop_size)
    {
    }

    std::string_view name() const override { return "epsde"; }

    ControlParams assign(std::size_t i, Generator& gen) override
    {
        if (needs_new_[i]) {
            if (memory_.empty() || uniform01(gen) < 0.5)
                current_[i] = {f_pool[uniform_index(gen, f_pool.size())], cr_pool[uniform_index(gen, cr_pool.size())]};
            else
                current_[i] = memory_[uniform_index(gen, memory_.size())];
            needs_new_[i] = false;
        }
        return current_[i];
    }

    void observe(std::size_t i, const ControlParams& used, bool success, double) override
    {
        if (success) {
            memory_.push_back(used);
            if (memory_.size() > capacity_)
                memory_.pop_front();
        } else {
            needs_new_[i] = true;
        }
    }

    void end_generation(Generator&) override {}

    const std::deque<ControlParams>& memory() const { return memory_; }

private:
    std::vector<ControlParams> current_;
    std::vector<bool> needs_new_;
    std::deque<ControlParams> memory_;
    std::size_t capacity_;
};

/// JADE's mean adaptation (no archive, no current-to-pbest).
class Jade final : public AdaptationMethod {
public:
    static constexpr double learning_rate = 0.1;

    std::string_view name() const override { return "jade"; }

    ControlParams assign(std::size_t, Generator& gen) override
    {
        const double cr = sample_normal_crossover_rate(gen, mu_cr_);
        const double f = sample_cauchy_scale_factor(gen, mu_f_);
        return {f, cr};
    }

    void observe(std::size_t, const ControlParams& used, bool success, double) override
    {
        if (success) {
            s_f_.push_back(used.f);
            s_cr_.push_back(used.cr);
        }
    }

    void end_generation(Generator&) override
    {
        update(s_f_, s_cr_);
        s_f_.clear();
        s_cr_.clear();
    }

    void update(std::span<const double> s_f, std::span<const double> s_cr)
    {
        if (s_f.empty())
            return;
        constexpr double c = learning_rate;
        mu_cr_ = (1.0 - c) * mu_cr_ + c * arithmetic_mean(s_cr);
        mu_f_ = (1.0 - c) * mu_f_ + c * lehmer_mean(s_f);
    }

    double mu_f() const { return mu_f_; }
    double mu_cr() const { return mu_cr_; }

private:
    double mu_f_ = 0.5;
    double mu_cr_ = 0.5;
    std::vector<double> s_f_;
    std::vector<double> s_cr_;
};

/// MDE_pBX's parameter adaptation: power-mean updates with random inertia.
class Mde final : public AdaptationMethod {
public:
    static constexpr double exponent = 1.5;

    std::string_view name() const override { return "mde"; }

    ControlParams assign(std::size_t, Generator& gen) override
    {
        const double f = sample_cauchy_scale_factor(gen, f_m_);
        const double cr = sample_normal_crossover_rate(gen, cr_m_);
        return {f, cr};
    }

    void observe(std::size_t, const ControlParams& used, bool success, double) override
    {
        if (success) {
            s_f_.push_back(used.f);
            s_cr_.push_back(used.cr);
        }
    }

    void end_generation(Generator& gen) override
    {
        if (!s_f_.empty()) {
            const double w_f = 0.8 + 0.2 * uniform01(gen);
            const double w_cr = 0.9 + 0.1 * uniform01(gen);
            update(s_f_, s_cr_, w_f, w_cr);
        }
        s_f_.clear();
        s_cr_.clear();
    }

    /// Explicit-weight form of the generation-end update.
    void update(std::span<const double> s_f, std::span<const double> s_cr, double w_f, double w_cr)
    {
        if (s_f.empty())
            return;
        f_m_ = w_f * f_m_ + (1.0 - w_f) * power_mean(s_f, exponent);
        cr_m_ = w_cr * cr_m_ + (1.0 - w_cr) * power_mean(s_cr, exponent);
    }

    double f_mean() const { return f_m_; }
    double cr_mean() const { return cr_m_; }

private:
    double f_m_ = 0.5;
    double cr_m_ = 0.6;
    std::vector<double> s_f_;
    std::vector<double> s_cr_;
};

/// SHADE: success-history memories sampled per individual.
class Shade final : public AdaptationMethod {
public:
    struct Success {
        double f;
        double cr;
        double improvement;
    };

    explicit Shade(std::size_t memory_size = 10)
        : m_f_(memory_size, 0.5)
        , m_cr_(memory_size, 0.5)
    {
        if (memory_size == 0)
            throw std::invalid_argument("SHADE memory size must be positive");
    }

    std::string_view name() const override { return "shade"; }

    ControlParams assign(std::size_t, Generator& gen) override
    {
        const std::size_t r = uniform_index(gen, m_f_.size());
        const double cr = sample_normal_crossover_rate(gen, m_cr_[r]);
        const double f = sample_cauchy_scale_factor(gen, m_f_[r]);
        return {f, cr};
    }

    void observe(std::size_t, const ControlParams& used, bool success, double improvement) override
    {
        if (success)
            successes_.push_back({used.f, used.cr, improvement});
    }

    void end_generation(Generator&) override
    {
        update(successes_);
        successes_.clear();
    }

    void update(std::span<const Success> successes)
    {
        if (successes.empty())
            return;
        std::vector<double> f, cr, w;
        double total = 0.0;
        for (const auto& s : successes) {
            f.push_back(s.f);
            cr.push_back(s.cr);
            w.push_back(s.improvement);
            total += s.improvement;
        }
        if (total > 0.0)
            for (auto& v : w)
                v /= total;
        else
            std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));

        m_f_[cursor_] = weighted_lehmer_mean(f, w);
        m_cr_[cursor_] = weighted_lehmer_mean(cr, w);
        cursor_ = (cursor_ + 1) % m_f_.size();
    }

    const std::vector<double>& memory_f() const { return m_f_; }
    const std::vector<double>& memory_cr() const { return m_cr_; }
    std::size_t cursor() const { return cursor_; }

private:
    std::vector<double> m_f_;
    std::vector<double> m_cr_;
    std::size_t cursor_ = 0;
    std::vector<Success> successes_;
};

inline constexpr std::array<std::string_view, 5> adaptive_method_tokens{"jde", "epsde", "jade", "mde", "shade"};

/// Builds one of the adaptive methods by token; nullptr for unknown tokens.
inline std::unique_ptr<AdaptationMethod> make_method(std::string_view token, std::size_t pop_size)
{
    if (token == "jde")
        return std::make_unique<Jde>(pop_size);
    if (token == "epsde")
        return std::make_unique<Epsde>(pop_size);
    if (token == "jade")
        return std::make_unique<Jade>();
    if (token == "mde")
        return std::make_unique<Mde>();
    if (token == "shade")
        return std::make_unique<Shade>(10);
    if (token == "uniform")
        return std::make_unique<UniformRandom>();
    return nullptr;
}

} // namespace gaode
