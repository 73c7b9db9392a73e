#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "run_record.hpp"

namespace gaode {

inline std::size_t count_successes(std::span<const RunRecord> records)
{
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.success; }));
}

inline double success_rate(std::span<const RunRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("success rate of an empty record set");
    return static_cast<double>(count_successes(records)) / static_cast<double>(records.size());
}

inline std::optional<double> mean_successful_fevals(std::span<const RunRecord> records)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.success) {
            sum += static_cast<double>(r.fevals_to_success);
            ++n;
        }
    }
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

/// Success Performance 1: mean successful FEvals divided by the success rate.
/// Undefined (nullopt) without successes.
inline std::optional<double> sp1(std::span<const RunRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("SP1 of an empty record set");
    const auto mean = mean_successful_fevals(records);
    if (!mean)
        return std::nullopt;
    return *mean / success_rate(records);
}

/// Mean successful FEvals divided by the raw success count. Reported next to
/// SP1 for comparison only.
inline std::optional<double> sp1_per_success(std::span<const RunRecord> records)
{
    const auto mean = mean_successful_fevals(records);
    if (!mean)
        return std::nullopt;
    return *mean / static_cast<double>(count_successes(records));
}

/// Median run length with failed runs counted as +inf.
inline double median_fevals(std::span<const RunRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("median of an empty record set");
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records)
        v.push_back(r.success ? static_cast<double>(r.fevals_to_success) : std::numeric_limits<double>::infinity());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    const double a = v[n / 2 - 1];
    const double b = v[n / 2];
    if (std::isinf(a) || std::isinf(b))
        return std::isinf(a) ? a : b;
    return 0.5 * (a + b);
}

/// Successful record with the fewest FEvals, else the lowest final error;
/// ties go to the lowest index.
inline std::size_t select_best_run(std::span<const RunRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("no records to choose from");
    std::size_t best = 0;
    for (std::size_t k = 1; k < records.size(); ++k) {
        const auto& a = records[k];
        const auto& b = records[best];
        if (a.success != b.success) {
            if (a.success)
                best = k;
            continue;
        }
        if (a.success ? a.fevals_to_success < b.fevals_to_success : a.final_error() < b.final_error())
            best = k;
    }
    return best;
}

/// Error targets 10^hi ... 10^lo, log-uniform, descending.
inline std::vector<double> ecdf_targets(std::size_t count = 50, double hi_exp = 2.0, double lo_exp = -8.0)
{
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double e = count == 1 ? hi_exp : hi_exp - (hi_exp - lo_exp) * static_cast<double>(i) / static_cast<double>(count - 1);
        t[i] = std::pow(10.0, e);
    }
    return t;
}

/// `points` log-spaced budgets from 1 to `budget` (rounded, deduplicated).
inline std::vector<double> log_budget_grid(std::uint64_t budget, std::size_t points = 100)
{
    std::vector<double> grid;
    const double top = std::log10(static_cast<double>(std::max<std::uint64_t>(budget, 1)));
    for (std::size_t k = 0; k < points; ++k) {
        const double e = points == 1 ? top : top * static_cast<double>(k) / static_cast<double>(points - 1);
        const double b = std::round(std::pow(10.0, e));
        if (grid.empty() || b > grid.back())
            grid.push_back(b);
    }
    return grid;
}

/// First counted evaluation at which the run's error reached `target`, if ever.
inline std::optional<std::uint64_t> first_hit(const RunRecord& record, double target)
{
    for (const auto& p : record.trajectory)
        if (p.error <= target)
            return p.fevals;
    return std::nullopt;
}

struct EcdfPoint {
    double budget = 0.0;
    double fevals_per_dim = 0.0;
    double fraction = 0.0;
};

/// Fraction of (run, target) pairs hit within each budget.
inline std::vector<EcdfPoint> ecdf(std::span<const RunRecord> records, std::span<const double> targets,
                                   std::span<const double> budgets, std::size_t dim = 1)
{
    if (records.empty())
        throw std::invalid_argument("ECDF of an empty record set");
    if (targets.empty())
        throw std::invalid_argument("ECDF needs at least one target");
    std::vector<double> hits;
    for (const auto& r : records)
        for (double t : targets)
            if (auto h = first_hit(r, t))
                hits.push_back(static_cast<double>(*h));
    std::sort(hits.begin(), hits.end());

    const double pairs = static_cast<double>(records.size() * targets.size());
    std::vector<EcdfPoint> curve;
    curve.reserve(budgets.size());
    for (double b : budgets) {
        const auto solved = std::upper_bound(hits.begin(), hits.end(), b) - hits.begin();
        curve.push_back({b, b / static_cast<double>(dim), static_cast<double>(solved) / pairs});
    }
    return curve;
}

/// B x B frequency counts of (F, CR) over [0,1]^2; F indexes rows.
struct Histogram2D {
    std::size_t bins = 10;
    std::vector<std::uint64_t> counts;

    std::uint64_t operator()(std::size_t f_bin, std::size_t cr_bin) const { return counts[f_bin * bins + cr_bin]; }

    std::uint64_t total() const
    {
        std::uint64_t s = 0;
        for (auto c : counts)
            s += c;
        return s;
    }

    std::vector<std::uint64_t> f_marginal() const
    {
        std::vector<std::uint64_t> m(bins, 0);
        for (std::size_t a = 0; a < bins; ++a)
            for (std::size_t b = 0; b < bins; ++b)
                m[a] += (*this)(a, b);
        return m;
    }

    std::vector<std::uint64_t> cr_marginal() const
    {
        std::vector<std::uint64_t> m(bins, 0);
        for (std::size_t a = 0; a < bins; ++a)
            for (std::size_t b = 0; b < bins; ++b)
                m[b] += (*this)(a, b);
        return m;
    }
};

inline std::size_t bin_index(double v, std::size_t bins)
{
    const double scaled = std::floor(std::clamp(v, 0.0, 1.0) * static_cast<double>(bins));
    return std::min(static_cast<std::size_t>(scaled), bins - 1);
}

inline Histogram2D param_heatmap(std::span<const ThetaEntry> theta, std::size_t bins = 10)
{
    if (bins < 1)
        throw std::invalid_argument("heatmap needs at least one bin");
    Histogram2D h{bins, std::vector<std::uint64_t>(bins * bins, 0)};
    for (const auto& e : theta)
        ++h.counts[bin_index(e.f, bins) * bins + bin_index(e.cr, bins)];
    return h;
}

} // namespace gaode
