#pragma once

#include <cmath>
#include <span>

namespace gaode {

inline double arithmetic_mean(std::span<const double> s)
{
    double sum = 0.0;
    for (double v : s)
        sum += v;
    return s.empty() ? 0.0 : sum / static_cast<double>(s.size());
}

/// sum(s^2) / sum(s); 0 when the denominator vanishes.
inline double lehmer_mean(std::span<const double> s)
{
    double num = 0.0;
    double den = 0.0;
    for (double v : s) {
        num += v * v;
        den += v;
    }
    return den > 0.0 ? num / den : 0.0;
}

/// sum(w s^2) / sum(w s); 0 when the denominator vanishes.
inline double weighted_lehmer_mean(std::span<const double> s, std::span<const double> w)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        num += w[k] * s[k] * s[k];
        den += w[k] * s[k];
    }
    return den > 0.0 ? num / den : 0.0;
}

/// (mean(s^p))^(1/p)
inline double power_mean(std::span<const double> s, double p)
{
    if (s.empty())
        return 0.0;
    double sum = 0.0;
    for (double v : s)
        sum += std::pow(v, p);
    return std::pow(sum / static_cast<double>(s.size()), 1.0 / p);
}

} // namespace gaode
