#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "de.hpp"
#include "rng.hpp"

namespace gaode {

enum class Function { sphere, ellipsoid, rot_ellipsoid, rosenbrock, ackley, rastrigin };

inline constexpr std::array all_functions{Function::sphere,     Function::ellipsoid, Function::rot_ellipsoid,
                                          Function::rosenbrock, Function::ackley,    Function::rastrigin};

inline std::string_view to_token(Function fn)
{
    switch (fn) {
    case Function::sphere: return "sphere";
    case Function::ellipsoid: return "ellipsoid";
    case Function::rot_ellipsoid: return "rot-ellipsoid";
    case Function::rosenbrock: return "rosenbrock";
    case Function::ackley: return "ackley";
    case Function::rastrigin: return "rastrigin";
    }
    return "?";
}

inline std::optional<Function> parse_function(std::string_view token)
{
    for (auto fn : all_functions)
        if (to_token(fn) == token)
            return fn;
    return std::nullopt;
}

/// Conventional search box per function.
inline std::pair<double, double> default_box(Function fn)
{
    switch (fn) {
    case Function::rosenbrock: return {-5.0, 10.0};
    case Function::ackley: return {-32.0, 32.0};
    case Function::rastrigin: return {-5.12, 5.12};
    default: return {-5.0, 5.0};
    }
}

/// Dense row-major D x D matrix.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> data;

    static Matrix identity(std::size_t n)
    {
        Matrix m{n, std::vector<double>(n * n, 0.0)};
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }

    std::vector<double> apply(std::span<const double> z) const
    {
        std::vector<double> out(n, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < n; ++c)
                s += (*this)(r, c) * z[c];
            out[r] = s;
        }
        return out;
    }
};

/// Orthogonal matrix from modified Gram-Schmidt on a standard-normal draw.
/// Deterministic per (dim, seed).
inline Matrix make_rotation(std::size_t dim, std::uint64_t seed)
{
    if (dim < 2)
        throw std::invalid_argument("rotation needs dimension >= 2");
    Generator gen(seed);
    for (;;) {
        Matrix m{dim, std::vector<double>(dim * dim)};
        for (auto& v : m.data)
            v = normal(gen, 0.0, 1.0);

        bool degenerate = false;
        for (std::size_t r = 0; r < dim && !degenerate; ++r) {
            for (std::size_t p = 0; p < r; ++p) {
                double dot = 0.0;
                for (std::size_t c = 0; c < dim; ++c)
                    dot += m(r, c) * m(p, c);
                for (std::size_t c = 0; c < dim; ++c)
                    m(r, c) -= dot * m(p, c);
            }
            double norm = 0.0;
            for (std::size_t c = 0; c < dim; ++c)
                norm += m(r, c) * m(r, c);
            norm = std::sqrt(norm);
            if (norm < 1e-10) {
                degenerate = true;
                break;
            }
            for (std::size_t c = 0; c < dim; ++c)
                m(r, c) /= norm;
        }
        if (!degenerate)
            return m;
    }
}

namespace detail {

inline double ellipsoid(std::span<const double> x)
{
    const auto d = static_cast<double>(x.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::pow(10.0, 6.0 * static_cast<double>(i) / (d - 1.0)) * x[i] * x[i];
    return s;
}

} // namespace detail

/// A benchmark instance. Immutable after construction; all six functions
/// have f* = 0.
class Problem {
public:
    Problem(Function fn, std::size_t dim, std::uint64_t instance_seed = 1)
        : fn_(fn)
        , dim_(dim)
    {
        if (dim < 2)
            throw std::invalid_argument("benchmark dimension must be >= 2, got " + std::to_string(dim));
        const auto [lo, hi] = default_box(fn);
        bounds_.lower.assign(dim, lo);
        bounds_.upper.assign(dim, hi);
        optimum_.assign(dim, fn == Function::rosenbrock ? 1.0 : 0.0);
        if (fn == Function::rot_ellipsoid)
            rotation_ = make_rotation(dim, derive_seed(instance_seed, dim));
    }

    /// Replaces the rotation (rot-ellipsoid only); mostly for tests.
    Problem with_rotation(Matrix r) const
    {
        if (r.n != dim_)
            throw std::invalid_argument("rotation dimension mismatch");
        Problem p = *this;
        p.rotation_ = std::move(r);
        return p;
    }

    Function function() const { return fn_; }
    std::string_view name() const { return to_token(fn_); }
    std::size_t dim() const { return dim_; }
    const Bounds& bounds() const { return bounds_; }
    const std::vector<double>& optimum() const { return optimum_; }
    double optimum_value() const { return 0.0; }
    const std::optional<Matrix>& rotation() const { return rotation_; }

    double operator()(std::span<const double> x) const { return evaluate(x); }

    double evaluate(std::span<const double> x) const
    {
        if (x.size() != dim_)
            throw std::invalid_argument("point dimension does not match the problem");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        const auto d = static_cast<double>(dim_);
        switch (fn_) {
        case Function::sphere: {
            double s = 0.0;
            for (double v : x)
                s += v * v;
            return s;
        }
        case Function::ellipsoid: return detail::ellipsoid(x);
        case Function::rot_ellipsoid: return detail::ellipsoid(rotation_->apply(x));
        case Function::rosenbrock: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double a = x[i + 1] - x[i] * x[i];
                const double b = 1.0 - x[i];
                s += 100.0 * a * a + b * b;
            }
            return s;
        }
        case Function::ackley: {
            double sq = 0.0;
            double cs = 0.0;
            for (double v : x) {
                sq += v * v;
                cs += std::cos(two_pi * v);
            }
            // 20 (1 - e^{-0.2 r}) + (e - e^{mean cos}); exactly 0 at the origin
            return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / d))) + (std::numbers::e - std::exp(cs / d));
        }
        case Function::rastrigin: {
            double s = 0.0;
            for (double v : x)
                s += v * v + 10.0 * (1.0 - std::cos(two_pi * v));
            return s;
        }
        }
        return 0.0;
    }

private:
    Function fn_;
    std::size_t dim_;
    Bounds bounds_;
    std::vector<double> optimum_;
    std::optional<Matrix> rotation_;
};

} // namespace gaode
