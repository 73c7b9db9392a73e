#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gaode {

using Generator = std::mt19937_64;

inline constexpr std::string_view generator_name = "mt19937_64";

// SplitMix64 finalizer; used to derive independent seeds from (master, tag) pairs.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag)
{
    return mix64(mix64(master) ^ mix64(tag + 0x5851f42d4c957f2dULL));
}

/// Uniform on [0, 1) with 53 bits of resolution.
inline double uniform01(Generator& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform on [0, 1], both endpoints attainable.
inline double uniform01_closed(Generator& gen)
{
    return static_cast<double>(gen() >> 11) / static_cast<double>((std::uint64_t{1} << 53) - 1);
}

inline std::size_t uniform_index(Generator& gen, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>{0, n - 1}(gen);
}

inline double normal(Generator& gen, double mean, double stddev)
{
    return std::normal_distribution<double>{mean, stddev}(gen);
}

inline double cauchy(Generator& gen, double location, double scale)
{
    return std::cauchy_distribution<double>{location, scale}(gen);
}

/// The three independent generators of one run. Drawing from one stream
/// never advances the others.
///
///  - shared: parent indices, forced crossover index and crossover mask
///    (the randomness every oracle candidate at one event must agree on)
///  - param:  F / CR sampling by adaptation methods and the oracle
///  - init:   initial population
struct RngStreams {
    Generator shared;
    Generator param;
    Generator init;

    explicit RngStreams(std::uint64_t run_seed)
        : shared(derive_seed(run_seed, 1))
        , param(derive_seed(run_seed, 2))
        , init(derive_seed(run_seed, 3))
    {
    }
};

} // namespace gaode
