#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../adaptation.hpp"
#include "../benchmarks.hpp"
#include "../gao.hpp"

namespace gaode::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// N = 20 for D <= 4, N = 5 D otherwise.
inline std::size_t default_population_size(std::size_t dim)
{
    if (dim < 2)
        throw ConfigError("dimension must be at least 2, got " + std::to_string(dim));
    return dim <= 4 ? 20 : 5 * dim;
}

inline constexpr std::array<std::string_view, 6> method_tokens{"jde", "epsde", "jade", "mde", "shade", "gao"};

struct OracleSettings {
    std::size_t lambda = 200;
    // composite | gaode00 | gaode04 | custom
    std::string variant = "composite";
    std::size_t repeats = 1;
    ParameterRange range{};
};

struct ExperimentConfig {
    std::string method = "jde";
    std::string function = "sphere";
    std::size_t dim = 2;
    std::optional<std::size_t> pop_size;
    std::size_t runs = 51;
    std::optional<std::uint64_t> budget;
    double threshold = 1e-8;
    std::uint64_t seed = 1;
    std::uint64_t instance_seed = 1;
    std::size_t heatmap_bins = 10;
    OracleSettings oracle;
    std::string output_dir = "results";
    // 0 = hardware concurrency; never affects results
    std::size_t threads = 0;

    std::size_t population() const { return pop_size ? *pop_size : default_population_size(dim); }
    std::uint64_t evaluation_budget() const { return budget ? *budget : static_cast<std::uint64_t>(dim) * 100000; }
    Function function_id() const { return *parse_function(function); }

    void validate() const
    {
        if (std::find(method_tokens.begin(), method_tokens.end(), method) == method_tokens.end())
            throw ConfigError("unknown method '" + method + "' (expected jde|epsde|jade|mde|shade|gao)");
        if (!parse_function(function))
            throw ConfigError("unknown function '" + function +
                              "' (expected sphere|ellipsoid|rot-ellipsoid|rosenbrock|ackley|rastrigin)");
        if (dim < 2)
            throw ConfigError("dimension must be at least 2");
        if (population() < 4)
            throw ConfigError("population must be at least 4");
        if (runs < 1)
            throw ConfigError("runs must be at least 1");
        if (evaluation_budget() == 0)
            throw ConfigError("budget must be positive");
        if (!(threshold >= 0.0))
            throw ConfigError("threshold must be non-negative");
        if (heatmap_bins < 1)
            throw ConfigError("heatmap bins must be at least 1");
        if (method == "gao") {
            static const std::set<std::string> variants{"composite", "gaode00", "gaode04", "custom"};
            if (!variants.contains(oracle.variant))
                throw ConfigError("unknown oracle variant '" + oracle.variant + "'");
            if (oracle.lambda < 1)
                throw ConfigError("oracle lambda must be at least 1");
            if (oracle.repeats < 1)
                throw ConfigError("oracle repeats must be at least 1");
            try {
                oracle.range.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
};

struct SweepConfig {
    ExperimentConfig base;
    std::vector<std::string> methods{"jde", "epsde", "jade", "mde", "shade", "gao"};
    std::vector<std::string> functions{"sphere"};
    std::vector<std::size_t> dims{2};
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

template <class T>
T parse_value(const std::string& key, const std::string& text)
{
    std::istringstream is(text);
    T v{};
    is >> v;
    if (is.fail() || !(is >> std::ws).eof())
        throw ConfigError("invalid value '" + text + "' for " + key);
    return v;
}

} // namespace detail

/// Applies one `section.key = value` setting. Unknown keys are rejected.
inline void apply_setting(ExperimentConfig& cfg, const std::string& section, const std::string& key,
                          const std::string& value)
{
    using detail::parse_value;
    const std::string full = section + "." + key;
    if (section == "experiment") {
        if (key == "method")
            cfg.method = value;
        else if (key == "function")
            cfg.function = value;
        else if (key == "dim")
            cfg.dim = parse_value<std::size_t>(full, value);
        else if (key == "population")
            cfg.pop_size = parse_value<std::size_t>(full, value);
        else if (key == "runs")
            cfg.runs = parse_value<std::size_t>(full, value);
        else if (key == "budget")
            cfg.budget = static_cast<std::uint64_t>(parse_value<double>(full, value));
        else if (key == "threshold")
            cfg.threshold = parse_value<double>(full, value);
        else if (key == "seed")
            cfg.seed = parse_value<std::uint64_t>(full, value);
        else if (key == "instance_seed")
            cfg.instance_seed = parse_value<std::uint64_t>(full, value);
        else if (key == "heatmap_bins")
            cfg.heatmap_bins = parse_value<std::size_t>(full, value);
        else if (key == "output")
            cfg.output_dir = value;
        else if (key == "threads")
            cfg.threads = parse_value<std::size_t>(full, value);
        else
            throw ConfigError("unknown key " + full);
    } else if (section == "oracle") {
        if (key == "lambda")
            cfg.oracle.lambda = parse_value<std::size_t>(full, value);
        else if (key == "variant")
            cfg.oracle.variant = value;
        else if (key == "repeats")
            cfg.oracle.repeats = parse_value<std::size_t>(full, value);
        else if (key == "f_min")
            cfg.oracle.range.f_min = parse_value<double>(full, value);
        else if (key == "f_max")
            cfg.oracle.range.f_max = parse_value<double>(full, value);
        else if (key == "cr_min")
            cfg.oracle.range.cr_min = parse_value<double>(full, value);
        else if (key == "cr_max")
            cfg.oracle.range.cr_max = parse_value<double>(full, value);
        else
            throw ConfigError("unknown key " + full);
    } else {
        throw ConfigError("unknown section [" + section + "]");
    }
}

/// Parses the INI document. [experiment] and [oracle] fill the base config;
/// [sweep] lists methods, functions and dims.
inline SweepConfig parse_config(std::istream& in)
{
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    SweepConfig sweep;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ConfigError("top-level key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const std::string value = node.get_value<std::string>();
            if (section == "sweep") {
                if (key == "methods")
                    sweep.methods = detail::split_list(value);
                else if (key == "functions")
                    sweep.functions = detail::split_list(value);
                else if (key == "dims") {
                    sweep.dims.clear();
                    for (const auto& d : detail::split_list(value))
                        sweep.dims.push_back(detail::parse_value<std::size_t>("sweep.dims", d));
                } else
                    throw ConfigError("unknown key sweep." + key);
            } else {
                apply_setting(sweep.base, section, key, value);
            }
        }
    }
    return sweep;
}

inline SweepConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

/// Relative output paths are placed under $GAODE_OUTPUT_ROOT when it is set.
inline std::filesystem::path resolve_output_dir(const std::string& dir)
{
    std::filesystem::path p(dir);
    if (p.is_relative())
        if (const char* root = std::getenv("GAODE_OUTPUT_ROOT"); root && *root)
            return std::filesystem::path(root) / p;
    return p;
}

} // namespace gaode::harness
