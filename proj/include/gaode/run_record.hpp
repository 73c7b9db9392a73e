#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace gaode {

/// Best-so-far error after a counted evaluation; stored only on strict improvement.
struct TrajectoryPoint {
    std::uint64_t fevals = 0;
    double error = 0.0;
};

/// One counted trial event: the {F, CR} that produced the committed trial.
/// `fevals` is the counted evaluation index of that trial.
struct ThetaEntry {
    std::uint64_t fevals = 0;
    double f = 0.0;
    double cr = 0.0;
    double trial_value = 0.0;
};

struct RunRecord {
    std::string method;
    std::uint64_t seed = 0;
    std::size_t pop_size = 0;

    bool success = false;
    std::uint64_t fevals_to_success = 0; // valid iff success
    std::uint64_t fevals = 0;            // counted evaluations spent
    std::uint64_t oracle_evals = 0;      // uncounted evaluations (oracle only)
    std::size_t generations = 0;

    std::vector<TrajectoryPoint> trajectory;
    std::vector<ThetaEntry> theta;

    double final_error() const
    {
        return trajectory.empty() ? std::numeric_limits<double>::infinity() : trajectory.back().error;
    }
};

} // namespace gaode
