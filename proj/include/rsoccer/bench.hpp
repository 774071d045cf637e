// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rsoccer {

struct BenchOptions {
    int n_blue = 1;
    int n_yellow = 1;
    std::int64_t steps = 100000;  // timed steps per repetition
    int reps = 5;
    int parallel = 1;  // independent simulators, one thread each
    std::int64_t warmup = 1000;
    std::uint64_t seed = 0;

    void validate() const;
};

struct BenchReport {
    int n_blue = 0;
    int n_yellow = 0;
    std::int64_t steps = 0;
    int reps = 0;
    int parallel = 1;
    std::int64_t total_steps = 0;  // timed steps over all repetitions and threads
    std::vector<double> wall_seconds;         // per repetition
    std::vector<double> rep_steps_per_second;  // per repetition, aggregated over threads
    double steps_per_second_mean = 0.0;
    double steps_per_second_std = 0.0;  // sample std; 0 for a single repetition
    std::string fingerprint;

    nlohmann::json to_json() const;
};

/// Steps SSL simulators under OU commands for every robot. Only the
/// simulator step calls are timed; warm-up steps are excluded.
BenchReport run_throughput(const BenchOptions& options);

/// FNV-1a 64 of the canonical configuration, as 16 hex digits.
std::string config_fingerprint(const BenchOptions& options);

}  // namespace rsoccer
