// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include "rsoccer/env.hpp"

namespace rsoccer {

/// Maps the current observation to the next action.
using Policy = std::function<Action(const Observation&)>;

Policy zero_policy(const EnvSpec& spec);
/// Uniform actions in [-1, 1].
Policy random_policy(const EnvSpec& spec, std::uint64_t seed);
/// One OU process per controlled agent.
Policy ou_policy(const EnvSpec& spec, std::uint64_t seed);
/// Plays back recorded actions, then zeros.
Policy replay_policy(const EnvSpec& spec, std::vector<Action> actions);

struct EpisodeOutcome {
    std::string env;
    std::uint64_t seed = 0;
    int steps = 0;
    std::optional<Cause> cause;
    std::map<std::string, double> metrics;
    std::vector<double> total_reward;

    nlohmann::json to_json() const;
};

struct EpisodeRecord {
    EpisodeOutcome outcome;
    std::vector<Frame> frames;  // initial frame plus one per step
    std::vector<Action> actions;
};

EpisodeRecord run_episode(Environment& env, const Policy& policy, std::uint64_t seed);

/// One trajectory log line per frame, newline terminated.
std::string trajectory_log(const std::vector<Frame>& frames);

/// JSON lines, one action matrix per line.
void write_action_log(const std::filesystem::path& path, const std::vector<Action>& actions);
std::vector<Action> read_action_log(const std::filesystem::path& path);

}  // namespace rsoccer
