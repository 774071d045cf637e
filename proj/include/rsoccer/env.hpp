// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rsoccer/entities.hpp"
#include "rsoccer/physics.hpp"

namespace rsoccer {

struct ActionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};
struct SetupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownEnvError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Why an episode ended.
enum class Cause : std::uint8_t {
    GoalScored,
    GoalConceded,
    BallReached,
    ExitedField,
    Collision,
    PassFailed,
    Timeout,
};

std::string_view to_string(Cause cause);
std::optional<Cause> cause_from_string(std::string_view name);

/// One row per controlled agent.
using Observation = std::vector<std::vector<double>>;
using Action = std::vector<std::vector<double>>;

struct EnvSpec {
    std::string id;
    Field field;
    SimConfig sim_config;
    int n_controlled = 1;
    int observation_size = 0;
    int action_size_per_agent = 0;
    double episode_seconds = 30.0;
    int max_steps = 1200;
    std::uint64_t seed = 0;
};

/// max_steps for an episode length, rounded to whole control steps.
int steps_for(double episode_seconds, double control_dt);

/// Unweighted reward components for one agent and one step.
struct RewardTerms {
    double objective = 0.0;
    // Sum of |wheel speed| times control_dt.
    double energy = 0.0;
    // Decrease of the shaping distance (agent to ball, or ball to receiver).
    double ball_dist = 0.0;
    // Decrease of the ball to opponent-goal distance.
    double ball_goal = 0.0;

    bool operator==(const RewardTerms&) const = default;
};

struct RewardDone {
    std::vector<double> reward;
    std::vector<RewardTerms> terms;
    bool done = false;
    std::optional<Cause> cause;
    std::map<std::string, double> metrics;

    bool operator==(const RewardDone&) const = default;
};

struct StepInfo {
    std::optional<Cause> cause;
    double sim_time = 0.0;
    std::map<std::string, double> metrics;
    std::vector<RewardTerms> terms;

    bool operator==(const StepInfo&) const = default;
};

struct StepResult {
    Observation observation;
    std::vector<double> reward;
    bool done = false;
    StepInfo info;

    bool operator==(const StepResult&) const = default;
};

/// Base environment. A concrete task implements the four hooks; reset()
/// and step() drive them against an owned simulator.
class Environment {
public:
    explicit Environment(EnvSpec spec);
    virtual ~Environment() = default;

    Environment(const Environment&) = delete;
    Environment& operator=(const Environment&) = delete;

    Observation reset(std::optional<std::uint64_t> seed = std::nullopt);
    StepResult step(const Action& action);
    /// Single-agent convenience.
    StepResult step(std::span<const double> action);

    const EnvSpec& spec() const { return spec_; }
    const Frame& frame() const { return sim_.frame(); }
    bool done() const { return done_; }

    /// Commands for every robot on the field, controlled or not.
    virtual std::vector<Robot> get_commands(const Action& action) = 0;
    virtual Observation frame_to_observations(const Frame& frame) const = 0;
    /// Pure in (frame, last_frame) and the episode progress committed so far.
    virtual RewardDone calculate_reward_and_done(const Frame& frame, const Frame& last_frame) const = 0;
    virtual Frame get_initial_positions_frame(std::mt19937_64& rng) const = 0;

protected:
    /// Called after the initial frame is loaded; reseed per-episode state here.
    virtual void on_reset(std::mt19937_64& rng);
    /// Called once per step after calculate_reward_and_done.
    virtual void commit_step(const Frame& frame, const Frame& last_frame);

    EnvSpec spec_;

private:
    Simulator sim_;
    std::mt19937_64 rng_;
    Frame last_frame_;
    bool has_reset_ = false;
    bool done_ = false;
};

/// True when any two bodies (robots or ball) intersect.
bool has_overlap(const Frame& frame, const Field& field);

/// Stable environment ids.
const std::vector<std::string>& registered_env_ids();

/// Builds a registered environment. `overrides` may set reward weights,
/// team sizes, spawn parameters and the seed; unknown keys are rejected.
std::unique_ptr<Environment> make_env(std::string_view id, const nlohmann::json& overrides = nlohmann::json::object());

}  // namespace rsoccer
