// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/env.hpp"

#include <array>
#include <cmath>

namespace rsoccer {

namespace {

constexpr std::array<std::pair<Cause, std::string_view>, 7> kCauseNames = {{
    {Cause::GoalScored, "goal_scored"},
    {Cause::GoalConceded, "goal_conceded"},
    {Cause::BallReached, "ball_reached"},
    {Cause::ExitedField, "exited_field"},
    {Cause::Collision, "collision"},
    {Cause::PassFailed, "pass_failed"},
    {Cause::Timeout, "timeout"},
}};

constexpr int kMaxResetAttempts = 100;

}  // namespace

std::string_view to_string(Cause cause) {
    for (auto [c, name] : kCauseNames) {
        if (c == cause) return name;
    }
    return "unknown";
}

std::optional<Cause> cause_from_string(std::string_view name) {
    for (auto [c, n] : kCauseNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

int steps_for(double episode_seconds, double control_dt) {
    return static_cast<int>(std::lround(episode_seconds / control_dt));
}

bool has_overlap(const Frame& frame, const Field& field) {
    struct Disc {
        double x, y, r;
    };
    std::vector<Disc> discs;
    discs.reserve(frame.robot_count() + 1);
    discs.push_back({frame.ball.x, frame.ball.y, field.ball_radius});
    for (const auto* team : {&frame.robots_blue, &frame.robots_yellow}) {
        for (const auto& [id, r] : *team) discs.push_back({r.x, r.y, field.robot_radius});
    }
    for (std::size_t i = 0; i < discs.size(); ++i) {
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            if (std::hypot(discs[i].x - discs[j].x, discs[i].y - discs[j].y) < discs[i].r + discs[j].r) return true;
        }
    }
    return false;
}

Environment::Environment(EnvSpec spec)
    : spec_(std::move(spec)), sim_(spec_.field, spec_.sim_config), rng_(spec_.seed) {}

void Environment::on_reset(std::mt19937_64&) {}

void Environment::commit_step(const Frame&, const Frame&) {}

Observation Environment::reset(std::optional<std::uint64_t> seed) {
    if (seed) rng_.seed(*seed);
    Frame initial;
    int attempt = 0;
    for (;; ++attempt) {
        if (attempt == kMaxResetAttempts) {
            throw SetupError(spec_.id + ": no overlap-free initial frame after " + std::to_string(attempt) +
                             " attempts");
        }
        initial = get_initial_positions_frame(rng_);
        if (!has_overlap(initial, spec_.field)) break;
    }
    initial.step_count = 0;
    initial.sim_time = 0.0;
    for (auto* team : {&initial.robots_blue, &initial.robots_yellow}) {
        for (auto& [id, r] : *team) {
            r.theta = normalize_angle_deg(r.theta);
            r.wheel_speeds.assign(spec_.field.wheel_count(), 0.0);
            r.ir = spec_.field.league == League::SSL && ir_sense(r, initial.ball, spec_.field, spec_.sim_config);
        }
    }
    sim_.reset(std::move(initial));
    on_reset(rng_);
    has_reset_ = true;
    done_ = false;
    return frame_to_observations(sim_.frame());
}

StepResult Environment::step(const Action& action) {
    if (!has_reset_) throw StateError(spec_.id + ": step() called before reset()");
    if (done_) throw StateError(spec_.id + ": step() called after the episode ended; call reset()");
    if (action.size() != static_cast<std::size_t>(spec_.n_controlled)) {
        throw ActionError(spec_.id + ": expected " + std::to_string(spec_.n_controlled) + " action rows, got " +
                          std::to_string(action.size()));
    }
    for (const auto& row : action) {
        if (row.size() != static_cast<std::size_t>(spec_.action_size_per_agent)) {
            throw ActionError(spec_.id + ": expected actions of size " + std::to_string(spec_.action_size_per_agent) +
                              ", got " + std::to_string(row.size()));
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw ActionError(spec_.id + ": action contains a non-finite value");
        }
    }

    const std::vector<Robot> commands = get_commands(action);
    last_frame_ = sim_.frame();
    const Frame& frame = sim_.step(commands);

    StepResult result;
    result.observation = frame_to_observations(frame);
    RewardDone rd = calculate_reward_and_done(frame, last_frame_);
    commit_step(frame, last_frame_);
    done_ = rd.done;
    result.reward = std::move(rd.reward);
    result.done = rd.done;
    result.info.cause = rd.cause;
    result.info.sim_time = frame.sim_time;
    result.info.metrics = std::move(rd.metrics);
    result.info.terms = std::move(rd.terms);
    return result;
}

StepResult Environment::step(std::span<const double> action) {
    return step(Action{std::vector<double>(action.begin(), action.end())});
}

}  // namespace rsoccer
