// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <optional>

#include "rsoccer/env.hpp"
#include "rsoccer/ou_noise.hpp"

namespace rsoccer {

enum class EnvKind : std::uint8_t {
    VsssSingle,
    VsssMulti,
    GoToBall,
    StaticDefenders,
    ContestedPossession,
    Dribbling,
    PassEndurance,
    PassEnduranceMA,
};

struct RewardWeights {
    double w_objective = 10.0;
    double w_energy = 0.02;
    double w_ball_dist = 1.0;
    // VSSS only.
    double w_ball_goal = 0.0;

    static RewardWeights defaults(EnvKind kind);
};

/// Terms for `agent` between two consecutive frames. `objective` is the
/// task event value for this step.
RewardTerms reward_terms(const Frame& frame, const Frame& last_frame, EnvKind kind, const Robot& agent,
                         double objective, const Field& field, double control_dt);

/// w_objective * objective - w_energy * energy + w_ball_dist * ball_dist + w_ball_goal * ball_goal.
double compute_reward(const RewardTerms& terms, const RewardWeights& weights);
double compute_reward(const Frame& frame, const Frame& last_frame, const RewardWeights& weights, EnvKind kind,
                      const Robot& agent, double objective, const Field& field, double control_dt);

// Frame predicates shared by the environments.

/// Robots closer than this (surface to surface) count as colliding.
inline constexpr double kContactSkin = 1e-3;
/// A pass fails once the ball is slower than this.
inline constexpr double kBallStoppedSpeed = 0.05;

/// +1 when the ball is past the yellow goal line inside the mouth, -1 for
/// the blue goal line, 0 otherwise.
int goal_side(const Ball& ball, const Field& field);
bool robots_touching(const Robot& a, const Robot& b, const Field& field);
/// Closed opponent half for the blue team: 0 <= x <= length/2, |y| <= width/2.
bool in_opponent_half(const Field& field, double x, double y);

/// Open y-intervals between adjacent robots of a row, sorted by y.
std::vector<std::pair<double, double>> gate_intervals(std::span<const double> row_y, double robot_radius);

/// Pass bookkeeping between two blue robots.
struct PassProgress {
    bool in_flight = false;
    int kicker = -1;
    int receiver = -1;
    bool left_kicker = false;
    int passes = 0;

    bool operator==(const PassProgress&) const = default;
};

struct PassUpdate {
    PassProgress progress;
    bool completed = false;
    bool failed = false;
};

PassUpdate advance_pass(const PassProgress& progress, const Frame& frame, const Frame& last_frame, const Field& field);

struct GateProgress {
    std::uint32_t consumed = 0;
    int gates = 0;

    bool operator==(const GateProgress&) const = default;
};

/// Counts a gate when the agent center crosses the row line in +x inside an
/// unconsumed gate while sensing the ball.
GateProgress advance_gates(const GateProgress& progress, const Robot& agent, const Robot& last_agent, double row_x,
                           std::span<const std::pair<double, double>> gates, bool* crossed = nullptr);

struct EnvOptions {
    RewardWeights weights;
    std::uint64_t seed = 0;
    std::optional<double> episode_seconds;
    // VSSS team sizes.
    int n_blue = 3;
    int n_yellow = 3;
    // GoToBall extra static robots.
    int n_static_others = 0;
    // Static Defenders opponent count.
    int n_defenders = 6;
    // Dribbling row geometry.
    double row_x = 1.5;
    double gate_spacing = 0.8;
    // Minimum distance from walls and field lines for random spawns.
    double spawn_margin = 0.5;
    // Extra clearance between spawned bodies.
    double spawn_clearance = 0.1;

    static EnvOptions defaults(EnvKind kind);
    /// Applies a JSON object of overrides; unknown keys raise ConfigError.
    void apply(const nlohmann::json& overrides);
};

std::unique_ptr<Environment> make_vss_single(EnvOptions options = EnvOptions::defaults(EnvKind::VsssSingle));
std::unique_ptr<Environment> make_vss_multi(EnvOptions options = EnvOptions::defaults(EnvKind::VsssMulti));
std::unique_ptr<Environment> make_ssl_goto_ball(EnvOptions options = EnvOptions::defaults(EnvKind::GoToBall));
std::unique_ptr<Environment> make_ssl_static_defenders(
    EnvOptions options = EnvOptions::defaults(EnvKind::StaticDefenders));
std::unique_ptr<Environment> make_ssl_contested_possession(
    EnvOptions options = EnvOptions::defaults(EnvKind::ContestedPossession));
std::unique_ptr<Environment> make_ssl_dribbling(EnvOptions options = EnvOptions::defaults(EnvKind::Dribbling));
std::unique_ptr<Environment> make_ssl_pass_endurance(
    EnvOptions options = EnvOptions::defaults(EnvKind::PassEndurance));
std::unique_ptr<Environment> make_ssl_pass_endurance_ma(
    EnvOptions options = EnvOptions::defaults(EnvKind::PassEnduranceMA));

std::optional<EnvKind> env_kind_from_id(std::string_view id);
std::string_view env_id(EnvKind kind);

/// Name of the metric the task reports in StepInfo::metrics.
std::string_view metric_name(EnvKind kind);

/// Action bounds shared by all tasks: every component lies in [-1, 1].
/// SSL rows are (vx, vy, vtheta, kick, dribble), VSSS rows (left, right).
struct SslActionScale {
    double max_speed = 2.0;        // m/s
    double max_turn_rate = 360.0;  // deg/s
};

}  // namespace rsoccer
