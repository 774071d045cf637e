// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsoccer/entities.hpp"

namespace rsoccer {

struct SimConfig {
    // Command period; each control step is split into `substeps` physics steps.
    double control_dt = 0.025;
    int substeps = 5;
    double restitution_robot_ball = 0.5;
    double restitution_wall_ball = 0.7;
    double restitution_robot_robot = 0.0;
    // Rolling friction, m/s^2.
    double ball_deceleration = 0.6;
    double max_ball_speed = 8.0;
    // First-order lag between commanded and actual body velocity.
    double drive_time_constant = 0.05;
    // Kick zone: gap between robot and ball surfaces, and bearing from heading.
    double kick_zone_depth = 0.01;
    double kick_zone_half_angle = 15.0;
    double dribbler_hold_speed_cap = 1.5;
    // false closes the goal mouths with a wall (test rig).
    bool goals_open = true;
    std::uint64_t rng_seed = 0;

    static SimConfig vsss();
    static SimConfig ssl();

    double substep_dt() const { return control_dt / substeps; }
    void validate() const;

    bool operator==(const SimConfig&) const = default;
};

struct BodyTwist {
    double vx = 0.0;
    double vy = 0.0;
    double omega = 0.0;
};

struct DiffDriveVelocity {
    double v = 0.0;
    double omega = 0.0;
};

/// Forward kinematics of a differential drive; wheels are (left, right) in rad/s.
DiffDriveVelocity diff_drive_body_velocity(std::span<const double> wheels, double wheel_radius, double axle);

/// Wheel speeds (rad/s) implied by a robot-frame twist on an omni base.
std::vector<double> omni_wheel_speeds(const BodyTwist& local, const Field& field);

/// Scales a robot-frame twist uniformly so that no implied wheel speed
/// exceeds the motor limit. Twists already within limits are returned as is.
BodyTwist omni_wheel_saturation(const BodyTwist& local, const Field& field, const SimConfig& config);

/// True when the ball sits in the robot's kick zone. Closed on both bounds.
bool ir_sense(const Robot& robot, const Ball& ball, const Field& field, const SimConfig& config);

/// Advances the ball by dt with rolling friction; the speed never changes sign.
Ball integrate_ball(const Ball& ball, double dt, const SimConfig& config);

/// One pass of contact resolution in the order robot-robot, robot-wall,
/// robot-ball, ball-wall.
Frame resolve_collisions(const Frame& frame, const Field& field, const SimConfig& config);

Frame apply_kick(const Frame& frame, const Robot& robot, double kick_power, const Field& field,
                 const SimConfig& config);

/// Pins the ball in front of a dribbling robot when it is in the kick zone
/// and the robot moves no faster than the hold cap.
Frame apply_dribbler(const Frame& frame, const Robot& robot, const Field& field, const SimConfig& config);

double kinetic_energy(const Frame& frame, const Field& field);

namespace detail {

// Internal body state: radians, global frame.
struct BodyState {
    double x, y, heading, vx, vy, omega;
};

struct DriveTarget {
    bool commanded = false;
    // Global-frame twist target (SSL) or body-frame (v, 0, omega) (VSSS).
    double vx = 0.0, vy = 0.0, omega = 0.0;
    std::vector<double> wheels;
    double kick_power = 0.0;
    bool dribbler_on = false;
    bool kicked = false;
};

}  // namespace detail

/// Deterministic fixed-step simulator. Every step reads its full state from
/// the current frame, so frame N+1 is a function of frame N and the commands.
class Simulator {
public:
    Simulator(Field field, SimConfig config);

    void reset(Frame frame);

    /// Advances exactly one control period. Robots without a command coast
    /// toward zero velocity.
    const Frame& step(std::span<const Robot> commands);

    const Frame& frame() const { return frame_; }
    const Field& field() const { return field_; }
    const SimConfig& config() const { return config_; }

private:
    Field field_;
    SimConfig config_;
    Frame frame_;
    // Scratch buffers, refilled every step.
    std::vector<Robot*> robots_;
    std::vector<detail::BodyState> bodies_;
    std::vector<detail::DriveTarget> targets_;
};

/// Stateless form of Simulator::step.
Frame step(const Frame& frame, std::span<const Robot> commands, const SimConfig& config, const Field& field);

}  // namespace rsoccer
