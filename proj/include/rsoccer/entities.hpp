// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rsoccer {

// Error taxonomy shared by every module.
struct LookupError : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct CommandError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class TeamColor : std::uint8_t { Blue, Yellow };
enum class League : std::uint8_t { VSSS, SSL };

std::string_view to_string(TeamColor team);
std::string_view to_string(League league);

/// Ball state. Positions are meters from the field center, +x toward the
/// yellow goal.
struct Ball {
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;

    bool operator==(const Ball&) const = default;
};

/// A robot, used both as a state snapshot and as a command.
///
/// As a command, VSSS robots carry their two wheel targets (rad/s) in
/// `wheel_speeds`; SSL robots carry a global-frame twist in `vx`, `vy`
/// (m/s) and `vtheta` (deg/s) together with `kick_power` and
/// `dribbler_on`. Angular quantities are degrees at this boundary.
struct Robot {
    int id = 0;
    TeamColor team = TeamColor::Blue;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double vtheta = 0.0;
    std::vector<double> wheel_speeds;
    bool ir = false;
    double kick_power = 0.0;
    bool dribbler_on = false;

    bool operator==(const Robot&) const = default;
};

struct Frame {
    Ball ball;
    std::map<int, Robot> robots_blue;
    std::map<int, Robot> robots_yellow;
    std::int64_t step_count = 0;
    double sim_time = 0.0;

    std::map<int, Robot>& team(TeamColor color) {
        return color == TeamColor::Blue ? robots_blue : robots_yellow;
    }
    const std::map<int, Robot>& team(TeamColor color) const {
        return color == TeamColor::Blue ? robots_blue : robots_yellow;
    }
    std::size_t robot_count() const { return robots_blue.size() + robots_yellow.size(); }

    /// Inserts or replaces a robot, keyed by its own (team, id).
    void put(Robot robot);

    bool operator==(const Frame&) const = default;
};

/// Static geometry and physical parameters of a league.
struct Field {
    League league = League::VSSS;
    double length = 1.5;
    double width = 1.3;
    double goal_width = 0.4;
    double goal_depth = 0.1;
    double penalty_length = 0.15;
    double penalty_width = 0.7;
    // Distance from the field lines to the enclosing walls.
    double boundary_margin = 0.0;
    double ball_radius = 0.02135;
    double ball_mass = 0.046;
    double robot_radius = 0.0375;
    double robot_mass = 0.5;
    double wheel_radius = 0.026;
    // Wheel-to-wheel distance (differential drive only).
    double axle_length = 0.075;
    // Omni wheel mounting angles from the forward axis (SSL only).
    std::vector<double> wheel_angles_deg;
    double max_wheel_rad_s = 50.0;
    double max_kick_speed = 0.0;
    int n_robots_blue = 3;
    int n_robots_yellow = 3;

    static Field vsss();
    static Field ssl();

    /// Throws ConfigError when a length is non-positive or a count negative.
    void validate() const;

    std::size_t wheel_count() const { return league == League::VSSS ? 2 : wheel_angles_deg.size(); }
    double half_length() const { return length / 2.0; }
    double half_width() const { return width / 2.0; }

    bool operator==(const Field&) const = default;
};

const Robot& get_robot(const Frame& frame, TeamColor team, int id);
Robot& get_robot(Frame& frame, TeamColor team, int id);

/// Maps any finite angle to [0, 360).
double normalize_angle_deg(double degrees);

/// Closed test against the field lines.
bool field_contains(const Field& field, double x, double y);

// Trajectory log: one JSON object per line.
std::string frame_to_log_line(const Frame& frame);
Frame frame_from_log_line(std::string_view line, std::size_t line_number = 1);
std::vector<Frame> read_trajectory_log(const std::filesystem::path& path);

// Field configuration files mirror the Field members; unknown keys are rejected.
nlohmann::json field_to_json(const Field& field);
Field field_from_json(const nlohmann::json& json);
Field load_field_config(const std::filesystem::path& path);

}  // namespace rsoccer
