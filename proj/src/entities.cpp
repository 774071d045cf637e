// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/entities.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace rsoccer {

std::string_view to_string(TeamColor team) {
    return team == TeamColor::Blue ? "blue" : "yellow";
}

std::string_view to_string(League league) {
    return league == League::VSSS ? "vsss" : "ssl";
}

void Frame::put(Robot robot) {
    const int id = robot.id;
    team(robot.team).insert_or_assign(id, std::move(robot));
}

Field Field::vsss() {
    return Field{};
}

Field Field::ssl() {
    Field f;
    f.league = League::SSL;
    f.length = 9.0;
    f.width = 6.0;
    f.goal_width = 1.0;
    f.goal_depth = 0.18;
    f.penalty_length = 1.0;
    f.penalty_width = 2.0;
    f.boundary_margin = 0.3;
    f.ball_radius = 0.0215;
    f.ball_mass = 0.046;
    f.robot_radius = 0.09;
    f.robot_mass = 2.2;
    f.wheel_radius = 0.02475;
    f.axle_length = 0.0;
    f.wheel_angles_deg = {60.0, 135.0, 225.0, 300.0};
    f.max_wheel_rad_s = 80.0;
    f.max_kick_speed = 6.5;
    f.n_robots_blue = 6;
    f.n_robots_yellow = 6;
    return f;
}

void Field::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("field.") + name + " must be > 0");
    };
    positive(length, "length");
    positive(width, "width");
    positive(goal_width, "goal_width");
    positive(goal_depth, "goal_depth");
    positive(penalty_length, "penalty_length");
    positive(penalty_width, "penalty_width");
    positive(ball_radius, "ball_radius");
    positive(ball_mass, "ball_mass");
    positive(robot_radius, "robot_radius");
    positive(robot_mass, "robot_mass");
    positive(wheel_radius, "wheel_radius");
    positive(max_wheel_rad_s, "max_wheel_rad_s");
    if (!(boundary_margin >= 0.0)) throw ConfigError("field.boundary_margin must be >= 0");
    if (!(max_kick_speed >= 0.0)) throw ConfigError("field.max_kick_speed must be >= 0");
    if (!(goal_width < width)) throw ConfigError("field.goal_width must be smaller than field.width");
    if (n_robots_blue < 0 || n_robots_yellow < 0) throw ConfigError("robot counts must be >= 0");
    if (league == League::VSSS) {
        positive(axle_length, "axle_length");
    } else if (wheel_angles_deg.empty()) {
        throw ConfigError("field.wheel_angles_deg must list the omni wheel mounting angles");
    }
}

const Robot& get_robot(const Frame& frame, TeamColor team, int id) {
    const auto& robots = frame.team(team);
    auto it = robots.find(id);
    if (it == robots.end()) {
        throw LookupError("no robot (" + std::string(to_string(team)) + ", " + std::to_string(id) + ") in frame");
    }
    return it->second;
}

Robot& get_robot(Frame& frame, TeamColor team, int id) {
    return const_cast<Robot&>(get_robot(std::as_const(frame), team, id));
}

double normalize_angle_deg(double degrees) {
    if (!std::isfinite(degrees)) throw DomainError("angle must be finite");
    double r = std::fmod(degrees, 360.0);
    if (r < 0.0) r += 360.0;
    // -1e-18 + 360 rounds to 360
    if (r >= 360.0) r = 0.0;
    return r;
}

bool field_contains(const Field& field, double x, double y) {
    return std::abs(x) <= field.half_length() && std::abs(y) <= field.half_width();
}

namespace {

// Shortest representation that parses back to the same double.
void append_number(std::string& out, double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

void append_integer(std::string& out, std::int64_t v) {
    std::array<char, 24> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

void append_robot(std::string& out, const Robot& r) {
    out += "{\"id\":";
    append_integer(out, r.id);
    out += ",\"x\":";
    append_number(out, r.x);
    out += ",\"y\":";
    append_number(out, r.y);
    out += ",\"theta\":";
    append_number(out, r.theta);
    out += ",\"vx\":";
    append_number(out, r.vx);
    out += ",\"vy\":";
    append_number(out, r.vy);
    out += ",\"vtheta\":";
    append_number(out, r.vtheta);
    out += ",\"wheel_speeds\":[";
    for (std::size_t i = 0; i < r.wheel_speeds.size(); ++i) {
        if (i) out += ',';
        append_number(out, r.wheel_speeds[i]);
    }
    out += "],\"ir\":";
    out += r.ir ? "true" : "false";
    out += ",\"kick_power\":";
    append_number(out, r.kick_power);
    out += ",\"dribbler_on\":";
    out += r.dribbler_on ? "true" : "false";
    out += '}';
}

void append_team(std::string& out, const std::map<int, Robot>& robots) {
    out += '[';
    bool first = true;
    for (const auto& [id, robot] : robots) {
        if (!first) out += ',';
        first = false;
        append_robot(out, robot);
    }
    out += ']';
}

template <typename T>
T require(const nlohmann::json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
    return obj.at(key).get<T>();
}

void parse_team(const nlohmann::json& arr, TeamColor team, Frame& frame) {
    if (!arr.is_array()) throw std::invalid_argument("robot list must be an array");
    for (const auto& j : arr) {
        Robot r;
        r.team = team;
        r.id = require<int>(j, "id");
        r.x = require<double>(j, "x");
        r.y = require<double>(j, "y");
        r.theta = require<double>(j, "theta");
        r.vx = require<double>(j, "vx");
        r.vy = require<double>(j, "vy");
        r.vtheta = require<double>(j, "vtheta");
        r.wheel_speeds = require<std::vector<double>>(j, "wheel_speeds");
        r.ir = require<bool>(j, "ir");
        r.kick_power = require<double>(j, "kick_power");
        r.dribbler_on = require<bool>(j, "dribbler_on");
        if (frame.team(team).contains(r.id)) {
            throw std::invalid_argument("duplicate robot id " + std::to_string(r.id));
        }
        frame.put(std::move(r));
    }
}

}  // namespace

std::string frame_to_log_line(const Frame& frame) {
    std::string out;
    out.reserve(128 + 220 * frame.robot_count());
    out += "{\"ball\":{\"x\":";
    append_number(out, frame.ball.x);
    out += ",\"y\":";
    append_number(out, frame.ball.y);
    out += ",\"vx\":";
    append_number(out, frame.ball.vx);
    out += ",\"vy\":";
    append_number(out, frame.ball.vy);
    out += "},\"robots_blue\":";
    append_team(out, frame.robots_blue);
    out += ",\"robots_yellow\":";
    append_team(out, frame.robots_yellow);
    out += ",\"step_count\":";
    append_integer(out, frame.step_count);
    out += ",\"sim_time\":";
    append_number(out, frame.sim_time);
    out += '}';
    return out;
}

Frame frame_from_log_line(std::string_view line, std::size_t line_number) {
    try {
        const auto j = nlohmann::json::parse(line);
        Frame frame;
        const auto& ball = j.at("ball");
        frame.ball.x = require<double>(ball, "x");
        frame.ball.y = require<double>(ball, "y");
        frame.ball.vx = require<double>(ball, "vx");
        frame.ball.vy = require<double>(ball, "vy");
        parse_team(j.at("robots_blue"), TeamColor::Blue, frame);
        parse_team(j.at("robots_yellow"), TeamColor::Yellow, frame);
        frame.step_count = require<std::int64_t>(j, "step_count");
        frame.sim_time = require<double>(j, "sim_time");
        return frame;
    } catch (const std::exception& e) {
        throw ParseError(line_number, e.what());
    }
}

std::vector<Frame> read_trajectory_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    std::vector<Frame> frames;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        frames.push_back(frame_from_log_line(line, n));
    }
    return frames;
}

nlohmann::json field_to_json(const Field& f) {
    return {
        {"league", std::string(to_string(f.league))},
        {"length", f.length},
        {"width", f.width},
        {"goal_width", f.goal_width},
        {"goal_depth", f.goal_depth},
        {"penalty_length", f.penalty_length},
        {"penalty_width", f.penalty_width},
        {"boundary_margin", f.boundary_margin},
        {"ball_radius", f.ball_radius},
        {"ball_mass", f.ball_mass},
        {"robot_radius", f.robot_radius},
        {"robot_mass", f.robot_mass},
        {"wheel_radius", f.wheel_radius},
        {"axle_length", f.axle_length},
        {"wheel_angles_deg", f.wheel_angles_deg},
        {"max_wheel_rad_s", f.max_wheel_rad_s},
        {"max_kick_speed", f.max_kick_speed},
        {"n_robots_blue", f.n_robots_blue},
        {"n_robots_yellow", f.n_robots_yellow},
    };
}

Field field_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("field config must be an object");
    static const std::set<std::string> known = {
        "league",       "length",        "width",           "goal_width",     "goal_depth",
        "penalty_length", "penalty_width", "boundary_margin", "ball_radius",    "ball_mass",
        "robot_radius", "robot_mass",    "wheel_radius",    "axle_length",    "wheel_angles_deg",
        "max_wheel_rad_s", "max_kick_speed", "n_robots_blue", "n_robots_yellow"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ConfigError("unknown field config key '" + key + "'");
    }

    // Unlisted keys keep the league defaults.
    Field f;
    if (j.contains("league")) {
        const auto league = j.at("league").get<std::string>();
        if (league == "vsss") {
            f = Field::vsss();
        } else if (league == "ssl") {
            f = Field::ssl();
        } else {
            throw ConfigError("unknown league '" + league + "'");
        }
    }
    try {
        auto read = [&](const char* key, auto& member) {
            if (j.contains(key)) j.at(key).get_to(member);
        };
        read("length", f.length);
        read("width", f.width);
        read("goal_width", f.goal_width);
        read("goal_depth", f.goal_depth);
        read("penalty_length", f.penalty_length);
        read("penalty_width", f.penalty_width);
        read("boundary_margin", f.boundary_margin);
        read("ball_radius", f.ball_radius);
        read("ball_mass", f.ball_mass);
        read("robot_radius", f.robot_radius);
        read("robot_mass", f.robot_mass);
        read("wheel_radius", f.wheel_radius);
        read("axle_length", f.axle_length);
        read("wheel_angles_deg", f.wheel_angles_deg);
        read("max_wheel_rad_s", f.max_wheel_rad_s);
        read("max_kick_speed", f.max_kick_speed);
        read("n_robots_blue", f.n_robots_blue);
        read("n_robots_yellow", f.n_robots_yellow);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("field config: ") + e.what());
    }
    f.validate();
    return f;
}

Field load_field_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return field_from_json(j);
}

}  // namespace rsoccer
