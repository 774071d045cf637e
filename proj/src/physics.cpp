// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rsoccer {

using detail::BodyState;
using detail::DriveTarget;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// Slack on the closed kick-zone bounds, absorbs rounding at exact boundaries.
constexpr double kZoneEps = 1e-9;

BodyState load_body(const Robot& r) {
    return {r.x, r.y, r.theta * kDegToRad, r.vx, r.vy, r.vtheta * kDegToRad};
}

BodyState load_ball(const Ball& b) {
    return {b.x, b.y, 0.0, b.vx, b.vy, 0.0};
}

double wrap_pi(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a;
}

bool in_kick_zone(const BodyState& robot, const BodyState& ball, const Field& field, const SimConfig& cfg) {
    const double dx = ball.x - robot.x;
    const double dy = ball.y - robot.y;
    const double dist = std::hypot(dx, dy);
    const double gap = dist - field.robot_radius - field.ball_radius;
    if (gap > cfg.kick_zone_depth + kZoneEps) return false;
    const double bearing = wrap_pi(std::atan2(dy, dx) - robot.heading);
    return std::abs(bearing) <= cfg.kick_zone_half_angle * kDegToRad + kZoneEps;
}

void integrate_ball_body(BodyState& ball, double dt, const SimConfig& cfg) {
    ball.x += ball.vx * dt;
    ball.y += ball.vy * dt;
    const double speed = std::hypot(ball.vx, ball.vy);
    if (speed == 0.0) return;
    const double reduced = speed - cfg.ball_deceleration * dt;
    if (reduced <= 0.0) {
        ball.vx = 0.0;
        ball.vy = 0.0;
    } else {
        const double k = reduced / speed;
        ball.vx *= k;
        ball.vy *= k;
    }
}

void kick_body(const BodyState& robot, BodyState& ball, double kick_power, const Field& field) {
    const double hx = std::cos(robot.heading);
    const double hy = std::sin(robot.heading);
    const double target = kick_power * field.max_kick_speed;
    const double along = ball.vx * hx + ball.vy * hy;
    if (along < target) {
        ball.vx += (target - along) * hx;
        ball.vy += (target - along) * hy;
    }
}

bool hold_ball(const BodyState& robot, BodyState& ball, const Field& field, const SimConfig& cfg) {
    if (!in_kick_zone(robot, ball, field, cfg)) return false;
    if (std::hypot(robot.vx, robot.vy) > cfg.dribbler_hold_speed_cap) return false;
    const double reach = field.robot_radius + field.ball_radius + cfg.kick_zone_depth / 2.0;
    ball.x = robot.x + reach * std::cos(robot.heading);
    ball.y = robot.y + reach * std::sin(robot.heading);
    ball.vx = robot.vx;
    ball.vy = robot.vy;
    return true;
}

void collide_robot_robot(std::span<BodyState> robots, const Field& field, const SimConfig& cfg) {
    const double min_dist = 2.0 * field.robot_radius;
    const double e = cfg.restitution_robot_robot;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        for (std::size_t j = i + 1; j < robots.size(); ++j) {
            BodyState& a = robots[i];
            BodyState& b = robots[j];
            const double dx = b.x - a.x;
            const double dy = b.y - a.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 >= min_dist * min_dist) continue;
            const double d = std::sqrt(d2);
            double nx = 1.0;
            double ny = 0.0;
            if (d > 0.0) {
                nx = dx / d;
                ny = dy / d;
            }
            const double half = (min_dist - d) / 2.0;
            a.x -= nx * half;
            a.y -= ny * half;
            b.x += nx * half;
            b.y += ny * half;
            const double vn = (b.vx - a.vx) * nx + (b.vy - a.vy) * ny;
            if (vn < 0.0) {
                // Equal masses.
                const double j_half = -(1.0 + e) * vn / 2.0;
                a.vx -= j_half * nx;
                a.vy -= j_half * ny;
                b.vx += j_half * nx;
                b.vy += j_half * ny;
            }
        }
    }
}

void collide_robot_walls(std::span<BodyState> robots, const Field& field) {
    const double xmax = field.half_length() + field.boundary_margin - field.robot_radius;
    const double ymax = field.half_width() + field.boundary_margin - field.robot_radius;
    for (auto& r : robots) {
        if (r.x > xmax) {
            r.x = xmax;
            r.vx = std::min(r.vx, 0.0);
        } else if (r.x < -xmax) {
            r.x = -xmax;
            r.vx = std::max(r.vx, 0.0);
        }
        if (r.y > ymax) {
            r.y = ymax;
            r.vy = std::min(r.vy, 0.0);
        } else if (r.y < -ymax) {
            r.y = -ymax;
            r.vy = std::max(r.vy, 0.0);
        }
    }
}

void collide_robot_ball(std::span<const BodyState> robots, BodyState& ball, const Field& field,
                        const SimConfig& cfg) {
    const double min_dist = field.robot_radius + field.ball_radius;
    const double e = cfg.restitution_robot_ball;
    for (const auto& r : robots) {
        const double dx = ball.x - r.x;
        const double dy = ball.y - r.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 >= min_dist * min_dist) continue;
        const double d = std::sqrt(d2);
        double nx = 1.0;
        double ny = 0.0;
        if (d > 0.0) {
            nx = dx / d;
            ny = dy / d;
        }
        ball.x = r.x + nx * min_dist;
        ball.y = r.y + ny * min_dist;
        const double vn = (ball.vx - r.vx) * nx + (ball.vy - r.vy) * ny;
        if (vn < 0.0) {
            ball.vx -= (1.0 + e) * vn * nx;
            ball.vy -= (1.0 + e) * vn * ny;
        }
    }
}

// Reflects the velocity component along the outward normal (nx, ny).
void bounce(BodyState& ball, double nx, double ny, double e) {
    const double vn = ball.vx * nx + ball.vy * ny;
    if (vn > 0.0) {
        ball.vx -= (1.0 + e) * vn * nx;
        ball.vy -= (1.0 + e) * vn * ny;
    }
}

// Enclosure: rectangle at the boundary margin, with goal_width openings on
// both end walls leading into goal_depth pockets.
void collide_ball_walls(BodyState& ball, const Field& field, const SimConfig& cfg) {
    const double r = field.ball_radius;
    const double e = cfg.restitution_wall_ball;
    const double wall_x = field.half_length() + field.boundary_margin;
    const double wall_y = field.half_width() + field.boundary_margin;
    const double mouth = field.goal_width / 2.0;

    const double sx = ball.x < 0.0 ? -1.0 : 1.0;
    const double ax = std::abs(ball.x);
    const double sy = ball.y < 0.0 ? -1.0 : 1.0;
    const double ay = std::abs(ball.y);

    if (cfg.goals_open && ax > wall_x && ay < mouth) {
        // Inside a goal pocket.
        const double back = wall_x + field.goal_depth - r;
        if (ax > back) {
            ball.x = sx * back;
            bounce(ball, sx, 0.0, e);
        }
        if (ay > mouth - r) {
            ball.y = sy * (mouth - r);
            bounce(ball, 0.0, sy, e);
        }
        return;
    }

    if (ax > wall_x - r) {
        if (cfg.goals_open && ay < mouth) {
            // Facing the mouth: only the post edge can be touched.
            const double px = wall_x - ax;
            const double py = mouth - ay;
            const double d2 = px * px + py * py;
            if (d2 < r * r) {
                const double d = std::sqrt(d2);
                // Normal points from the ball center toward the post.
                double nx = sx;
                double ny = 0.0;
                if (d > 0.0) {
                    nx = sx * px / d;
                    ny = sy * py / d;
                }
                ball.x -= nx * (r - d);
                ball.y -= ny * (r - d);
                bounce(ball, nx, ny, e);
            }
        } else {
            ball.x = sx * (wall_x - r);
            bounce(ball, sx, 0.0, e);
        }
    }

    if (ay > wall_y - r) {
        ball.y = sy * (wall_y - r);
        bounce(ball, 0.0, sy, e);
    }
}

void cap_ball_speed(BodyState& ball, const SimConfig& cfg) {
    const double speed = std::hypot(ball.vx, ball.vy);
    if (speed > cfg.max_ball_speed) {
        const double k = cfg.max_ball_speed / speed;
        ball.vx *= k;
        ball.vy *= k;
    }
}

void resolve_all(std::span<BodyState> robots, BodyState& ball, const Field& field, const SimConfig& cfg) {
    collide_robot_robot(robots, field, cfg);
    collide_robot_walls(robots, field);
    collide_robot_ball(robots, ball, field, cfg);
    collide_ball_walls(ball, field, cfg);
}

bool has_nan(const Robot& c) {
    auto bad = [](double v) { return std::isnan(v); };
    return bad(c.x) || bad(c.y) || bad(c.theta) || bad(c.vx) || bad(c.vy) || bad(c.vtheta) ||
           bad(c.kick_power) || std::any_of(c.wheel_speeds.begin(), c.wheel_speeds.end(), bad);
}

void gather(Frame& frame, std::vector<Robot*>& out) {
    out.clear();
    for (auto& [id, r] : frame.robots_blue) out.push_back(&r);
    for (auto& [id, r] : frame.robots_yellow) out.push_back(&r);
}

}  // namespace

SimConfig SimConfig::vsss() {
    return SimConfig{};
}

SimConfig SimConfig::ssl() {
    SimConfig c;
    c.ball_deceleration = 0.35;
    return c;
}

void SimConfig::validate() const {
    if (!(control_dt > 0.0)) throw ConfigError("control_dt must be > 0");
    if (substeps < 1) throw ConfigError("substeps must be >= 1");
    for (double e : {restitution_robot_ball, restitution_wall_ball, restitution_robot_robot}) {
        if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("restitution coefficients must lie in [0, 1]");
    }
    if (!(ball_deceleration >= 0.0)) throw ConfigError("ball_deceleration must be >= 0");
    if (!(max_ball_speed > 0.0)) throw ConfigError("max_ball_speed must be > 0");
    if (!(drive_time_constant >= 0.0)) throw ConfigError("drive_time_constant must be >= 0");
    if (!(kick_zone_depth >= 0.0)) throw ConfigError("kick_zone_depth must be >= 0");
    if (!(kick_zone_half_angle >= 0.0 && kick_zone_half_angle <= 180.0)) {
        throw ConfigError("kick_zone_half_angle must lie in [0, 180]");
    }
    if (!(dribbler_hold_speed_cap >= 0.0)) throw ConfigError("dribbler_hold_speed_cap must be >= 0");
}

DiffDriveVelocity diff_drive_body_velocity(std::span<const double> wheels, double wheel_radius, double axle) {
    const double left = wheels[0];
    const double right = wheels[1];
    return {wheel_radius * (left + right) / 2.0, wheel_radius * (right - left) / axle};
}

std::vector<double> omni_wheel_speeds(const BodyTwist& local, const Field& field) {
    std::vector<double> wheels;
    wheels.reserve(field.wheel_angles_deg.size());
    for (double angle : field.wheel_angles_deg) {
        const double a = angle * kDegToRad;
        wheels.push_back((-std::sin(a) * local.vx + std::cos(a) * local.vy + field.robot_radius * local.omega) /
                         field.wheel_radius);
    }
    return wheels;
}

BodyTwist omni_wheel_saturation(const BodyTwist& local, const Field& field, const SimConfig&) {
    double peak = 0.0;
    for (double w : omni_wheel_speeds(local, field)) peak = std::max(peak, std::abs(w));
    if (peak <= field.max_wheel_rad_s) return local;
    const double k = field.max_wheel_rad_s / peak;
    return {local.vx * k, local.vy * k, local.omega * k};
}

bool ir_sense(const Robot& robot, const Ball& ball, const Field& field, const SimConfig& config) {
    return in_kick_zone(load_body(robot), load_ball(ball), field, config);
}

Ball integrate_ball(const Ball& ball, double dt, const SimConfig& config) {
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    BodyState b = load_ball(ball);
    integrate_ball_body(b, dt, config);
    return {b.x, b.y, b.vx, b.vy};
}

Frame resolve_collisions(const Frame& frame, const Field& field, const SimConfig& config) {
    Frame out = frame;
    std::vector<Robot*> robots;
    gather(out, robots);
    std::vector<BodyState> bodies;
    bodies.reserve(robots.size());
    for (const Robot* r : robots) bodies.push_back(load_body(*r));
    BodyState ball = load_ball(out.ball);
    resolve_all(bodies, ball, field, config);
    for (std::size_t i = 0; i < robots.size(); ++i) {
        robots[i]->x = bodies[i].x;
        robots[i]->y = bodies[i].y;
        robots[i]->vx = bodies[i].vx;
        robots[i]->vy = bodies[i].vy;
    }
    out.ball = {ball.x, ball.y, ball.vx, ball.vy};
    return out;
}

Frame apply_kick(const Frame& frame, const Robot& robot, double kick_power, const Field& field,
                 const SimConfig& config) {
    if (!(kick_power >= 0.0 && kick_power <= 1.0)) throw CommandError("kick_power must lie in [0, 1]");
    if (kick_power == 0.0) return frame;
    const BodyState body = load_body(robot);
    BodyState ball = load_ball(frame.ball);
    if (!in_kick_zone(body, ball, field, config)) return frame;
    Frame out = frame;
    kick_body(body, ball, kick_power, field);
    out.ball = {ball.x, ball.y, ball.vx, ball.vy};
    auto& team = out.team(robot.team);
    if (auto it = team.find(robot.id); it != team.end()) it->second.dribbler_on = false;
    return out;
}

Frame apply_dribbler(const Frame& frame, const Robot& robot, const Field& field, const SimConfig& config) {
    if (!robot.dribbler_on) return frame;
    BodyState ball = load_ball(frame.ball);
    if (!hold_ball(load_body(robot), ball, field, config)) return frame;
    Frame out = frame;
    out.ball = {ball.x, ball.y, ball.vx, ball.vy};
    return out;
}

double kinetic_energy(const Frame& frame, const Field& field) {
    const double inertia = 0.5 * field.robot_mass * field.robot_radius * field.robot_radius;
    double e = 0.5 * field.ball_mass * (frame.ball.vx * frame.ball.vx + frame.ball.vy * frame.ball.vy);
    auto add = [&](const std::map<int, Robot>& team) {
        for (const auto& [id, r] : team) {
            const double w = r.vtheta * kDegToRad;
            e += 0.5 * field.robot_mass * (r.vx * r.vx + r.vy * r.vy) + 0.5 * inertia * w * w;
        }
    };
    add(frame.robots_blue);
    add(frame.robots_yellow);
    return e;
}

Simulator::Simulator(Field field, SimConfig config) : field_(std::move(field)), config_(config) {
    field_.validate();
    config_.validate();
}

void Simulator::reset(Frame frame) {
    frame_ = std::move(frame);
}

const Frame& Simulator::step(std::span<const Robot> commands) {
    gather(frame_, robots_);
    const std::size_t n = robots_.size();
    const bool vsss = field_.league == League::VSSS;
    const std::size_t wheel_count = field_.wheel_count();

    targets_.resize(n);
    for (auto& t : targets_) {
        t.commanded = false;
        t.vx = t.vy = t.omega = 0.0;
        t.wheels.assign(wheel_count, 0.0);
        t.kick_power = 0.0;
        t.dribbler_on = false;
        t.kicked = false;
    }

    for (const Robot& cmd : commands) {
        auto it = std::find_if(robots_.begin(), robots_.end(),
                               [&](const Robot* r) { return r->team == cmd.team && r->id == cmd.id; });
        if (it == robots_.end()) {
            throw CommandError("command for unknown robot (" + std::string(to_string(cmd.team)) + ", " +
                               std::to_string(cmd.id) + ")");
        }
        DriveTarget& t = targets_[static_cast<std::size_t>(it - robots_.begin())];
        if (t.commanded) {
            throw CommandError("duplicate command for (" + std::string(to_string(cmd.team)) + ", " +
                               std::to_string(cmd.id) + ")");
        }
        if (has_nan(cmd)) throw CommandError("NaN in command for robot " + std::to_string(cmd.id));
        if (!(cmd.kick_power >= 0.0 && cmd.kick_power <= 1.0)) throw CommandError("kick_power must lie in [0, 1]");
        t.commanded = true;
        t.kick_power = cmd.kick_power;
        t.dribbler_on = cmd.dribbler_on;
        if (vsss) {
            if (!cmd.wheel_speeds.empty() && cmd.wheel_speeds.size() != 2) {
                throw CommandError("VSSS commands carry exactly two wheel speeds");
            }
            for (std::size_t w = 0; w < cmd.wheel_speeds.size(); ++w) {
                t.wheels[w] = std::clamp(cmd.wheel_speeds[w], -field_.max_wheel_rad_s, field_.max_wheel_rad_s);
            }
            const auto body = diff_drive_body_velocity(t.wheels, field_.wheel_radius, field_.axle_length);
            t.vx = body.v;
            t.omega = body.omega;
        } else {
            if (!cmd.wheel_speeds.empty()) throw CommandError("SSL commands are body twists, not wheel speeds");
            const double h = (*it)->theta * kDegToRad;
            const double c = std::cos(h);
            const double s = std::sin(h);
            const BodyTwist local{c * cmd.vx + s * cmd.vy, -s * cmd.vx + c * cmd.vy, cmd.vtheta * kDegToRad};
            const BodyTwist sat = omni_wheel_saturation(local, field_, config_);
            t.vx = c * sat.vx - s * sat.vy;
            t.vy = s * sat.vx + c * sat.vy;
            t.omega = sat.omega;
            const auto wheels = omni_wheel_speeds(sat, field_);
            std::copy(wheels.begin(), wheels.end(), t.wheels.begin());
        }
    }

    bodies_.resize(n);
    for (std::size_t i = 0; i < n; ++i) bodies_[i] = load_body(*robots_[i]);
    BodyState ball = load_ball(frame_.ball);

    for (std::size_t i = 0; i < n; ++i) {
        if (targets_[i].kick_power > 0.0 && in_kick_zone(bodies_[i], ball, field_, config_)) {
            kick_body(bodies_[i], ball, targets_[i].kick_power, field_);
            targets_[i].kicked = true;
        }
    }

    const double dt = config_.substep_dt();
    const double lag = config_.drive_time_constant > 0.0 ? std::min(1.0, dt / config_.drive_time_constant) : 1.0;
    for (int sub = 0; sub < config_.substeps; ++sub) {
        for (std::size_t i = 0; i < n; ++i) {
            BodyState& b = bodies_[i];
            const DriveTarget& t = targets_[i];
            double tx = t.vx;
            double ty = t.vy;
            if (vsss) {
                tx = t.vx * std::cos(b.heading);
                ty = t.vx * std::sin(b.heading);
            }
            b.vx += (tx - b.vx) * lag;
            b.vy += (ty - b.vy) * lag;
            b.omega += (t.omega - b.omega) * lag;
            b.x += b.vx * dt;
            b.y += b.vy * dt;
            b.heading += b.omega * dt;
        }

        integrate_ball_body(ball, dt, config_);
        for (std::size_t i = 0; i < n; ++i) {
            if (targets_[i].dribbler_on && !targets_[i].kicked && hold_ball(bodies_[i], ball, field_, config_)) break;
        }

        resolve_all(bodies_, ball, field_, config_);
        cap_ball_speed(ball, config_);
    }

    for (std::size_t i = 0; i < n; ++i) {
        Robot& r = *robots_[i];
        const BodyState& b = bodies_[i];
        r.x = b.x;
        r.y = b.y;
        // Unchanged angles are copied through to avoid degree/radian round-off.
        const BodyState before = load_body(r);
        r.theta = normalize_angle_deg(b.heading == before.heading ? r.theta : b.heading * kRadToDeg);
        r.vx = b.vx;
        r.vy = b.vy;
        if (b.omega != before.omega) r.vtheta = b.omega * kRadToDeg;
        r.wheel_speeds = targets_[i].wheels;
        r.kick_power = targets_[i].kick_power;
        r.dribbler_on = targets_[i].dribbler_on;
    }
    frame_.ball = {ball.x, ball.y, ball.vx, ball.vy};
    for (Robot* r : robots_) r->ir = !vsss && ir_sense(*r, frame_.ball, field_, config_);
    frame_.step_count += 1;
    frame_.sim_time = static_cast<double>(frame_.step_count) * config_.control_dt;
    return frame_;
}

Frame step(const Frame& frame, std::span<const Robot> commands, const SimConfig& config, const Field& field) {
    Simulator sim(field, config);
    sim.reset(frame);
    return sim.step(commands);
}

}  // namespace rsoccer
