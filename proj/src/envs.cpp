// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace rsoccer {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kObsClip = 1.25;
// Closest two Pass Endurance robots may spawn.
constexpr double kPassMinSeparation = 1.0;

constexpr std::array<std::pair<EnvKind, std::string_view>, 8> kIds = {{
    {EnvKind::VsssSingle, "VSSS-SingleAgent-v0"},
    {EnvKind::VsssMulti, "VSSS-MultiAgent-v0"},
    {EnvKind::GoToBall, "SSL-GoToBall-v0"},
    {EnvKind::StaticDefenders, "SSL-StaticDefenders-v0"},
    {EnvKind::ContestedPossession, "SSL-ContestedPossession-v0"},
    {EnvKind::Dribbling, "SSL-Dribbling-v0"},
    {EnvKind::PassEndurance, "SSL-PassEndurance-v0"},
    {EnvKind::PassEnduranceMA, "SSL-PassEnduranceMA-v0"},
}};

bool is_vsss(EnvKind kind) {
    return kind == EnvKind::VsssSingle || kind == EnvKind::VsssMulti;
}

double distance(double ax, double ay, double bx, double by) {
    return std::hypot(ax - bx, ay - by);
}

double hold_reach(const Field& field, const SimConfig& cfg) {
    return field.robot_radius + field.ball_radius + cfg.kick_zone_depth / 2.0;
}

Ball held_ball(const Robot& holder, const Field& field, const SimConfig& cfg) {
    const double reach = hold_reach(field, cfg);
    const double h = holder.theta * kDegToRad;
    return {holder.x + reach * std::cos(h), holder.y + reach * std::sin(h), 0.0, 0.0};
}

/// Rejection sampler for non-overlapping spawn positions.
class Spawner {
public:
    Spawner(std::mt19937_64& rng, double clearance) : rng_(rng), clearance_(clearance) {}

    void occupy(double x, double y, double radius) { discs_.push_back({x, y, radius}); }

    std::pair<double, double> place(double xlo, double xhi, double ylo, double yhi, double radius) {
        std::uniform_real_distribution<double> ux(xlo, xhi);
        std::uniform_real_distribution<double> uy(ylo, yhi);
        double x = 0.0;
        double y = 0.0;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            x = ux(rng_);
            y = uy(rng_);
            if (free(x, y, radius)) break;
        }
        // A failed placement overlaps; reset() rejects and resamples the frame.
        occupy(x, y, radius);
        return {x, y};
    }

    double heading() { return std::uniform_real_distribution<double>(0.0, 360.0)(rng_); }

private:
    bool free(double x, double y, double radius) const {
        return std::all_of(discs_.begin(), discs_.end(), [&](const auto& d) {
            return distance(x, y, d[0], d[1]) >= radius + d[2] + clearance_;
        });
    }

    std::mt19937_64& rng_;
    double clearance_;
    std::vector<std::array<double, 3>> discs_;
};

Robot spawn_robot(const Field& field, TeamColor team, int id, double x, double y, double theta) {
    Robot r;
    r.team = team;
    r.id = id;
    r.x = x;
    r.y = y;
    r.theta = theta;
    r.wheel_speeds.assign(field.wheel_count(), 0.0);
    return r;
}

Robot idle_command(TeamColor team, int id) {
    Robot c;
    c.team = team;
    c.id = id;
    return c;
}

/// Shared plumbing: observation encoding, agent bookkeeping and rewards.
class SoccerEnv : public Environment {
public:
    SoccerEnv(EnvSpec spec, EnvKind kind, EnvOptions options)
        : Environment(std::move(spec)), kind_(kind), opts_(std::move(options)) {
        const Field& f = spec_.field;
        const SimConfig& c = spec_.sim_config;
        if (f.league == League::VSSS) {
            robot_speed_scale_ = f.wheel_radius * f.max_wheel_rad_s;
            turn_rate_scale_ = 2.0 * f.wheel_radius * f.max_wheel_rad_s / f.axle_length / kDegToRad;
        } else {
            robot_speed_scale_ = ssl_scale_.max_speed;
            turn_rate_scale_ = ssl_scale_.max_turn_rate;
        }
        ball_speed_scale_ = c.max_ball_speed;
    }

    Observation frame_to_observations(const Frame& frame) const override {
        Observation obs;
        obs.reserve(static_cast<std::size_t>(spec_.n_controlled));
        for (int agent = 0; agent < spec_.n_controlled; ++agent) obs.push_back(encode(frame, agent));
        return obs;
    }

    EnvKind kind() const { return kind_; }

protected:
    static int obs_size(const Field& field) {
        const int per_robot = field.league == League::SSL ? 8 : 7;
        return 4 + per_robot * (field.n_robots_blue + field.n_robots_yellow);
    }

    // Ball, then self, blue teammates and yellow robots, each by id.
    std::vector<double> encode(const Frame& frame, int agent_id) const {
        const Field& f = spec_.field;
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(spec_.observation_size));
        auto push = [&row](double v) { row.push_back(std::clamp(v, -kObsClip, kObsClip)); };
        push(frame.ball.x / f.half_length());
        push(frame.ball.y / f.half_width());
        push(frame.ball.vx / ball_speed_scale_);
        push(frame.ball.vy / ball_speed_scale_);
        auto push_robot = [&](const Robot& r) {
            push(r.x / f.half_length());
            push(r.y / f.half_width());
            const double h = r.theta * kDegToRad;
            push(std::sin(h));
            push(std::cos(h));
            push(r.vx / robot_speed_scale_);
            push(r.vy / robot_speed_scale_);
            push(r.vtheta / turn_rate_scale_);
            if (f.league == League::SSL) push(r.ir ? 1.0 : 0.0);
        };
        push_robot(get_robot(frame, TeamColor::Blue, agent_id));
        for (const auto& [id, r] : frame.robots_blue) {
            if (id != agent_id) push_robot(r);
        }
        for (const auto& [id, r] : frame.robots_yellow) push_robot(r);
        return row;
    }

    RewardDone rewards_for_all(const Frame& frame, const Frame& last, double objective) const {
        RewardDone rd;
        for (int agent = 0; agent < spec_.n_controlled; ++agent) {
            const Robot& r = get_robot(frame, TeamColor::Blue, agent);
            const RewardTerms t =
                reward_terms(frame, last, kind_, r, objective, spec_.field, spec_.sim_config.control_dt);
            rd.terms.push_back(t);
            rd.reward.push_back(compute_reward(t, opts_.weights));
        }
        return rd;
    }

    void finish(RewardDone& rd, const Frame& frame, std::optional<Cause> cause) const {
        if (!cause && frame.step_count >= spec_.max_steps) cause = Cause::Timeout;
        rd.cause = cause;
        rd.done = cause.has_value();
    }

    Robot ssl_command(int id, std::span<const double> a) const {
        Robot c = idle_command(TeamColor::Blue, id);
        c.vx = std::clamp(a[0], -1.0, 1.0) * ssl_scale_.max_speed;
        c.vy = std::clamp(a[1], -1.0, 1.0) * ssl_scale_.max_speed;
        c.vtheta = std::clamp(a[2], -1.0, 1.0) * ssl_scale_.max_turn_rate;
        c.kick_power = std::clamp(a[3], 0.0, 1.0);
        c.dribbler_on = a[4] > 0.0;
        return c;
    }

    EnvKind kind_;
    EnvOptions opts_;
    SslActionScale ssl_scale_;
    double robot_speed_scale_ = 1.0;
    double turn_rate_scale_ = 1.0;
    double ball_speed_scale_ = 1.0;
};

EnvSpec base_spec(EnvKind kind, const EnvOptions& opts, Field field, SimConfig cfg, int n_controlled,
                  int action_size, double default_seconds) {
    EnvSpec spec;
    spec.id = std::string(env_id(kind));
    spec.field = std::move(field);
    spec.sim_config = cfg;
    spec.sim_config.rng_seed = opts.seed;
    spec.n_controlled = n_controlled;
    spec.action_size_per_agent = action_size;
    spec.episode_seconds = opts.episode_seconds.value_or(default_seconds);
    spec.max_steps = steps_for(spec.episode_seconds, cfg.control_dt);
    spec.seed = opts.seed;
    return spec;
}

// ---------------------------------------------------------------------------
// VSSS

class VsssEnv final : public SoccerEnv {
public:
    VsssEnv(EnvKind kind, EnvOptions opts) : SoccerEnv(make_spec(kind, opts), kind, opts) {
        spec_.observation_size = obs_size(spec_.field);
    }

    std::vector<Robot> get_commands(const Action& action) override {
        const Field& f = spec_.field;
        std::vector<Robot> cmds;
        cmds.reserve(spec_.field.n_robots_blue + spec_.field.n_robots_yellow);
        std::size_t noise = 0;
        for (TeamColor team : {TeamColor::Blue, TeamColor::Yellow}) {
            const int count = team == TeamColor::Blue ? f.n_robots_blue : f.n_robots_yellow;
            for (int id = 0; id < count; ++id) {
                Robot c = idle_command(team, id);
                if (team == TeamColor::Blue && id < spec_.n_controlled) {
                    const auto& a = action[static_cast<std::size_t>(id)];
                    c.wheel_speeds = {std::clamp(a[0], -1.0, 1.0) * f.max_wheel_rad_s,
                                      std::clamp(a[1], -1.0, 1.0) * f.max_wheel_rad_s};
                } else {
                    ou_advance(noise_[noise++], scratch_);
                    c.wheel_speeds = {scratch_[0] * f.max_wheel_rad_s, scratch_[1] * f.max_wheel_rad_s};
                }
                cmds.push_back(std::move(c));
            }
        }
        return cmds;
    }

    RewardDone calculate_reward_and_done(const Frame& frame, const Frame& last) const override {
        const int side = goal_side(frame.ball, spec_.field);
        RewardDone rd = rewards_for_all(frame, last, static_cast<double>(side));
        std::optional<Cause> cause;
        if (side > 0) cause = Cause::GoalScored;
        if (side < 0) cause = Cause::GoalConceded;
        finish(rd, frame, cause);
        rd.metrics["goal_score"] = side;
        return rd;
    }

    Frame get_initial_positions_frame(std::mt19937_64& rng) const override {
        const Field& f = spec_.field;
        Spawner spawn(rng, opts_.spawn_clearance);
        const double m = opts_.spawn_margin;
        const double xl = f.half_length() - m;
        const double yl = f.half_width() - m;
        Frame frame;
        auto [bx, by] = spawn.place(-xl, xl, -yl, yl, f.ball_radius);
        frame.ball = {bx, by, 0.0, 0.0};
        for (TeamColor team : {TeamColor::Blue, TeamColor::Yellow}) {
            const int count = team == TeamColor::Blue ? f.n_robots_blue : f.n_robots_yellow;
            for (int id = 0; id < count; ++id) {
                auto [x, y] = spawn.place(-xl, xl, -yl, yl, f.robot_radius);
                frame.put(spawn_robot(f, team, id, x, y, spawn.heading()));
            }
        }
        return frame;
    }

protected:
    void on_reset(std::mt19937_64& rng) override {
        const Field& f = spec_.field;
        const int uncontrolled = f.n_robots_blue - spec_.n_controlled + f.n_robots_yellow;
        noise_.clear();
        for (int i = 0; i < uncontrolled; ++i) noise_.push_back(OUState::make(2, rng(), spec_.sim_config.control_dt));
    }

private:
    static EnvSpec make_spec(EnvKind kind, const EnvOptions& opts) {
        Field field = Field::vsss();
        field.n_robots_blue = opts.n_blue;
        field.n_robots_yellow = opts.n_yellow;
        const int controlled = kind == EnvKind::VsssMulti ? opts.n_blue : 1;
        if (opts.n_blue < 1) throw ConfigError("VSSS environments need at least one blue robot");
        return base_spec(kind, opts, field, SimConfig::vsss(), controlled, 2, 30.0);
    }

    std::vector<OUState> noise_;
    std::vector<double> scratch_;
};

// ---------------------------------------------------------------------------
// SSL

class SslEnv : public SoccerEnv {
public:
    SslEnv(EnvKind kind, EnvOptions opts, int n_controlled, int n_blue, int n_yellow, double seconds)
        : SoccerEnv(make_spec(kind, opts, n_controlled, n_blue, n_yellow, seconds), kind, opts) {
        spec_.observation_size = obs_size(spec_.field);
    }

    std::vector<Robot> get_commands(const Action& action) override {
        std::vector<Robot> cmds;
        for (const auto& [id, r] : frame().robots_blue) {
            cmds.push_back(id < spec_.n_controlled ? ssl_command(id, action[static_cast<std::size_t>(id)])
                                                   : idle_command(TeamColor::Blue, id));
        }
        for (const auto& [id, r] : frame().robots_yellow) {
            Robot c = idle_command(TeamColor::Yellow, id);
            c.dribbler_on = opponents_dribble_;
            cmds.push_back(c);
        }
        return cmds;
    }

protected:
    double xl() const { return spec_.field.half_length() - opts_.spawn_margin; }
    double yl() const { return spec_.field.half_width() - opts_.spawn_margin; }

    bool opponents_dribble_ = false;

private:
    static EnvSpec make_spec(EnvKind kind, const EnvOptions& opts, int n_controlled, int n_blue, int n_yellow,
                             double seconds) {
        Field field = Field::ssl();
        field.n_robots_blue = n_blue;
        field.n_robots_yellow = n_yellow;
        return base_spec(kind, opts, field, SimConfig::ssl(), n_controlled, 5, seconds);
    }
};

class GoToBallEnv final : public SslEnv {
public:
    explicit GoToBallEnv(EnvOptions opts) : SslEnv(EnvKind::GoToBall, opts, 1, 1, opts.n_static_others, 30.0) {}

    RewardDone calculate_reward_and_done(const Frame& frame, const Frame& last) const override {
        const Robot& agent = get_robot(frame, TeamColor::Blue, 0);
        const bool reached = agent.ir;
        RewardDone rd = rewards_for_all(frame, last, reached ? 1.0 : 0.0);
        std::optional<Cause> cause;
        if (reached) {
            cause = Cause::BallReached;
        } else if (!field_contains(spec_.field, agent.x, agent.y)) {
            cause = Cause::ExitedField;
        }
        finish(rd, frame, cause);
        rd.metrics["ball_reached"] = reached ? 1.0 : 0.0;
        return rd;
    }

    Frame get_initial_positions_frame(std::mt19937_64& rng) const override {
        const Field& f = spec_.field;
        Spawner spawn(rng, opts_.spawn_clearance);
        Frame frame;
        auto [bx, by] = spawn.place(-xl(), xl(), -yl(), yl(), f.ball_radius);
        frame.ball = {bx, by, 0.0, 0.0};
        auto [x, y] = spawn.place(-xl(), xl(), -yl(), yl(), f.robot_radius);
        frame.put(spawn_robot(f, TeamColor::Blue, 0, x, y, spawn.heading()));
        for (int id = 0; id < f.n_robots_yellow; ++id) {
            auto [ox, oy] = spawn.place(-xl(), xl(), -yl(), yl(), f.robot_radius);
            frame.put(spawn_robot(f, TeamColor::Yellow, id, ox, oy, spawn.heading()));
        }
        return frame;
    }
};

/// Static Defenders and Contested Possession share their termination rules.
class AttackEnv final : public SslEnv {
public:
    AttackEnv(EnvKind kind, EnvOptions opts)
        : SslEnv(kind, opts, 1, 1, kind == EnvKind::StaticDefenders ? opts.n_defenders : 1, 30.0) {
        opponents_dribble_ = kind == EnvKind::ContestedPossession;
    }

    RewardDone calculate_reward_and_done(const Frame& frame, const Frame& last) const override {
        const Field& f = spec_.field;
        const Robot& agent = get_robot(frame, TeamColor::Blue, 0);
        const bool scored = goal_side(frame.ball, f) > 0;
        RewardDone rd = rewards_for_all(frame, last, scored ? 1.0 : 0.0);
        std::optional<Cause> cause;
        if (scored) {
            cause = Cause::GoalScored;
        } else if (std::any_of(frame.robots_yellow.begin(), frame.robots_yellow.end(),
                               [&](const auto& kv) { return robots_touching(agent, kv.second, f); })) {
            cause = Cause::Collision;
        } else if (!in_opponent_half(f, frame.ball.x, frame.ball.y) || !in_opponent_half(f, agent.x, agent.y)) {
            cause = Cause::ExitedField;
        }
        finish(rd, frame, cause);
        rd.metrics["goal_score"] = scored ? 1.0 : 0.0;
        return rd;
    }

    Frame get_initial_positions_frame(std::mt19937_64& rng) const override {
        const Field& f = spec_.field;
        const double m = opts_.spawn_margin;
        Spawner spawn(rng, opts_.spawn_clearance);
        Frame frame;
        spawn.occupy(0.0, 0.0, f.robot_radius);
        frame.put(spawn_robot(f, TeamColor::Blue, 0, 0.0, 0.0, 0.0));
        if (kind_ == EnvKind::StaticDefenders) {
            auto [bx, by] = spawn.place(m, xl(), -yl(), yl(), f.ball_radius);
            frame.ball = {bx, by, 0.0, 0.0};
            for (int id = 0; id < f.n_robots_yellow; ++id) {
                auto [x, y] = spawn.place(m, xl(), -yl(), yl(), f.robot_radius);
                frame.put(spawn_robot(f, TeamColor::Yellow, id, x, y, spawn.heading()));
            }
        } else {
            auto [x, y] = spawn.place(m, xl(), -yl(), yl(), f.robot_radius);
            const Robot holder = spawn_robot(f, TeamColor::Yellow, 0, x, y, spawn.heading());
            frame.ball = held_ball(holder, f, spec_.sim_config);
            frame.put(holder);
        }
        return frame;
    }
};

class DribblingEnv final : public SslEnv {
public:
    explicit DribblingEnv(EnvOptions opts) : SslEnv(EnvKind::Dribbling, opts, 1, 1, 4, 30.0) {
        for (int k = 0; k < 4; ++k) row_y_.push_back((k - 1.5) * opts_.gate_spacing);
        gates_ = gate_intervals(row_y_, spec_.field.robot_radius);
        if (gates_.size() != 3) throw ConfigError("gate_spacing too small: the row leaves no gates");
    }

    RewardDone calculate_reward_and_done(const Frame& frame, const Frame& last) const override {
        const Field& f = spec_.field;
        const Robot& agent = get_robot(frame, TeamColor::Blue, 0);
        const GateProgress next =
            advance_gates(progress_, agent, get_robot(last, TeamColor::Blue, 0), opts_.row_x, gates_);
        RewardDone rd = rewards_for_all(frame, last, static_cast<double>(next.gates - progress_.gates));
        std::optional<Cause> cause;
        if (std::any_of(frame.robots_yellow.begin(), frame.robots_yellow.end(),
                        [&](const auto& kv) { return robots_touching(agent, kv.second, f); })) {
            cause = Cause::Collision;
        } else if (!field_contains(f, agent.x, agent.y)) {
            cause = Cause::ExitedField;
        }
        finish(rd, frame, cause);
        rd.metrics["gates"] = next.gates;
        return rd;
    }

    Frame get_initial_positions_frame(std::mt19937_64&) const override {
        const Field& f = spec_.field;
        Frame frame;
        const Robot agent = spawn_robot(f, TeamColor::Blue, 0, 0.0, 0.0, 0.0);
        frame.ball = held_ball(agent, f, spec_.sim_config);
        frame.put(agent);
        for (int k = 0; k < 4; ++k) {
            frame.put(spawn_robot(f, TeamColor::Yellow, k, opts_.row_x, row_y_[static_cast<std::size_t>(k)], 180.0));
        }
        return frame;
    }

protected:
    void on_reset(std::mt19937_64&) override { progress_ = {}; }

    void commit_step(const Frame& frame, const Frame& last) override {
        progress_ = advance_gates(progress_, get_robot(frame, TeamColor::Blue, 0),
                                  get_robot(last, TeamColor::Blue, 0), opts_.row_x, gates_);
    }

private:
    std::vector<double> row_y_;
    std::vector<std::pair<double, double>> gates_;
    GateProgress progress_;
};

class PassEnv final : public SslEnv {
public:
    PassEnv(EnvKind kind, EnvOptions opts)
        : SslEnv(kind, opts, kind == EnvKind::PassEnduranceMA ? 2 : 1, 2, 0,
                 kind == EnvKind::PassEnduranceMA ? 30.0 : 3.0) {}

    RewardDone calculate_reward_and_done(const Frame& frame, const Frame& last) const override {
        const PassUpdate u = advance_pass(progress_, frame, last, spec_.field);
        RewardDone rd = rewards_for_all(frame, last, u.completed ? 1.0 : 0.0);
        finish(rd, frame, u.failed ? std::optional(Cause::PassFailed) : std::nullopt);
        rd.metrics["pass_score"] = u.progress.passes;
        if (kind_ == EnvKind::PassEndurance) {
            const Robot& receiver = get_robot(frame, TeamColor::Blue, 1);
            rd.metrics["inv_dist"] = 1.0 / distance(frame.ball.x, frame.ball.y, receiver.x, receiver.y);
        }
        return rd;
    }

    Frame get_initial_positions_frame(std::mt19937_64& rng) const override {
        const Field& f = spec_.field;
        Spawner spawn(rng, opts_.spawn_clearance);
        Frame frame;
        auto [x0, y0] = spawn.place(-xl(), xl(), -yl(), yl(), f.robot_radius);
        const Robot holder = spawn_robot(f, TeamColor::Blue, 0, x0, y0, spawn.heading());
        frame.ball = held_ball(holder, f, spec_.sim_config);
        spawn.occupy(frame.ball.x, frame.ball.y, f.ball_radius);
        frame.put(holder);
        Spawner far(rng, kPassMinSeparation);
        far.occupy(x0, y0, 0.0);
        auto [x1, y1] = far.place(-xl(), xl(), -yl(), yl(), 0.0);
        frame.put(spawn_robot(f, TeamColor::Blue, 1, x1, y1, spawn.heading()));
        return frame;
    }

protected:
    void on_reset(std::mt19937_64&) override { progress_ = {}; }

    void commit_step(const Frame& frame, const Frame& last) override {
        progress_ = advance_pass(progress_, frame, last, spec_.field).progress;
    }

private:
    PassProgress progress_;
};

}  // namespace

// ---------------------------------------------------------------------------

RewardWeights RewardWeights::defaults(EnvKind kind) {
    RewardWeights w;
    if (is_vsss(kind)) w.w_ball_goal = 1.0;
    return w;
}

RewardTerms reward_terms(const Frame& frame, const Frame& last, EnvKind kind, const Robot& agent, double objective,
                         const Field& field, double control_dt) {
    RewardTerms t;
    t.objective = objective;
    const Robot& now = get_robot(frame, agent.team, agent.id);
    const Robot& before = get_robot(last, agent.team, agent.id);
    for (double w : now.wheel_speeds) t.energy += std::abs(w);
    t.energy *= control_dt;

    if (kind == EnvKind::PassEndurance) {
        const Robot& rx_now = get_robot(frame, TeamColor::Blue, 1);
        const Robot& rx_before = get_robot(last, TeamColor::Blue, 1);
        t.ball_dist = distance(last.ball.x, last.ball.y, rx_before.x, rx_before.y) -
                      distance(frame.ball.x, frame.ball.y, rx_now.x, rx_now.y);
    } else {
        t.ball_dist =
            distance(before.x, before.y, last.ball.x, last.ball.y) - distance(now.x, now.y, frame.ball.x, frame.ball.y);
    }
    if (is_vsss(kind)) {
        const double gx = field.half_length();
        t.ball_goal = distance(last.ball.x, last.ball.y, gx, 0.0) - distance(frame.ball.x, frame.ball.y, gx, 0.0);
    }
    return t;
}

double compute_reward(const RewardTerms& t, const RewardWeights& w) {
    return w.w_objective * t.objective - w.w_energy * t.energy + w.w_ball_dist * t.ball_dist +
           w.w_ball_goal * t.ball_goal;
}

double compute_reward(const Frame& frame, const Frame& last, const RewardWeights& w, EnvKind kind, const Robot& agent,
                      double objective, const Field& field, double control_dt) {
    return compute_reward(reward_terms(frame, last, kind, agent, objective, field, control_dt), w);
}

int goal_side(const Ball& ball, const Field& field) {
    if (std::abs(ball.y) >= field.goal_width / 2.0) return 0;
    if (ball.x > field.half_length()) return 1;
    if (ball.x < -field.half_length()) return -1;
    return 0;
}

bool robots_touching(const Robot& a, const Robot& b, const Field& field) {
    return distance(a.x, a.y, b.x, b.y) <= 2.0 * field.robot_radius + kContactSkin;
}

bool in_opponent_half(const Field& field, double x, double y) {
    return x >= 0.0 && x <= field.half_length() && std::abs(y) <= field.half_width();
}

std::vector<std::pair<double, double>> gate_intervals(std::span<const double> row_y, double robot_radius) {
    std::vector<double> ys(row_y.begin(), row_y.end());
    std::sort(ys.begin(), ys.end());
    std::vector<std::pair<double, double>> gates;
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
        const double lo = ys[k] + robot_radius;
        const double hi = ys[k + 1] - robot_radius;
        if (lo < hi) gates.emplace_back(lo, hi);
    }
    return gates;
}

GateProgress advance_gates(const GateProgress& progress, const Robot& agent, const Robot& last_agent, double row_x,
                           std::span<const std::pair<double, double>> gates, bool* crossed) {
    if (crossed) *crossed = false;
    GateProgress next = progress;
    if (!(last_agent.x < row_x && agent.x >= row_x)) return next;
    if (crossed) *crossed = true;
    if (!agent.ir) return next;
    const double t = (row_x - last_agent.x) / (agent.x - last_agent.x);
    const double y = last_agent.y + t * (agent.y - last_agent.y);
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const std::uint32_t bit = 1u << k;
        if (y > gates[k].first && y < gates[k].second && !(next.consumed & bit)) {
            next.consumed |= bit;
            next.gates += 1;
        }
    }
    return next;
}

PassUpdate advance_pass(const PassProgress& progress, const Frame& frame, const Frame& last, const Field& field) {
    PassUpdate u;
    u.progress = progress;
    PassProgress& p = u.progress;
    if (!p.in_flight) {
        for (const auto& [id, r] : frame.robots_blue) {
            const Robot& before = get_robot(last, TeamColor::Blue, id);
            if (before.ir && r.kick_power > 0.0) {
                p.in_flight = true;
                p.kicker = id;
                p.receiver = id == 0 ? 1 : 0;
                p.left_kicker = false;
                break;
            }
        }
        if (!p.in_flight) return u;
    }
    const Robot& kicker = get_robot(frame, TeamColor::Blue, p.kicker);
    const Robot& receiver = get_robot(frame, TeamColor::Blue, p.receiver);
    if (receiver.ir) {
        p.passes += 1;
        p.in_flight = false;
        p.kicker = -1;
        p.receiver = -1;
        p.left_kicker = false;
        u.completed = true;
        return u;
    }
    if (!kicker.ir) p.left_kicker = true;
    const bool stopped = std::hypot(frame.ball.vx, frame.ball.vy) < kBallStoppedSpeed;
    const bool out = !field_contains(field, frame.ball.x, frame.ball.y);
    const bool returned = p.left_kicker && kicker.ir;
    u.failed = stopped || out || returned;
    return u;
}

EnvOptions EnvOptions::defaults(EnvKind kind) {
    EnvOptions o;
    o.weights = RewardWeights::defaults(kind);
    if (is_vsss(kind)) {
        o.spawn_margin = 0.1;
        o.spawn_clearance = 0.02;
    }
    return o;
}

void EnvOptions::apply(const nlohmann::json& j) {
    if (j.is_null()) return;
    if (!j.is_object()) throw ConfigError("environment overrides must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "w_objective") {
                value.get_to(weights.w_objective);
            } else if (key == "w_energy") {
                value.get_to(weights.w_energy);
            } else if (key == "w_ball_dist") {
                value.get_to(weights.w_ball_dist);
            } else if (key == "w_ball_goal") {
                value.get_to(weights.w_ball_goal);
            } else if (key == "seed") {
                value.get_to(seed);
            } else if (key == "episode_seconds") {
                episode_seconds = value.get<double>();
            } else if (key == "n_robots_blue") {
                value.get_to(n_blue);
            } else if (key == "n_robots_yellow") {
                value.get_to(n_yellow);
            } else if (key == "n_static_others") {
                value.get_to(n_static_others);
            } else if (key == "n_defenders") {
                value.get_to(n_defenders);
            } else if (key == "row_x") {
                value.get_to(row_x);
            } else if (key == "gate_spacing") {
                value.get_to(gate_spacing);
            } else if (key == "spawn_margin") {
                value.get_to(spawn_margin);
            } else if (key == "spawn_clearance") {
                value.get_to(spawn_clearance);
            } else {
                throw ConfigError("unknown environment override '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("environment overrides: ") + e.what());
    }
    for (double w : {weights.w_objective, weights.w_energy, weights.w_ball_dist, weights.w_ball_goal}) {
        if (!std::isfinite(w)) throw ConfigError("reward weights must be finite");
    }
    if (episode_seconds && !(*episode_seconds > 0.0)) throw ConfigError("episode_seconds must be > 0");
    if (n_blue < 0 || n_yellow < 0 || n_static_others < 0 || n_defenders < 0) {
        throw ConfigError("robot counts must be >= 0");
    }
}

std::unique_ptr<Environment> make_vss_single(EnvOptions options) {
    return std::make_unique<VsssEnv>(EnvKind::VsssSingle, std::move(options));
}
std::unique_ptr<Environment> make_vss_multi(EnvOptions options) {
    return std::make_unique<VsssEnv>(EnvKind::VsssMulti, std::move(options));
}
std::unique_ptr<Environment> make_ssl_goto_ball(EnvOptions options) {
    return std::make_unique<GoToBallEnv>(std::move(options));
}
std::unique_ptr<Environment> make_ssl_static_defenders(EnvOptions options) {
    return std::make_unique<AttackEnv>(EnvKind::StaticDefenders, std::move(options));
}
std::unique_ptr<Environment> make_ssl_contested_possession(EnvOptions options) {
    return std::make_unique<AttackEnv>(EnvKind::ContestedPossession, std::move(options));
}
std::unique_ptr<Environment> make_ssl_dribbling(EnvOptions options) {
    return std::make_unique<DribblingEnv>(std::move(options));
}
std::unique_ptr<Environment> make_ssl_pass_endurance(EnvOptions options) {
    return std::make_unique<PassEnv>(EnvKind::PassEndurance, std::move(options));
}
std::unique_ptr<Environment> make_ssl_pass_endurance_ma(EnvOptions options) {
    return std::make_unique<PassEnv>(EnvKind::PassEnduranceMA, std::move(options));
}

std::optional<EnvKind> env_kind_from_id(std::string_view id) {
    for (auto [kind, name] : kIds) {
        if (name == id) return kind;
    }
    return std::nullopt;
}

std::string_view env_id(EnvKind kind) {
    for (auto [k, name] : kIds) {
        if (k == kind) return name;
    }
    return {};
}

std::string_view metric_name(EnvKind kind) {
    switch (kind) {
        case EnvKind::VsssSingle:
        case EnvKind::VsssMulti:
        case EnvKind::StaticDefenders:
        case EnvKind::ContestedPossession:
            return "goal_score";
        case EnvKind::GoToBall:
            return "ball_reached";
        case EnvKind::Dribbling:
            return "gates";
        case EnvKind::PassEndurance:
            return "inv_dist";
        case EnvKind::PassEnduranceMA:
            return "pass_score";
    }
    return {};
}

const std::vector<std::string>& registered_env_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (auto [kind, name] : kIds) out.emplace_back(name);
        return out;
    }();
    return ids;
}

std::unique_ptr<Environment> make_env(std::string_view id, const nlohmann::json& overrides) {
    const auto kind = env_kind_from_id(id);
    if (!kind) {
        std::string msg = "unknown environment id '" + std::string(id) + "'; registered ids:";
        for (const auto& known : registered_env_ids()) msg += " " + known;
        throw UnknownEnvError(msg);
    }
    EnvOptions opts = EnvOptions::defaults(*kind);
    opts.apply(overrides);
    switch (*kind) {
        case EnvKind::VsssSingle:
            return make_vss_single(opts);
        case EnvKind::VsssMulti:
            return make_vss_multi(opts);
        case EnvKind::GoToBall:
            return make_ssl_goto_ball(opts);
        case EnvKind::StaticDefenders:
            return make_ssl_static_defenders(opts);
        case EnvKind::ContestedPossession:
            return make_ssl_contested_possession(opts);
        case EnvKind::Dribbling:
            return make_ssl_dribbling(opts);
        case EnvKind::PassEndurance:
            return make_ssl_pass_endurance(opts);
        case EnvKind::PassEnduranceMA:
            return make_ssl_pass_endurance_ma(opts);
    }
    throw UnknownEnvError("unreachable");
}

}  // namespace rsoccer
