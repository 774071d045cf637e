// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <thread>

#include "rsoccer/ou_noise.hpp"
#include "rsoccer/physics.hpp"

namespace rsoccer {

namespace {

using Clock = std::chrono::steady_clock;

// OU actions map to these command ranges.
constexpr double kMaxSpeed = 2.0;
constexpr double kMaxTurnRate = 360.0;

Field bench_field(const BenchOptions& o) {
    Field f = Field::ssl();
    f.n_robots_blue = o.n_blue;
    f.n_robots_yellow = o.n_yellow;
    return f;
}

Frame scattered(const Field& field, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-field.half_length() + 0.2, field.half_length() - 0.2);
    std::uniform_real_distribution<double> uy(-field.half_width() + 0.2, field.half_width() - 0.2);
    std::uniform_real_distribution<double> ut(0.0, 360.0);
    std::vector<std::array<double, 3>> placed;
    auto spot = [&](double radius) {
        for (;;) {
            const double x = ux(rng);
            const double y = uy(rng);
            bool ok = true;
            for (const auto& p : placed) ok = ok && std::hypot(x - p[0], y - p[1]) >= radius + p[2] + 0.05;
            if (ok) {
                placed.push_back({x, y, radius});
                return std::pair{x, y};
            }
        }
    };
    Frame frame;
    auto [bx, by] = spot(field.ball_radius);
    frame.ball = {bx, by, 0.0, 0.0};
    for (TeamColor team : {TeamColor::Blue, TeamColor::Yellow}) {
        const int n = team == TeamColor::Blue ? field.n_robots_blue : field.n_robots_yellow;
        for (int id = 0; id < n; ++id) {
            auto [x, y] = spot(field.robot_radius);
            Robot r;
            r.team = team;
            r.id = id;
            r.x = x;
            r.y = y;
            r.theta = ut(rng);
            r.wheel_speeds.assign(field.wheel_count(), 0.0);
            frame.put(r);
        }
    }
    return frame;
}

/// Seconds spent inside Simulator::step for `steps` timed steps.
double run_one(const BenchOptions& o, std::uint64_t seed) {
    const Field field = bench_field(o);
    SimConfig cfg = SimConfig::ssl();
    cfg.rng_seed = seed;
    std::mt19937_64 rng(seed);
    Simulator sim(field, cfg);
    sim.reset(scattered(field, rng));

    std::vector<Robot> commands;
    std::vector<OUState> noise;
    for (const auto* team : {&sim.frame().robots_blue, &sim.frame().robots_yellow}) {
        for (const auto& [id, r] : *team) {
            Robot c;
            c.team = r.team;
            c.id = id;
            commands.push_back(c);
            noise.push_back(OUState::make(3, rng(), cfg.control_dt));
        }
    }
    std::vector<double> a;
    auto refresh = [&] {
        for (std::size_t i = 0; i < commands.size(); ++i) {
            ou_advance(noise[i], a);
            commands[i].vx = a[0] * kMaxSpeed;
            commands[i].vy = a[1] * kMaxSpeed;
            commands[i].vtheta = a[2] * kMaxTurnRate;
        }
    };

    for (std::int64_t i = 0; i < o.warmup; ++i) {
        refresh();
        sim.step(commands);
    }
    Clock::duration stepping{};
    for (std::int64_t i = 0; i < o.steps; ++i) {
        refresh();
        const auto t0 = Clock::now();
        sim.step(commands);
        stepping += Clock::now() - t0;
    }
    return std::chrono::duration<double>(stepping).count();
}

}  // namespace

void BenchOptions::validate() const {
    if (n_blue < 0 || n_yellow < 0 || n_blue + n_yellow == 0) throw ConfigError("bench needs at least one robot");
    if (steps < 10000) throw ConfigError("bench needs at least 10000 timed steps per repetition");
    if (reps < 1) throw ConfigError("bench needs at least one repetition");
    if (parallel < 1) throw ConfigError("--parallel must be >= 1");
    if (warmup < 0) throw ConfigError("warm-up must be >= 0");
}

std::string config_fingerprint(const BenchOptions& o) {
    nlohmann::json j;
    j["field"] = field_to_json(bench_field(o));
    j["control_dt"] = SimConfig::ssl().control_dt;
    j["substeps"] = SimConfig::ssl().substeps;
    j["steps"] = o.steps;
    j["reps"] = o.reps;
    j["parallel"] = o.parallel;
    j["warmup"] = o.warmup;
    j["seed"] = o.seed;
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

BenchReport run_throughput(const BenchOptions& o) {
    o.validate();
    BenchReport rep;
    rep.n_blue = o.n_blue;
    rep.n_yellow = o.n_yellow;
    rep.steps = o.steps;
    rep.reps = o.reps;
    rep.parallel = o.parallel;
    rep.fingerprint = config_fingerprint(o);
    for (int r = 0; r < o.reps; ++r) {
        std::vector<double> seconds(static_cast<std::size_t>(o.parallel));
        auto seed_for = [&](int t) { return o.seed + static_cast<std::uint64_t>(r) * 1000003u + t; };
        if (o.parallel == 1) {
            seconds[0] = run_one(o, seed_for(0));
        } else {
            std::vector<std::thread> workers;
            for (int t = 0; t < o.parallel; ++t) {
                workers.emplace_back([&, t] { seconds[static_cast<std::size_t>(t)] = run_one(o, seed_for(t)); });
            }
            for (auto& w : workers) w.join();
        }
        double sps = 0.0;
        for (double s : seconds) sps += static_cast<double>(o.steps) / s;
        rep.wall_seconds.push_back(*std::max_element(seconds.begin(), seconds.end()));
        rep.rep_steps_per_second.push_back(sps);
        rep.total_steps += o.steps * o.parallel;
    }
    const double n = static_cast<double>(rep.rep_steps_per_second.size());
    rep.steps_per_second_mean =
        std::accumulate(rep.rep_steps_per_second.begin(), rep.rep_steps_per_second.end(), 0.0) / n;
    if (rep.reps > 1) {
        double ss = 0.0;
        for (double v : rep.rep_steps_per_second) ss += (v - rep.steps_per_second_mean) * (v - rep.steps_per_second_mean);
        rep.steps_per_second_std = std::sqrt(ss / (n - 1.0));
    }
    return rep;
}

nlohmann::json BenchReport::to_json() const {
    return {
        {"scenario", {{"n_blue", n_blue}, {"n_yellow", n_yellow}}},
        {"steps", steps},
        {"reps", reps},
        {"parallel", parallel},
        {"total_steps", total_steps},
        {"wall_seconds", wall_seconds},
        {"rep_steps_per_second", rep_steps_per_second},
        {"steps_per_second_mean", steps_per_second_mean},
        {"steps_per_second_std", steps_per_second_std},
        {"fingerprint", fingerprint},
    };
}

}  // namespace rsoccer
