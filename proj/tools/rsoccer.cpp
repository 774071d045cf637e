// SPDX-License-Identifier: Apache-2.0
// Command-line harness: throughput benchmark and headless episode runs.
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rsoccer/bench.hpp"
#include "rsoccer/envs.hpp"
#include "rsoccer/runner.hpp"
#if RSOCCER_WITH_RENDER
#include "rsoccer/renderer.hpp"
#endif

namespace {

using namespace rsoccer;

struct BenchArgs {
    std::vector<int> blue{1, 6, 11};
    std::vector<int> yellow{1, 6, 11};
    std::int64_t steps = 100000;
    int reps = 5;
    int parallel = 1;
    std::uint64_t seed = 0;
    bool json = false;
};

struct RunArgs {
    std::string env;
    std::string policy = "zero";
    std::string replay;
    std::uint64_t seed = 0;
    std::string overrides = "{}";
    std::string log;
    std::string actions;
    std::string render;
    int stride = 1;
    std::string format = "ppm";
    int width = 960;
};

int bench(const BenchArgs& a) {
    if (a.blue.size() != a.yellow.size()) {
        std::cerr << "error: --blue and --yellow need the same number of values\n";
        return 2;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < a.blue.size(); ++i) {
        BenchOptions o;
        o.n_blue = a.blue[i];
        o.n_yellow = a.yellow[i];
        o.steps = a.steps;
        o.reps = a.reps;
        o.parallel = a.parallel;
        o.seed = a.seed;
        const BenchReport r = run_throughput(o);
        if (a.json) {
            rows.push_back(r.to_json());
        } else {
            std::printf("%2d vs %-2d  %10.1f (%.1f) steps/s  [%lld steps x %d reps, x%d threads, config %s]\n",
                        r.n_blue, r.n_yellow, r.steps_per_second_mean, r.steps_per_second_std,
                        static_cast<long long>(r.steps), r.reps, r.parallel, r.fingerprint.c_str());
            std::fflush(stdout);
        }
    }
    if (a.json) std::cout << rows.dump(2) << '\n';
    return 0;
}

int run(const RunArgs& a) {
    if (!env_kind_from_id(a.env)) {
        std::cerr << "error: unknown environment '" << a.env << "'. Registered ids:\n";
        for (const auto& id : registered_env_ids()) std::cerr << "  " << id << '\n';
        return 2;
    }
#if !RSOCCER_WITH_RENDER
    if (!a.render.empty()) {
        std::cerr << "error: this build has no renderer\n";
        return 2;
    }
#endif
    auto env = make_env(a.env, nlohmann::json::parse(a.overrides));
    Policy policy;
    if (a.policy == "zero") {
        policy = zero_policy(env->spec());
    } else if (a.policy == "ou") {
        policy = ou_policy(env->spec(), a.seed);
    } else if (a.policy == "random") {
        policy = random_policy(env->spec(), a.seed);
    } else {
        if (a.replay.empty()) {
            std::cerr << "error: --policy replay needs --replay PATH\n";
            return 2;
        }
        policy = replay_policy(env->spec(), read_action_log(a.replay));
    }

    const EpisodeRecord rec = run_episode(*env, policy, a.seed);
    if (!a.log.empty()) {
        std::ofstream out(a.log);
        out << trajectory_log(rec.frames);
        if (!out) throw std::runtime_error("cannot write " + a.log);
    }
    if (!a.actions.empty()) write_action_log(a.actions, rec.actions);
#if RSOCCER_WITH_RENDER
    if (!a.render.empty()) {
        RenderStyle style;
        style.width = a.width;
        render_frames(rec.frames, a.render, env->spec().field, style, a.stride,
                      a.format == "svg" ? ImageFormat::Svg : ImageFormat::Ppm);
    }
#endif
    std::cout << rec.outcome.to_json().dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rSoccer simulator and environments"};
    app.require_subcommand(1);

    BenchArgs ba;
    auto* b = app.add_subcommand("bench", "Measure simulator steps per second (SSL, OU commands)");
    b->add_option("--blue", ba.blue, "Blue robots per scenario")->check(CLI::NonNegativeNumber);
    b->add_option("--yellow", ba.yellow, "Yellow robots per scenario")->check(CLI::NonNegativeNumber);
    b->add_option("--steps", ba.steps, "Timed steps per repetition")->check(CLI::Range(10000, 1000000000));
    b->add_option("--reps", ba.reps, "Repetitions")->check(CLI::PositiveNumber);
    b->add_option("--parallel", ba.parallel, "Independent simulators on separate threads")
        ->check(CLI::PositiveNumber);
    b->add_option("--seed", ba.seed, "Seed for initial positions and OU commands");
    b->add_flag("--json", ba.json, "Print a JSON report");

    RunArgs ra;
    auto* r = app.add_subcommand("run", "Run one episode and print its outcome as JSON");
    r->add_option("--env", ra.env, "Environment id")->required();
    r->add_option("--policy", ra.policy, "Action source")
        ->check(CLI::IsMember({"zero", "ou", "random", "replay"}));
    r->add_option("--replay", ra.replay, "Action log for --policy replay (JSON lines)");
    r->add_option("--seed", ra.seed, "Episode seed");
    r->add_option("--config", ra.overrides, "JSON object of environment overrides");
    r->add_option("--log", ra.log, "Write the trajectory log here");
    r->add_option("--actions", ra.actions, "Write the action log here");
#if RSOCCER_WITH_RENDER
    r->add_option("--render", ra.render, "Write rendered frames into this directory");
    r->add_option("--stride", ra.stride, "Render every N-th frame")->check(CLI::PositiveNumber);
    r->add_option("--format", ra.format, "Image format")->check(CLI::IsMember({"ppm", "svg"}));
    r->add_option("--width", ra.width, "Image width in pixels")->check(CLI::PositiveNumber);
#endif

    CLI11_PARSE(app, argc, argv);
    try {
        if (b->parsed()) return bench(ba);
        return run(ra);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
