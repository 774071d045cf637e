// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "rsoccer/bench.hpp"
#include "rsoccer/envs.hpp"
#include "rsoccer/runner.hpp"

namespace rsoccer {
namespace {

TEST(Bench, ReportShape) {
    BenchOptions o;
    o.steps = 10000;
    o.reps = 3;
    o.warmup = 100;
    const BenchReport r = run_throughput(o);
    EXPECT_EQ(r.total_steps, 30000);
    ASSERT_EQ(r.rep_steps_per_second.size(), 3u);
    ASSERT_EQ(r.wall_seconds.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(r.rep_steps_per_second[i], 10000.0 / r.wall_seconds[i]);
    }
    double mean = 0.0;
    for (double v : r.rep_steps_per_second) mean += v / 3.0;
    double ss = 0.0;
    for (double v : r.rep_steps_per_second) ss += (v - mean) * (v - mean);
    EXPECT_NEAR(r.steps_per_second_mean, mean, 1e-9 * mean);
    EXPECT_NEAR(r.steps_per_second_std, std::sqrt(ss / 2.0), 1e-9 * mean);
    const auto j = r.to_json();
    EXPECT_EQ(j.at("scenario").at("n_blue"), 1);
    EXPECT_EQ(j.at("fingerprint"), r.fingerprint);
}

TEST(Bench, SingleRepetitionHasZeroStd) {
    BenchOptions o;
    o.steps = 10000;
    o.reps = 1;
    o.warmup = 0;
    EXPECT_EQ(run_throughput(o).steps_per_second_std, 0.0);
}

TEST(Bench, ParallelAggregates) {
    BenchOptions o;
    o.steps = 10000;
    o.reps = 1;
    o.parallel = 2;
    o.warmup = 0;
    const BenchReport r = run_throughput(o);
    EXPECT_EQ(r.total_steps, 20000);
    EXPECT_GT(r.steps_per_second_mean, 0.0);
}

TEST(Bench, Fingerprint) {
    BenchOptions a;
    BenchOptions b;
    EXPECT_EQ(config_fingerprint(a), config_fingerprint(b));
    EXPECT_EQ(config_fingerprint(a).size(), 16u);
    b.n_yellow = 2;
    EXPECT_NE(config_fingerprint(a), config_fingerprint(b));
}

TEST(Bench, Validation) {
    BenchOptions o;
    o.steps = 9999;
    EXPECT_THROW(run_throughput(o), ConfigError);
    o = {};
    o.n_blue = 0;
    o.n_yellow = 0;
    EXPECT_THROW(run_throughput(o), ConfigError);
    o = {};
    o.reps = 0;
    EXPECT_THROW(run_throughput(o), ConfigError);
}

TEST(Runner, ReplayReproducesEpisode) {
    for (const auto& id : registered_env_ids()) {
        auto env = make_env(id);
        const EpisodeRecord first = run_episode(*env, random_policy(env->spec(), 5), 21);
        const EpisodeRecord again = run_episode(*env, replay_policy(env->spec(), first.actions), 21);
        EXPECT_EQ(trajectory_log(first.frames), trajectory_log(again.frames)) << id;
        EXPECT_EQ(first.outcome.to_json(), again.outcome.to_json()) << id;
        EXPECT_EQ(first.frames.size(), first.actions.size() + 1);
    }
}

TEST(Runner, ActionLogRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "rsoccer_actions.jsonl";
    const std::vector<Action> actions = {{{0.1, -0.2}}, {{1.0, 0.0}, {0.5, 0.25}}};
    write_action_log(path, actions);
    EXPECT_EQ(read_action_log(path), actions);
    {
        std::ofstream out(path);
        out << "[[0.0, 1.0]]\n[0.5, 0.5]\nnot json\n";
    }
    try {
        read_action_log(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    std::filesystem::remove(path);
}

TEST(Runner, ZeroPolicyGoToBallTimesOut) {
    auto env = make_ssl_goto_ball();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const EpisodeRecord rec = run_episode(*env, zero_policy(env->spec()), seed);
        EXPECT_EQ(rec.outcome.cause, Cause::Timeout);
        EXPECT_EQ(rec.outcome.metrics.at("ball_reached"), 0.0);
    }
}

TEST(Runner, OuPolicyStaysInBounds) {
    auto env = make_vss_multi();
    Policy p = ou_policy(env->spec(), 3);
    const Observation obs;
    for (int i = 0; i < 2000; ++i) {
        const Action a = p(obs);
        ASSERT_EQ(a.size(), 3u);
        for (const auto& row : a) {
            for (double v : row) ASSERT_LE(std::abs(v), 1.0);
        }
    }
}

}  // namespace
}  // namespace rsoccer
