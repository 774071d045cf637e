// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rsoccer/envs.hpp"
#include "test_util.hpp"

namespace rsoccer {
namespace {

using testing::robot_at;

struct Expected {
    std::string id;
    int n_controlled;
    int obs_size;
    int action_size;
    int max_steps;
};

// Observation sizes: 4 ball slots plus 7 per VSSS robot or 8 per SSL robot.
const std::vector<Expected> kExpected = {
    {"VSSS-SingleAgent-v0", 1, 4 + 6 * 7, 2, 1200},
    {"VSSS-MultiAgent-v0", 3, 4 + 6 * 7, 2, 1200},
    {"SSL-GoToBall-v0", 1, 4 + 1 * 8, 5, 1200},
    {"SSL-StaticDefenders-v0", 1, 4 + 7 * 8, 5, 1200},
    {"SSL-ContestedPossession-v0", 1, 4 + 2 * 8, 5, 1200},
    {"SSL-Dribbling-v0", 1, 4 + 5 * 8, 5, 1200},
    {"SSL-PassEndurance-v0", 1, 4 + 2 * 8, 5, 120},
    {"SSL-PassEnduranceMA-v0", 2, 4 + 2 * 8, 5, 1200},
};

Action zero_action(const EnvSpec& spec) {
    return Action(static_cast<std::size_t>(spec.n_controlled),
                  std::vector<double>(static_cast<std::size_t>(spec.action_size_per_agent), 0.0));
}

Action random_action(const EnvSpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Action a = zero_action(spec);
    for (auto& row : a) {
        for (double& v : row) v = u(rng);
    }
    return a;
}

class EnvContract : public ::testing::TestWithParam<Expected> {};

TEST_P(EnvContract, SpecShapes) {
    const Expected& e = GetParam();
    auto env = make_env(e.id);
    EXPECT_EQ(env->spec().id, e.id);
    EXPECT_EQ(env->spec().n_controlled, e.n_controlled);
    EXPECT_EQ(env->spec().observation_size, e.obs_size);
    EXPECT_EQ(env->spec().action_size_per_agent, e.action_size);
    EXPECT_EQ(env->spec().max_steps, e.max_steps);
    const Observation obs = env->reset(42);
    ASSERT_EQ(obs.size(), static_cast<std::size_t>(e.n_controlled));
    for (const auto& row : obs) EXPECT_EQ(row.size(), static_cast<std::size_t>(e.obs_size));
}

TEST_P(EnvContract, SeededResetRepeats) {
    auto env = make_env(GetParam().id);
    const Observation a = env->reset(42);
    const Frame fa = env->frame();
    env->reset(7);
    const Observation b = env->reset(42);
    EXPECT_EQ(a, b);
    EXPECT_EQ(fa, env->frame());
    EXPECT_EQ(env->frame().step_count, 0);
    EXPECT_EQ(env->frame().sim_time, 0.0);
}

TEST_P(EnvContract, StepBeforeResetIsStateError) {
    auto env = make_env(GetParam().id);
    EXPECT_THROW(env->step(zero_action(env->spec())), StateError);
}

TEST_P(EnvContract, ZeroActionDoesNotEndFirstStep) {
    auto env = make_env(GetParam().id);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        env->reset(seed);
        const StepResult r = env->step(zero_action(env->spec()));
        EXPECT_FALSE(r.done) << "seed " << seed;
        EXPECT_EQ(r.reward.size(), static_cast<std::size_t>(env->spec().n_controlled));
        EXPECT_EQ(r.observation.size(), static_cast<std::size_t>(env->spec().n_controlled));
        EXPECT_DOUBLE_EQ(r.info.sim_time, 0.025);
    }
}

TEST_P(EnvContract, MalformedActionsRejected) {
    auto env = make_env(GetParam().id);
    const EnvSpec& spec = env->spec();
    env->reset(1);
    Action a = zero_action(spec);
    a[0].push_back(0.0);
    EXPECT_THROW(env->step(a), ActionError);
    a = zero_action(spec);
    a.push_back(a[0]);
    EXPECT_THROW(env->step(a), ActionError);
    a = zero_action(spec);
    a[0][0] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(env->step(a), ActionError);
    a[0][0] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(env->step(a), ActionError);
    EXPECT_EQ(env->frame().step_count, 0);
    EXPECT_NO_THROW(env->step(zero_action(spec)));
}

TEST_P(EnvContract, EpisodeEndsLatchesAndReportsCause) {
    const Expected& e = GetParam();
    auto env = make_env(e.id);
    const std::string metric(metric_name(*env_kind_from_id(e.id)));
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        env->reset(seed);
        StepResult r;
        int steps = 0;
        do {
            r = env->step(random_action(env->spec(), rng));
            ++steps;
            ASSERT_EQ(r.info.metrics.count(metric), 1u);
            ASSERT_EQ(r.info.cause.has_value(), r.done);
            for (const auto& row : r.observation) {
                for (double v : row) ASSERT_LE(std::abs(v), 1.25);
            }
        } while (!r.done);
        EXPECT_LE(steps, e.max_steps);
        EXPECT_TRUE(cause_from_string(to_string(*r.info.cause)).has_value());
        if (steps == e.max_steps) {
            EXPECT_EQ(*r.info.cause, Cause::Timeout);
        }
        EXPECT_TRUE(env->done());
        EXPECT_THROW(env->step(zero_action(env->spec())), StateError);
        env->reset();
        EXPECT_FALSE(env->done());
        EXPECT_NO_THROW(env->step(zero_action(env->spec())));
    }
}

TEST_P(EnvContract, SeededEpisodesRepeat) {
    auto run = [&](std::uint64_t seed) {
        auto env = make_env(GetParam().id);
        env->reset(seed);
        std::mt19937_64 rng(seed + 1000);
        std::vector<StepResult> out;
        for (int i = 0; i < 300; ++i) {
            out.push_back(env->step(random_action(env->spec(), rng)));
            if (out.back().done) break;
        }
        return out;
    };
    EXPECT_EQ(run(11), run(11));
}

TEST_P(EnvContract, HooksArePure) {
    auto env = make_env(GetParam().id);
    env->reset(5);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10 && !env->done(); ++i) env->step(random_action(env->spec(), rng));
    const Frame last = env->frame();
    if (!env->done()) env->step(random_action(env->spec(), rng));
    const Frame now = env->frame();
    EXPECT_EQ(env->frame_to_observations(now), env->frame_to_observations(now));
    EXPECT_EQ(env->calculate_reward_and_done(now, last), env->calculate_reward_and_done(now, last));
    std::mt19937_64 g1(9);
    std::mt19937_64 g2(9);
    EXPECT_EQ(env->get_initial_positions_frame(g1), env->get_initial_positions_frame(g2));
}

INSTANTIATE_TEST_SUITE_P(AllEnvs, EnvContract, ::testing::ValuesIn(kExpected),
                         [](const auto& info) {
                             std::string name = info.param.id;
                             for (char& c : name) {
                                 if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                             }
                             return name;
                         });

TEST(Registry, ListsEightIds) {
    ASSERT_EQ(registered_env_ids().size(), 8u);
    for (const auto& e : kExpected) {
        EXPECT_NE(std::find(registered_env_ids().begin(), registered_env_ids().end(), e.id),
                  registered_env_ids().end());
    }
}

TEST(Registry, UnknownIdListsRegisteredIds) {
    try {
        make_env("nope");
        FAIL() << "expected UnknownEnvError";
    } catch (const UnknownEnvError& e) {
        const std::string msg = e.what();
        for (const auto& id : registered_env_ids()) EXPECT_NE(msg.find(id), std::string::npos) << id;
    }
}

TEST(Registry, OverridesApplied) {
    auto env = make_env("SSL-GoToBall-v0", {{"episode_seconds", 3.0}, {"n_static_others", 2}, {"seed", 8}});
    EXPECT_EQ(env->spec().max_steps, 120);
    EXPECT_EQ(env->spec().field.n_robots_yellow, 2);
    EXPECT_EQ(env->spec().observation_size, 4 + 3 * 8);
    EXPECT_EQ(env->spec().seed, 8u);
}

TEST(Registry, BadOverridesRejected) {
    EXPECT_THROW(make_env("SSL-GoToBall-v0", {{"bogus", 1}}), ConfigError);
    EXPECT_THROW(make_env("SSL-GoToBall-v0", {{"w_energy", "x"}}), ConfigError);
    EXPECT_THROW(make_env("SSL-GoToBall-v0", {{"episode_seconds", 0.0}}), ConfigError);
    EXPECT_THROW(make_env("SSL-GoToBall-v0", nlohmann::json::array()), ConfigError);
}

TEST(GetCommands, VsssFullForwardIsMaxWheels) {
    auto env = make_vss_single();
    env->reset(0);
    const auto cmds = env->get_commands({{1.0, 1.0}});
    ASSERT_EQ(cmds.size(), 6u);
    const Robot& c = cmds.front();
    EXPECT_EQ(c.team, TeamColor::Blue);
    EXPECT_EQ(c.id, 0);
    const double wmax = env->spec().field.max_wheel_rad_s;
    EXPECT_EQ(c.wheel_speeds, (std::vector<double>{wmax, wmax}));
    for (std::size_t i = 1; i < cmds.size(); ++i) {
        ASSERT_EQ(cmds[i].wheel_speeds.size(), 2u);
        for (double w : cmds[i].wheel_speeds) EXPECT_LE(std::abs(w), wmax);
    }
}

TEST(GetCommands, SslZeroActionIsNullCommand) {
    auto env = make_ssl_goto_ball();
    env->reset(0);
    const auto cmds = env->get_commands({{0.0, 0.0, 0.0, 0.0, 0.0}});
    ASSERT_EQ(cmds.size(), 1u);
    EXPECT_EQ(cmds[0].vx, 0.0);
    EXPECT_EQ(cmds[0].vy, 0.0);
    EXPECT_EQ(cmds[0].vtheta, 0.0);
    EXPECT_EQ(cmds[0].kick_power, 0.0);
    EXPECT_FALSE(cmds[0].dribbler_on);
    EXPECT_TRUE(cmds[0].wheel_speeds.empty());
}

TEST(GetCommands, SslActionScaling) {
    auto env = make_ssl_goto_ball();
    env->reset(0);
    const auto cmds = env->get_commands({{0.5, -1.0, 0.25, 0.7, 0.1}});
    EXPECT_DOUBLE_EQ(cmds[0].vx, 1.0);
    EXPECT_DOUBLE_EQ(cmds[0].vy, -2.0);
    EXPECT_DOUBLE_EQ(cmds[0].vtheta, 90.0);
    EXPECT_DOUBLE_EQ(cmds[0].kick_power, 0.7);
    EXPECT_TRUE(cmds[0].dribbler_on);
    const auto neg = env->get_commands({{0.0, 0.0, 0.0, -0.5, -0.1}});
    EXPECT_EQ(neg[0].kick_power, 0.0);
    EXPECT_FALSE(neg[0].dribbler_on);
}

TEST(GetCommands, MultiAgentOneCommandPerRobot) {
    auto env = make_vss_multi();
    env->reset(0);
    const auto cmds = env->get_commands({{1.0, 1.0}, {-1.0, -1.0}, {0.5, -0.5}});
    ASSERT_EQ(cmds.size(), 6u);
    const double wmax = env->spec().field.max_wheel_rad_s;
    EXPECT_EQ(cmds[1].wheel_speeds, (std::vector<double>{-wmax, -wmax}));
    EXPECT_EQ(cmds[2].wheel_speeds, (std::vector<double>{0.5 * wmax, -0.5 * wmax}));
}

TEST(Observation, Normalization) {
    auto env = make_ssl_goto_ball();
    const Field& f = env->spec().field;
    Frame frame;
    frame.put(robot_at(f, TeamColor::Blue, 0, f.half_length(), 0.0, 90.0));
    const auto obs = env->frame_to_observations(frame);
    const auto& row = obs[0];
    for (int i = 0; i < 4; ++i) EXPECT_EQ(row[i], 0.0);
    EXPECT_EQ(row[4], 1.0);
    EXPECT_EQ(row[5], 0.0);
    EXPECT_DOUBLE_EQ(row[6], 1.0);
    EXPECT_NEAR(row[7], 0.0, 1e-15);
}

TEST(Observation, MultiAgentRowsAreSelfCentric) {
    auto env = make_vss_multi();
    env->reset(3);
    const Frame& frame = env->frame();
    const auto obs = env->frame_to_observations(frame);
    const Field& f = env->spec().field;
    for (int agent = 0; agent < 3; ++agent) {
        const Robot& self = get_robot(frame, TeamColor::Blue, agent);
        EXPECT_DOUBLE_EQ(obs[agent][4], self.x / f.half_length());
        EXPECT_DOUBLE_EQ(obs[agent][5], self.y / f.half_width());
        EXPECT_EQ(std::vector<double>(obs[agent].begin(), obs[agent].begin() + 4),
                  std::vector<double>(obs[0].begin(), obs[0].begin() + 4));
        // Yellow robots close every row in the same order.
        EXPECT_EQ(std::vector<double>(obs[agent].end() - 21, obs[agent].end()),
                  std::vector<double>(obs[0].end() - 21, obs[0].end()));
    }
}

TEST(Timeout, GoallessVsssEndsAtStep1200) {
    auto env = make_vss_single();
    // Zero wheels for the agent; OU opponents may score, so search for a goalless seed.
    for (std::uint64_t seed = 0;; ++seed) {
        ASSERT_LT(seed, 50u);
        env->reset(seed);
        StepResult r;
        int steps = 0;
        do {
            r = env->step(Action{{0.0, 0.0}});
            ++steps;
        } while (!r.done);
        if (*r.info.cause != Cause::Timeout) continue;
        EXPECT_EQ(steps, 1200);
        EXPECT_EQ(r.info.metrics.at("goal_score"), 0.0);
        EXPECT_DOUBLE_EQ(r.info.sim_time, 30.0);
        break;
    }
}

}  // namespace
}  // namespace rsoccer
