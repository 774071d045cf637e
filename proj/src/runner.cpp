// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/runner.hpp"

#include <fstream>
#include <memory>
#include <random>

#include "rsoccer/ou_noise.hpp"

namespace rsoccer {

namespace {

Action zeros(const EnvSpec& spec) {
    return Action(static_cast<std::size_t>(spec.n_controlled),
                  std::vector<double>(static_cast<std::size_t>(spec.action_size_per_agent), 0.0));
}

}  // namespace

Policy zero_policy(const EnvSpec& spec) {
    return [a = zeros(spec)](const Observation&) { return a; };
}

Policy random_policy(const EnvSpec& spec, std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng, a = zeros(spec)](const Observation&) mutable {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& row : a) {
            for (double& v : row) v = u(*rng);
        }
        return a;
    };
}

Policy ou_policy(const EnvSpec& spec, std::uint64_t seed) {
    auto states = std::make_shared<std::vector<OUState>>();
    std::mt19937_64 seeder(seed);
    for (int i = 0; i < spec.n_controlled; ++i) {
        states->push_back(
            OUState::make(static_cast<std::size_t>(spec.action_size_per_agent), seeder(), spec.sim_config.control_dt));
    }
    return [states, a = zeros(spec)](const Observation&) mutable {
        for (std::size_t i = 0; i < a.size(); ++i) ou_advance((*states)[i], a[i]);
        return a;
    };
}

Policy replay_policy(const EnvSpec& spec, std::vector<Action> actions) {
    auto queue = std::make_shared<std::vector<Action>>(std::move(actions));
    auto next = std::make_shared<std::size_t>(0);
    return [queue, next, z = zeros(spec)](const Observation&) {
        return *next < queue->size() ? (*queue)[(*next)++] : z;
    };
}

nlohmann::json EpisodeOutcome::to_json() const {
    nlohmann::json j;
    j["env"] = env;
    j["seed"] = seed;
    j["steps"] = steps;
    j["cause"] = cause ? nlohmann::json(std::string(to_string(*cause))) : nlohmann::json(nullptr);
    j["metrics"] = metrics;
    j["total_reward"] = total_reward;
    return j;
}

EpisodeRecord run_episode(Environment& env, const Policy& policy, std::uint64_t seed) {
    EpisodeRecord rec;
    rec.outcome.env = env.spec().id;
    rec.outcome.seed = seed;
    rec.outcome.total_reward.assign(static_cast<std::size_t>(env.spec().n_controlled), 0.0);
    Observation obs = env.reset(seed);
    rec.frames.push_back(env.frame());
    StepResult r;
    do {
        Action a = policy(obs);
        r = env.step(a);
        rec.actions.push_back(std::move(a));
        rec.frames.push_back(env.frame());
        for (std::size_t i = 0; i < r.reward.size(); ++i) rec.outcome.total_reward[i] += r.reward[i];
        obs = std::move(r.observation);
    } while (!r.done);
    rec.outcome.steps = static_cast<int>(rec.actions.size());
    rec.outcome.cause = r.info.cause;
    rec.outcome.metrics = r.info.metrics;
    return rec;
}

std::string trajectory_log(const std::vector<Frame>& frames) {
    std::string out;
    for (const Frame& f : frames) {
        out += frame_to_log_line(f);
        out += '\n';
    }
    return out;
}

void write_action_log(const std::filesystem::path& path, const std::vector<Action>& actions) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const Action& a : actions) out << nlohmann::json(a).dump() << '\n';
}

std::vector<Action> read_action_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<Action> actions;
    int line_number = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_number;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            // A flat array is a single-agent action.
            if (j.is_array() && !j.empty() && j.front().is_number()) {
                actions.push_back({j.get<std::vector<double>>()});
            } else {
                actions.push_back(j.get<Action>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_number, e.what());
        }
    }
    return actions;
}

}  // namespace rsoccer
