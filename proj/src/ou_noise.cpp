// SPDX-License-Identifier: Apache-2.0
#include "rsoccer/ou_noise.hpp"

#include <algorithm>
#include <cmath>

namespace rsoccer {

OUState OUState::make(std::size_t dims, std::uint64_t seed, double dt, double theta, double sigma) {
    OUState s;
    s.x.assign(dims, 0.0);
    s.mu.assign(dims, 0.0);
    s.theta = theta;
    s.sigma = sigma;
    s.dt = dt;
    s.rng.seed(seed);
    return s;
}

double OUState::stationary_variance() const {
    const double decay = 1.0 - theta * dt;
    return sigma * sigma * dt / (1.0 - decay * decay);
}

void ou_advance(OUState& state, std::vector<double>& action) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double noise_scale = state.sigma * std::sqrt(state.dt);
    action.resize(state.x.size());
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        const double z = normal(state.rng);
        state.x[i] += state.theta * (state.mu[i] - state.x[i]) * state.dt + noise_scale * z;
        action[i] = std::clamp(state.x[i], -1.0, 1.0);
    }
}

OUSample ou_sample(OUState state) {
    OUSample out;
    ou_advance(state, out.action);
    out.state = std::move(state);
    return out;
}

}  // namespace rsoccer
