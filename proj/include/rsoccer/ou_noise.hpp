// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rsoccer {

/// Ornstein-Uhlenbeck process, one component per action dimension.
/// The state is kept unclamped; only emitted actions are clipped to [-1, 1].
struct OUState {
    std::vector<double> x;
    std::vector<double> mu;
    double theta = 0.15;
    double sigma = 0.2;
    double dt = 0.025;
    std::mt19937_64 rng;

    static OUState make(std::size_t dims, std::uint64_t seed, double dt = 0.025, double theta = 0.15,
                        double sigma = 0.2);

    /// Variance of the discrete process at stationarity.
    double stationary_variance() const;
};

struct OUSample {
    std::vector<double> action;
    OUState state;
};

/// x' = x + theta (mu - x) dt + sigma sqrt(dt) z.
OUSample ou_sample(OUState state);

/// In-place form of ou_sample; writes the clamped action into `action`.
void ou_advance(OUState& state, std::vector<double>& action);

}  // namespace rsoccer
