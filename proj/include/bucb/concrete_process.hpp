#pragma once

// One episode of the concrete process: K batches on the batch grid, driven by
// the UCB rule. Each batch draws J perturbations (arm order) and then one
// standard normal for the chosen arm; the invariant process consumes the same
// draws in the same order.

#include <cstddef>
#include <span>
#include <vector>

#include "bucb/bandit_core.hpp"
#include "bucb/rng.hpp"
#include "bucb/ucb_policy.hpp"

namespace bucb {

/// Observer that ignores everything.
struct NoObserver {
    constexpr void operator()(std::size_t, std::size_t, std::span<const double>) const noexcept {}
};

/// Runs one concrete episode. `observer(batch, arm, bounds)` is called before
/// each update; `bounds` is empty during the round-robin phase.
template <NoiseSource Streams, class Observer = NoObserver>
PolicyState simulate_concrete(const ThetaParams& theta, const BatchGrid& grid, const PolicyConfig& config,
                              Streams& streams, Observer&& observer = {}) {
    const std::vector<double> means = arm_means(theta, grid);
    config.validate();
    if (config.J != grid.arms() || config.M != grid.batch_size() || config.D != theta.D) {
        throw ConfigError("policy configuration disagrees with theta/grid (J, M, D)");
    }

    const std::size_t J = grid.arms();
    const double width = config.width_scale();
    PolicyState state = PolicyState::initial(J);
    std::vector<double> zeta(J);
    std::vector<double> bounds(J);

    for (std::size_t batch = 0; batch < grid.batches(); ++batch) {
        for (auto& x : zeta) x = streams.perturbation();
        std::size_t arm = batch;
        std::span<const double> shown;
        if (state.initialized()) {
            for (std::size_t l = 0; l < J; ++l) {
                bounds[l] = detail::ucb_bound_unchecked(state, l, width, zeta[l]);
            }
            arm = detail::argmax_lowest(bounds);
            shown = bounds;
        }
        observer(batch, arm, shown);
        const double z = streams.standard_normal();
        apply_update(state, arm, batch_income(means[arm], grid.batch_size(), theta.D, z));
    }
    return state;
}

}  // namespace bucb
