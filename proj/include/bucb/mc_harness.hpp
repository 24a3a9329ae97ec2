#pragma once

// Monte-Carlo estimation of the scaled loss
//
//     l = sum_l (d_max - d_l) * E[k_l / K],
//
// i.e. the expected regret divided by sqrt(D N). Replication r of an
// estimate with master seed s runs on streams seeded by mix_seed(s, r), and
// losses are reduced in replication order, so results do not depend on the
// number of workers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bucb/bandit_core.hpp"
#include "bucb/concrete_process.hpp"
#include "bucb/detail/compensated_sum.hpp"
#include "bucb/detail/parallel.hpp"
#include "bucb/errors.hpp"
#include "bucb/rng.hpp"
#include "bucb/ucb_policy.hpp"

namespace bucb {

struct ReplicationOutcome {
    std::vector<std::size_t> final_counts;
    double scaled_loss = 0.0;
    std::uint64_t rep_index = 0;

    bool operator==(const ReplicationOutcome&) const = default;
};

struct ConfigEcho {
    double a = 0.0;
    std::size_t J = 0;
    std::size_t M = 0;
    std::size_t K = 0;
    std::size_t N = 0;
    std::vector<double> d;
    std::uint64_t master_seed = 0;
};

struct LossEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t reps = 0;
    ConfigEcho config;
};

/// Realized scaled loss of one replication from its final pull counts.
inline double scaled_loss(std::span<const std::size_t> final_counts, std::span<const double> d, std::size_t K) {
    if (final_counts.size() != d.size()) throw InputError("count and drift vectors differ in length");
    if (d.empty()) throw InputError("empty drift vector");
    if (K == 0) throw InputError("batch count must be positive");
    std::size_t total = 0;
    for (auto c : final_counts) total += c;
    if (total != K) throw InputError("pull counts must sum to K");

    const double best = *std::max_element(d.begin(), d.end());
    const double Kd = static_cast<double>(K);
    double loss = 0.0;
    for (std::size_t l = 0; l < d.size(); ++l) {
        loss += (best - d[l]) * (static_cast<double>(final_counts[l]) / Kd);
    }
    return loss;
}

/// Expected loss in income units from its scaled form: sqrt(D N) * scaled.
inline double unscale_loss(double scaled, double D, std::size_t N) {
    if (!(D > 0.0)) throw ConfigError("variance D must be positive");
    if (N < 1) throw ConfigError("horizon N must be >= 1");
    return std::sqrt(D * static_cast<double>(N)) * scaled;
}

template <NoiseSource Streams>
ReplicationOutcome run_episode_with(const ThetaParams& theta, const BatchGrid& grid, const PolicyConfig& config,
                                    Streams& streams, std::uint64_t rep_index = 0) {
    PolicyState final_state = simulate_concrete(theta, grid, config, streams);
    ReplicationOutcome out;
    out.scaled_loss = scaled_loss(final_state.counts, theta.d, grid.batches());
    out.final_counts = std::move(final_state.counts);
    out.rep_index = rep_index;
    return out;
}

/// One replication driven by SeededStreams(rep_seed).
inline ReplicationOutcome run_episode(const ThetaParams& theta, const BatchGrid& grid, const PolicyConfig& config,
                                      std::uint64_t rep_seed) {
    SeededStreams streams(rep_seed);
    return run_episode_with(theta, grid, config, streams);
}

/// Builds the policy configuration implied by theta and grid.
inline PolicyConfig policy_for(double a, const ThetaParams& theta, const BatchGrid& grid) {
    return PolicyConfig{a, grid.arms(), grid.batch_size(), theta.D};
}

/// Scaled losses of replications 0..reps-1, indexed by replication.
inline std::vector<double> replicate_losses(const ThetaParams& theta, const BatchGrid& grid,
                                            const PolicyConfig& config, std::size_t reps,
                                            std::uint64_t master_seed, std::size_t workers = 0) {
    detail::check_compatible(theta, grid);
    config.validate();
    std::vector<double> losses(reps);
    detail::parallel_for(reps, workers, [&](std::size_t r) {
        SeededStreams streams(mix_seed(master_seed, r));
        losses[r] = run_episode_with(theta, grid, config, streams, r).scaled_loss;
    });
    return losses;
}

/// Mean and standard error of replicated scaled losses.
inline LossEstimate estimate_loss(const ThetaParams& theta, const BatchGrid& grid, const PolicyConfig& config,
                                  std::size_t reps, std::uint64_t master_seed, std::size_t workers = 0) {
    if (reps < 2) throw ConfigError("at least two replications are required");
    const std::vector<double> losses = replicate_losses(theta, grid, config, reps, master_seed, workers);

    LossEstimate est;
    est.reps = reps;
    est.config = ConfigEcho{config.a, grid.arms(), grid.batch_size(), grid.batches(), grid.horizon(),
                            theta.d, master_seed};

    const bool constant = std::all_of(losses.begin(), losses.end(), [&](double x) { return x == losses[0]; });
    if (constant) {
        est.mean = losses[0];
        est.std_error = 0.0;
        return est;
    }

    detail::CompensatedSum sum;
    for (double x : losses) sum.add(x);
    const double n = static_cast<double>(reps);
    est.mean = sum.value() / n;

    detail::CompensatedSum sq;
    for (double x : losses) sq.add((x - est.mean) * (x - est.mean));
    est.std_error = std::sqrt(sq.value() / (n - 1.0) / n);
    return est;
}

}  // namespace bucb
