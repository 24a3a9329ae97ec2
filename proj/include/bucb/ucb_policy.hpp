#pragma once

// Randomized batch UCB rule.
//
// After k batches, arm l with k_l >= 1 pulls and cumulative income X_l has
// the upper bound
//
//     U_l(k) = X_l / k_l + a * sqrt(M * D) / sqrt(k_l) * (2 + zeta_l),
//
// with zeta_l a fresh standard exponential per arm per batch. The first J
// batches visit arms 0..J-1 in order; afterwards the arm with the largest
// bound is chosen, lowest index on ties. M = 1 gives the per-item rule.
//
// Arms are 0-based throughout the library.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bucb/detail/compensated_sum.hpp"
#include "bucb/errors.hpp"

namespace bucb {

struct PolicyConfig {
    double a = 1.0 / 3.0;       ///< exploration coefficient
    std::size_t J = 2;          ///< arm count
    std::size_t M = 1;          ///< batch size
    double D = 1.0;             ///< per-step income variance

    void validate() const {
        if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("exploration coefficient a must be >= 0");
        if (J < 2) throw ConfigError("at least two arms are required");
        if (M < 1) throw ConfigError("batch size M must be >= 1");
        if (!(D > 0.0) || !std::isfinite(D)) throw ConfigError("variance D must be positive and finite");
    }

    /// a = 0 degenerates to a greedy rule; callers should warn.
    bool exploration_disabled() const noexcept { return a == 0.0; }

    double width_scale() const noexcept { return a * std::sqrt(static_cast<double>(M) * D); }
};

struct PolicyState {
    std::size_t k = 0;                ///< batches processed
    std::vector<std::size_t> counts;  ///< k_l
    std::vector<double> sums;         ///< X_l (leading part of a compensated sum)
    std::vector<double> carry;        ///< compensation terms of X_l

    static PolicyState initial(std::size_t arms) {
        return PolicyState{0, std::vector<std::size_t>(arms, 0), std::vector<double>(arms, 0.0),
                           std::vector<double>(arms, 0.0)};
    }

    std::size_t arms() const noexcept { return counts.size(); }
    double income(std::size_t arm) const noexcept { return sums[arm] + carry[arm]; }
    bool initialized() const noexcept { return k >= counts.size(); }
};

/// Standard exponential variate by inversion. `u` must lie in (0, 1].
inline double sample_perturbation(double u) {
    if (!(u > 0.0 && u <= 1.0)) throw InputError("perturbation uniform draw must lie in (0,1]");
    return -std::log(u);
}

namespace detail {
inline double ucb_bound_unchecked(const PolicyState& state, std::size_t arm, double width_scale,
                                  double zeta) noexcept {
    const double pulls = static_cast<double>(state.counts[arm]);
    return state.income(arm) / pulls + width_scale / std::sqrt(pulls) * (2.0 + zeta);
}

/// Lowest index attaining the maximum.
inline std::size_t argmax_lowest(std::span<const double> values) noexcept {
    std::size_t best = 0;
    for (std::size_t l = 1; l < values.size(); ++l) {
        if (values[l] > values[best]) best = l;
    }
    return best;
}
}  // namespace detail

inline double ucb_bound(std::size_t arm, const PolicyState& state, const PolicyConfig& config,
                        double zeta) {
    if (arm >= state.arms()) throw InputError("arm index out of range");
    if (state.counts[arm] == 0) throw PreconditionError("UCB bound is undefined before the arm's first pull");
    if (!(zeta >= 0.0)) throw InputError("perturbation must be >= 0");
    return detail::ucb_bound_unchecked(state, arm, config.width_scale(), zeta);
}

/// Fills `out` with every arm's bound. Requires the initialization phase to be over.
inline void ucb_bounds(const PolicyState& state, const PolicyConfig& config,
                       std::span<const double> perturbations, std::span<double> out) {
    const double w = config.width_scale();
    for (std::size_t l = 0; l < state.arms(); ++l) {
        out[l] = detail::ucb_bound_unchecked(state, l, w, perturbations[l]);
    }
}

inline std::size_t select_arm(const PolicyState& state, const PolicyConfig& config,
                              std::span<const double> perturbations) {
    if (perturbations.size() != state.arms()) throw InputError("need one perturbation per arm");
    if (!state.initialized()) return state.k;
    std::vector<double> bounds(state.arms());
    for (std::size_t l = 0; l < state.arms(); ++l) {
        bounds[l] = ucb_bound(l, state, config, perturbations[l]);
    }
    return detail::argmax_lowest(bounds);
}

/// In-place form of update().
inline void apply_update(PolicyState& state, std::size_t arm, double batch_income) {
    if (arm >= state.arms()) throw InputError("arm index out of range");
    state.k += 1;
    state.counts[arm] += 1;
    detail::neumaier_add(state.sums[arm], state.carry[arm], batch_income);
}

inline PolicyState update(PolicyState state, std::size_t arm, double batch_income) {
    apply_update(state, arm, batch_income);
    return state;
}

}  // namespace bucb
