#pragma once

// Unit-horizon description of the batch UCB process.
//
// With t = k/K, t_l = k_l/K and eps = 1/K, the affine map
//
//     u = (U - M m) * sqrt(K / (M D))
//
// sends every concrete bound to
//
//     u_l(t) = d_l + S_l / t_l + a / sqrt(t_l) * (2 + zeta_l),
//
// where S_l accumulates sqrt(eps) * z over the batches given to arm l. The
// map is strictly increasing, so both processes choose the same arms; the
// invariant one depends only on (d, a, K) and the draws.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bucb/bandit_core.hpp"
#include "bucb/concrete_process.hpp"
#include "bucb/detail/compensated_sum.hpp"
#include "bucb/errors.hpp"
#include "bucb/rng.hpp"
#include "bucb/ucb_policy.hpp"

namespace bucb {

struct InvariantState {
    std::size_t step = 0;               ///< batches processed (k)
    double epsilon = 0.0;               ///< 1/K
    double t = 0.0;                     ///< k * eps
    std::vector<double> t_l;            ///< k_l * eps
    std::vector<std::size_t> counts;    ///< k_l
    std::vector<double> noise_sums;     ///< sum of sqrt(eps) z per arm (leading part)
    std::vector<double> noise_carry;    ///< compensation terms of noise_sums

    static InvariantState initial(std::size_t arms, std::size_t batches) {
        InvariantState s;
        s.epsilon = 1.0 / static_cast<double>(batches);
        s.t_l.assign(arms, 0.0);
        s.counts.assign(arms, 0);
        s.noise_sums.assign(arms, 0.0);
        s.noise_carry.assign(arms, 0.0);
        return s;
    }

    std::size_t arms() const noexcept { return t_l.size(); }
    double noise(std::size_t arm) const noexcept { return noise_sums[arm] + noise_carry[arm]; }
    bool initialized() const noexcept { return step >= arms(); }

    /// Records one batch of `arm` with standard-normal draw z.
    void advance(std::size_t arm, double z) {
        if (arm >= arms()) throw InputError("arm index out of range");
        step += 1;
        counts[arm] += 1;
        t = static_cast<double>(step) * epsilon;
        t_l[arm] = static_cast<double>(counts[arm]) * epsilon;
        detail::neumaier_add(noise_sums[arm], noise_carry[arm], std::sqrt(epsilon) * z);
    }
};

namespace detail {
inline double invariant_bound_unchecked(const InvariantState& state, std::size_t arm, double drift,
                                        double a, double zeta) noexcept {
    const double tl = state.t_l[arm];
    return drift + state.noise(arm) / tl + a / std::sqrt(tl) * (2.0 + zeta);
}
}  // namespace detail

inline double invariant_bound(std::size_t arm, const InvariantState& state, std::span<const double> d,
                              double a, double zeta, double epsilon) {
    if (arm >= state.arms() || arm >= d.size()) throw InputError("arm index out of range");
    if (!(state.t_l[arm] >= epsilon)) {
        throw PreconditionError("invariant bound is undefined before the arm's first pull");
    }
    if (!(zeta >= 0.0)) throw InputError("perturbation must be >= 0");
    return detail::invariant_bound_unchecked(state, arm, d[arm], a, zeta);
}

/// Affine map from a concrete bound to the unit-horizon scale.
inline double transform_bound(double U, double m, std::size_t M, double D, std::size_t K) {
    if (!(D > 0.0)) throw ConfigError("variance D must be positive");
    if (M < 1 || K < 1) throw ConfigError("M and K must be >= 1");
    const double Md = static_cast<double>(M);
    return (U - Md * m) * std::sqrt(static_cast<double>(K) / (Md * D));
}

struct InvariantEpisode {
    std::vector<std::size_t> arms;   ///< chosen arm per batch
    std::vector<double> t_l;         ///< final occupation fractions
};

/// Runs the invariant process for K batches. Observer signature matches
/// simulate_concrete.
template <NoiseSource Streams, class Observer = NoObserver>
InvariantEpisode run_invariant_episode(std::span<const double> d, double a, std::size_t K, Streams& streams,
                                       Observer&& observer = {}) {
    const std::size_t J = d.size();
    if (J < 2) throw ConfigError("at least two arms are required");
    if (K < J + 1) throw ConfigError("batch count K must be >= J + 1");
    if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("exploration coefficient a must be >= 0");

    InvariantState state = InvariantState::initial(J, K);
    InvariantEpisode out;
    out.arms.reserve(K);
    std::vector<double> zeta(J);
    std::vector<double> bounds(J);

    for (std::size_t batch = 0; batch < K; ++batch) {
        for (auto& x : zeta) x = streams.perturbation();
        std::size_t arm = batch;
        std::span<const double> shown;
        if (state.initialized()) {
            for (std::size_t l = 0; l < J; ++l) {
                bounds[l] = detail::invariant_bound_unchecked(state, l, d[l], a, zeta[l]);
            }
            arm = detail::argmax_lowest(bounds);
            shown = bounds;
        }
        observer(batch, arm, shown);
        state.advance(arm, streams.standard_normal());
        out.arms.push_back(arm);
    }
    out.t_l = state.t_l;
    return out;
}

// ---------------------------------------------------------------------------
// Stream-coupled comparison

/// Per-batch record of an episode on the unit-horizon scale. `bounds` holds
/// J values per batch, NaN during round-robin.
struct EpisodeTrace {
    std::size_t arms_count = 0;
    std::vector<std::size_t> arms;
    std::vector<double> bounds;

    std::span<const double> bounds_at(std::size_t batch) const {
        return std::span<const double>(bounds).subspan(batch * arms_count, arms_count);
    }
};

struct ConcreteSetting {
    std::size_t M = 1;
    double D = 1.0;
    double m = 0.0;
    std::optional<double> a;   ///< overrides the shared coefficient when set
};

struct TraceComparison {
    bool match = true;
    double max_deviation = 0.0;
    std::optional<std::size_t> first_divergent_batch;
};

inline constexpr double kCouplingTolerance = 1e-9;

/// Compares two traces batch by batch; stops at the first arm mismatch or
/// bound deviation above `tolerance`.
inline TraceComparison compare_traces(const EpisodeTrace& reference, const EpisodeTrace& other,
                                      double tolerance = kCouplingTolerance) {
    TraceComparison cmp;
    const std::size_t n = std::min(reference.arms.size(), other.arms.size());
    for (std::size_t b = 0; b < n; ++b) {
        if (reference.arms[b] != other.arms[b]) {
            cmp.match = false;
            cmp.first_divergent_batch = b;
            return cmp;
        }
        auto r = reference.bounds_at(b);
        auto o = other.bounds_at(b);
        for (std::size_t l = 0; l < r.size(); ++l) {
            if (std::isnan(r[l]) && std::isnan(o[l])) continue;
            const double dev = std::fabs(r[l] - o[l]);
            if (!(dev <= tolerance)) {
                cmp.max_deviation = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
                cmp.match = false;
                cmp.first_divergent_batch = b;
                return cmp;
            }
            cmp.max_deviation = std::max(cmp.max_deviation, dev);
        }
    }
    if (reference.arms.size() != other.arms.size()) {
        cmp.match = false;
        cmp.first_divergent_batch = n;
    }
    return cmp;
}

inline EpisodeTrace trace_invariant(std::span<const double> d, double a, std::size_t K, std::uint64_t seed) {
    EpisodeTrace tr;
    tr.arms_count = d.size();
    tr.bounds.assign(K * d.size(), std::numeric_limits<double>::quiet_NaN());
    SeededStreams streams(seed);
    auto ep = run_invariant_episode(d, a, K, streams,
                                    [&](std::size_t b, std::size_t, std::span<const double> bounds) {
                                        std::copy(bounds.begin(), bounds.end(),
                                                  tr.bounds.begin() + b * tr.arms_count);
                                    });
    tr.arms = std::move(ep.arms);
    return tr;
}

inline void validate_setting(const ConcreteSetting& setting) {
    if (setting.M < 1) throw ConfigError("setting batch size M must be >= 1");
    if (!(setting.D > 0.0) || !std::isfinite(setting.D)) throw ConfigError("setting variance D must be positive");
    if (!std::isfinite(setting.m)) throw ConfigError("setting baseline m must be finite");
    if (setting.a && (!(*setting.a >= 0.0) || !std::isfinite(*setting.a))) {
        throw ConfigError("setting coefficient a must be >= 0");
    }
}

/// Concrete episode with every bound mapped through transform_bound.
inline EpisodeTrace trace_concrete_transformed(std::span<const double> d, double a, std::size_t K,
                                               const ConcreteSetting& setting, std::uint64_t seed) {
    validate_setting(setting);
    ThetaParams theta{setting.m, setting.D, std::vector<double>(d.begin(), d.end())};
    theta.C = std::max(theta.C, std::ranges::max(theta.d, {}, [](double x) { return std::fabs(x); }));
    const BatchGrid grid = BatchGrid::from_batches(d.size(), setting.M, K);
    const PolicyConfig config{setting.a.value_or(a), d.size(), setting.M, setting.D};

    EpisodeTrace tr;
    tr.arms_count = d.size();
    tr.arms.reserve(K);
    tr.bounds.assign(K * d.size(), std::numeric_limits<double>::quiet_NaN());
    SeededStreams streams(seed);
    simulate_concrete(theta, grid, config, streams,
                      [&](std::size_t b, std::size_t arm, std::span<const double> bounds) {
                          tr.arms.push_back(arm);
                          for (std::size_t l = 0; l < bounds.size(); ++l) {
                              tr.bounds[b * tr.arms_count + l] =
                                  transform_bound(bounds[l], setting.m, setting.M, setting.D, K);
                          }
                      });
    return tr;
}

struct CoupleReport {
    bool pass = true;
    double max_deviation = 0.0;
    std::optional<std::size_t> first_divergent_batch;
    std::optional<std::size_t> failing_setting;
    std::size_t settings_checked = 0;

    std::string summary() const {
        std::ostringstream os;
        os.precision(3);
        if (pass) {
            os << "PASS: " << settings_checked << " setting(s) coupled, max deviation "
               << std::scientific << max_deviation;
        } else {
            os << "FAIL: setting " << (failing_setting ? *failing_setting + 1 : 0) << " diverges at batch "
               << (first_divergent_batch ? *first_divergent_batch + 1 : 0);
        }
        return os.str();
    }
};

/// Runs the invariant process and every concrete setting on the streams of
/// `master_seed` and checks that all arm sequences agree and every
/// transformed concrete bound matches its invariant counterpart.
inline CoupleReport couple_check(std::span<const double> d, double a, std::size_t K,
                                 std::span<const ConcreteSetting> settings, std::uint64_t master_seed,
                                 double tolerance = kCouplingTolerance) {
    for (const auto& s : settings) validate_setting(s);
    const EpisodeTrace reference = trace_invariant(d, a, K, master_seed);
    CoupleReport report;
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const EpisodeTrace concrete = trace_concrete_transformed(d, a, K, settings[i], master_seed);
        const TraceComparison cmp = compare_traces(reference, concrete, tolerance);
        report.settings_checked += 1;
        if (!cmp.match) {
            report.pass = false;
            report.max_deviation = std::max(report.max_deviation, cmp.max_deviation);
            report.first_divergent_batch = cmp.first_divergent_batch;
            report.failing_setting = i;
            return report;
        }
        report.max_deviation = std::max(report.max_deviation, cmp.max_deviation);
    }
    return report;
}

}  // namespace bucb
