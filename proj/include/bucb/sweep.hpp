#pragma once

// Drift sweeps: one loss estimate per point of a drift grid.
//
// The default two-arm mode takes d_1 = d/2, d_2 = -d/2 for each gap d on an
// arithmetic grid; the explicit mode takes full drift vectors. Point i is
// estimated with master seed mix_seed(master_seed, i).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bucb/bandit_core.hpp"
#include "bucb/errors.hpp"
#include "bucb/mc_harness.hpp"
#include "bucb/rng.hpp"

namespace bucb {

struct GapGrid {
    double d_min = 0.0;
    double d_max = 8.0;
    double d_step = 0.25;
};

/// Explicit drift vectors, ordered by strictly increasing spread max(d)-min(d).
struct DriftList {
    std::vector<std::vector<double>> vectors;
};

struct SweepConfig {
    double a = 1.0 / 3.0;
    std::size_t J = 2;
    std::size_t M = 1;
    std::optional<std::size_t> N;   ///< horizon; exactly one of N, K
    std::optional<std::size_t> K;   ///< batch count
    std::variant<GapGrid, DriftList> drifts = GapGrid{};
    std::size_t reps = 10000;
    std::uint64_t master_seed = 1;
    std::size_t workers = 0;        ///< 0 = hardware concurrency
    std::string out_path;
    double m = 0.0;
    double D = 1.0;
    double C = 10.0;

    BatchGrid grid() const {
        if (N.has_value() == K.has_value()) throw ConfigError("give exactly one of horizon N or batch count K");
        return N ? BatchGrid::from_horizon(J, M, *N) : BatchGrid::from_batches(J, M, *K);
    }
};

/// Spread of a drift vector; the sweep coordinate of explicit points.
inline double drift_spread(const std::vector<double>& d) {
    if (d.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    return *hi - *lo;
}

/// Gap values d_min + i*d_step up to d_max (with a 1e-9 relative allowance
/// for rounding of the step count).
inline std::vector<double> gap_points(const GapGrid& g) {
    if (!std::isfinite(g.d_min) || !std::isfinite(g.d_max) || !std::isfinite(g.d_step)) {
        throw ConfigError("gap grid bounds must be finite");
    }
    if (!(g.d_step > 0.0)) throw ConfigError("d-step must be > 0");
    if (!(g.d_min <= g.d_max)) throw ConfigError("d-min must not exceed d-max");
    const double span = (g.d_max - g.d_min) / g.d_step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = g.d_min + static_cast<double>(i) * g.d_step;
    return pts;
}

struct SweepPoint {
    double d = 0.0;
    ThetaParams theta;
};

/// Every point of the sweep, validated, in sweep order.
inline std::vector<SweepPoint> sweep_points(const SweepConfig& config) {
    std::vector<SweepPoint> out;
    if (const auto* g = std::get_if<GapGrid>(&config.drifts)) {
        if (config.J != 2) throw ConfigError("the symmetric gap grid needs exactly two arms; use explicit drifts");
        for (double d : gap_points(*g)) {
            out.push_back({d, ThetaParams{config.m, config.D, {0.5 * d, -0.5 * d}, config.C}});
        }
    } else {
        const auto& list = std::get<DriftList>(config.drifts);
        for (const auto& v : list.vectors) {
            if (v.size() != config.J) throw ConfigError("drift vector length differs from arm count J");
            const double spread = drift_spread(v);
            if (!out.empty() && !(spread > out.back().d)) {
                throw ConfigError("explicit drift vectors must have strictly increasing spread");
            }
            out.push_back({spread, ThetaParams{config.m, config.D, v, config.C}});
        }
    }
    for (const auto& p : out) p.theta.validate();
    return out;
}

struct CurvePoint {
    double d = 0.0;
    LossEstimate estimate;
};

struct LossCurve {
    std::vector<CurvePoint> points;
};

inline LossCurve run_sweep(const SweepConfig& config) {
    const BatchGrid grid = config.grid();
    PolicyConfig policy{config.a, config.J, config.M, config.D};
    policy.validate();
    if (config.reps < 2) throw ConfigError("at least two replications are required");
    const std::vector<SweepPoint> points = sweep_points(config);

    LossCurve curve;
    curve.points.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        curve.points.push_back({points[i].d, estimate_loss(points[i].theta, grid, policy, config.reps,
                                                           mix_seed(config.master_seed, i), config.workers)});
    }
    return curve;
}

}  // namespace bucb
