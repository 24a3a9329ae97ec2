#pragma once

// Gaussian bandit in the close-distributions regime:
//   m_l = m + d_l * sqrt(D / N),   |d_l| <= C,
// simulated one batch of M items at a time. A batch of arm l contributes
// M * m_l + sqrt(M * D) * z to the cumulative income, which has the law of
// M independent N(m_l, D) incomes.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bucb/errors.hpp"

namespace bucb {

struct ThetaParams {
    double m = 0.0;          ///< baseline income per step
    double D = 1.0;          ///< per-step income variance
    std::vector<double> d;   ///< invariant drifts, one per arm
    double C = 10.0;         ///< drift bound, validation only

    std::size_t arms() const noexcept { return d.size(); }

    void validate() const {
        if (!(D > 0.0) || !std::isfinite(D)) throw ConfigError("variance D must be positive and finite");
        if (!std::isfinite(m)) throw ConfigError("baseline m must be finite");
        if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("drift bound C must be positive and finite");
        if (d.size() < 2) throw ConfigError("at least two arms are required");
        for (std::size_t l = 0; l < d.size(); ++l) {
            if (!(std::fabs(d[l]) <= C)) {
                throw ConfigError("drift d[" + std::to_string(l) + "] exceeds the bound C");
            }
        }
    }
};

/// Horizon bookkeeping: J arms, K batches of M items, N = M*K.
class BatchGrid {
public:
    static BatchGrid from_batches(std::size_t arms, std::size_t batch_size, std::size_t batches) {
        if (arms < 2) throw ConfigError("at least two arms are required");
        if (batch_size < 1) throw ConfigError("batch size M must be >= 1");
        if (batches < arms + 1) {
            throw ConfigError("batch count K must be >= J + 1 (K=" + std::to_string(batches) +
                              ", J=" + std::to_string(arms) + ")");
        }
        return BatchGrid(arms, batch_size, batches);
    }

    static BatchGrid from_horizon(std::size_t arms, std::size_t batch_size, std::size_t horizon) {
        if (batch_size < 1) throw ConfigError("batch size M must be >= 1");
        if (horizon % batch_size != 0) {
            throw ConfigError("horizon N must be a multiple of the batch size M");
        }
        return from_batches(arms, batch_size, horizon / batch_size);
    }

    std::size_t arms() const noexcept { return arms_; }
    std::size_t batch_size() const noexcept { return batch_size_; }
    std::size_t batches() const noexcept { return batches_; }
    std::size_t horizon() const noexcept { return batch_size_ * batches_; }
    double epsilon() const noexcept { return 1.0 / static_cast<double>(batches_); }

private:
    BatchGrid(std::size_t arms, std::size_t batch_size, std::size_t batches)
        : arms_(arms), batch_size_(batch_size), batches_(batches) {}

    std::size_t arms_;
    std::size_t batch_size_;
    std::size_t batches_;
};

namespace detail {
inline void check_compatible(const ThetaParams& theta, const BatchGrid& grid) {
    theta.validate();
    if (theta.arms() != grid.arms()) throw ConfigError("drift vector length differs from arm count J");
}

inline double arm_mean(const ThetaParams& theta, const BatchGrid& grid, std::size_t arm) noexcept {
    return theta.m + theta.d[arm] * std::sqrt(theta.D / static_cast<double>(grid.horizon()));
}
}  // namespace detail

/// Per-step expected incomes m_l.
inline std::vector<double> arm_means(const ThetaParams& theta, const BatchGrid& grid) {
    detail::check_compatible(theta, grid);
    std::vector<double> out(grid.arms());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = detail::arm_mean(theta, grid, l);
    return out;
}

/// Batch-aggregate income for a known per-step mean.
inline double batch_income(double arm_mean, std::size_t batch_size, double D, double z) noexcept {
    const double M = static_cast<double>(batch_size);
    return M * arm_mean + std::sqrt(M * D) * z;
}

/// Batch-aggregate income of arm `arm` (0-based) given a standard-normal draw z.
inline double sample_batch_income(std::size_t arm, const ThetaParams& theta, const BatchGrid& grid,
                                  double z) {
    if (arm >= grid.arms() || arm >= theta.arms()) throw InputError("arm index out of range");
    return batch_income(detail::arm_mean(theta, grid, arm), grid.batch_size(), theta.D, z);
}

}  // namespace bucb
