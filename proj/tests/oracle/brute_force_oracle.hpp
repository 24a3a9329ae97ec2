#pragma once

// Independent Monte-Carlo reference for the randomized UCB rule.
//
// Simulates item by item (no batch aggregation, no invariant scaling, no
// library code) with the standard library's engine and distributions, and
// measures the regret directly as the shortfall of realized mean income
// against the best arm. Used only by tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

struct OracleResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t reps = 0;
};

// Per-step regret sum, scaled by sqrt(D*N), averaged over reps.
// m_l = base + drift_l * sqrt(D/N), one decision per item.
inline OracleResult brute_force_scaled_loss(double a, const std::vector<double>& drift,
                                            int horizon, std::int64_t reps,
                                            std::uint64_t seed, double base = 0.0,
                                            double variance = 1.0) {
    const int arms = static_cast<int>(drift.size());
    std::vector<double> mu(arms);
    for (int l = 0; l < arms; ++l) {
        mu[l] = base + drift[l] * std::sqrt(variance / horizon);
    }
    const double best = *std::max_element(mu.begin(), mu.end());
    const double sd = std::sqrt(variance);

    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);

    double total = 0.0, total_sq = 0.0;
    std::vector<long> pulls(arms);
    std::vector<double> income(arms);
    for (std::int64_t r = 0; r < reps; ++r) {
        std::fill(pulls.begin(), pulls.end(), 0L);
        std::fill(income.begin(), income.end(), 0.0);
        double gap_sum = 0.0;
        for (int n = 0; n < horizon; ++n) {
            int pick = 0;
            if (n < arms) {
                pick = n;
            } else {
                double top = -INFINITY;
                for (int l = 0; l < arms; ++l) {
                    double u = income[l] / pulls[l] +
                               a * sd / std::sqrt(static_cast<double>(pulls[l])) * (2.0 + expo(eng));
                    if (u > top) {
                        top = u;
                        pick = l;
                    }
                }
            }
            income[pick] += mu[pick] + sd * gauss(eng);
            pulls[pick] += 1;
            gap_sum += best - mu[pick];
        }
        double scaled = gap_sum / std::sqrt(variance * horizon);
        total += scaled;
        total_sq += scaled * scaled;
    }
    OracleResult out;
    out.reps = reps;
    out.mean = total / reps;
    double var = (total_sq - reps * out.mean * out.mean) / (reps - 1);
    out.stderr_ = std::sqrt(std::max(var, 0.0) / reps);
    return out;
}

}  // namespace oracle
