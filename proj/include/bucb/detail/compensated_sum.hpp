#pragma once

#include <cmath>

namespace bucb::detail {

/// Neumaier summation step: adds x into (sum, carry).
inline void neumaier_add(double& sum, double& carry, double x) noexcept {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
        carry += (sum - t) + x;
    } else {
        carry += (x - t) + sum;
    }
    sum = t;
}

class CompensatedSum {
public:
    void add(double x) noexcept { neumaier_add(sum_, carry_, x); }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace bucb::detail
