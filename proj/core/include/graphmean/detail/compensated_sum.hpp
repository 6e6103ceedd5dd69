#pragma once

#include <cmath>

namespace graphmean::detail {

// Neumaier-compensated accumulator; keeps distance sums deterministic to
// full precision regardless of how callers group the terms.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace graphmean::detail
