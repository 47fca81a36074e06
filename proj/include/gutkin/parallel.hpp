#pragma once

#include <cstddef>
#include <functional>

namespace gutkin {

/// Worker count: GUTKIN_LAB_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls fn(i) for every i in [0, count). Each index is visited exactly once;
/// callers write results into per-index slots and reduce afterwards in index
/// order, so results do not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Neumaier-compensated running sum; order-dependent but deterministic.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace gutkin
