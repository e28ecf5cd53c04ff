#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "spinfib/grid.hpp"
#include "spinfib/integer.hpp"

namespace spinfib {

/// Summation regions over the square of cells (i, j) with 0 <= i, j <= n,
/// where i is the column coordinate and j the row coordinate.
enum class Region {
    LOWER_STRICT,    ///< strictly below the diagonal: j < i
    UPPER_INCL_DIAG, ///< diagonal and above: i <= j
    LOWER_INCL_DIAG, ///< diagonal and below: j <= i
    FULL_SQUARE      ///< the whole square
};

/// Cooperative cancellation token. Safe to cancel from another thread; the
/// running computation throws Cancelled at its next checkpoint.
class CancelFlag {
public:
    void cancel() noexcept { flag_.store(true, std::memory_order_relaxed); }
    bool cancelled() const noexcept { return flag_.load(std::memory_order_relaxed); }

private:
    std::atomic<bool> flag_{false};
};

/// sum_{k=1..n} k G(k) for the Fibonacci-rule sequence with G(0) = g0,
/// G(1) = g1, in closed form n G(n+2) - G(n+3) + G(3). Requires n >= 1.
Integer weighted_gfs_sum_closed(const Integer& g0, const Integer& g1, std::int64_t n);

/// Sum of the unit-seed grid over the triangle i <= j <= m, in closed form
/// (2/5) (m L(m+3) - L(m+4) + 2 F(m+2)) + 2 with the division checked exact.
Integer triangle_sum_closed(std::int64_t m);

/// Sum of the unit-seed grid over the full square [0..m]^2, in closed form
/// (4/5) (m L(m+3) - L(m+4) + 2 F(m+2)) - F(m+2) + 5, division checked.
Integer square_sum_closed(std::int64_t m);

/// Region sum of the grid seeded by s, streamed one diagonal at a time so at
/// most O(n) big integers are alive. Checks `cancel` once per diagonal.
Integer region_sum(const SpinSeeds& s, Region region, std::int64_t n,
                   BoundaryConvention conv = BoundaryConvention::B_WINS,
                   const CancelFlag* cancel = nullptr);

/// The sums region_sum(s, region, k) for k = 0..count-1, computed by an
/// independent row-streaming route (two grid rows alive at a time, each
/// cell bucketed by max coordinate, then prefix-summed).
std::vector<Integer> sum_sequence(const SpinSeeds& s, Region region, std::int64_t count,
                                  BoundaryConvention conv = BoundaryConvention::B_WINS,
                                  const CancelFlag* cancel = nullptr);

} // namespace spinfib
