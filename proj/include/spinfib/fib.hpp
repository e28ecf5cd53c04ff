#pragma once

#include <cstdint>
#include <utility>

#include "spinfib/integer.hpp"

namespace spinfib {

/// Largest |n| accepted by the index-based kernels below. Configurable at
/// runtime (CLI flag --max-index); reads and writes are atomic.
std::int64_t max_index() noexcept;
void set_max_index(std::int64_t cap);

/// Fibonacci number F(n) for any signed n, via fast doubling:
/// F(-n) = (-1)^(n+1) F(n), so F(-1) = 1, F(-2) = -1, ...
/// Throws LimitError when |n| exceeds max_index().
Integer fib(std::int64_t n);

/// (F(n), F(n+1)) for n >= 0 in one doubling pass.
std::pair<Integer, Integer> fib_pair(std::int64_t n);

/// Lucas number L(n) = F(n-1) + F(n+1) for any signed n.
Integer lucas(std::int64_t n);

/// n-th term of the Fibonacci-rule sequence seeded so that term 0 is g0 and
/// term 1 is g1; equals g1*F(n) + g0*F(n-1) for n >= 0 (with F(-1) = 1).
Integer gfs_term(const Integer& g0, const Integer& g1, std::int64_t n);

/// Fibonacci self-convolution sum_{k=0..n} F(k) F(n-k), computed in closed
/// form as (n L(n) - F(n)) / 5 with the division checked exact.
Integer fib_convolution(std::int64_t n);

/// sum_{k=1..n} k F(k), closed form n F(n+2) - F(n+3) + 2, for n >= 0.
Integer weighted_fib_sum(std::int64_t n);

} // namespace spinfib
