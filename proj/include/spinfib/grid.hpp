#pragma once

#include <cstdint>
#include <vector>

#include "spinfib/integer.hpp"

namespace spinfib {

/// The four seeds of a doubly-recurrent grid H:
///   H(m, n) = H(m-1, n-1) + H(m-2, n-2)
/// with H(0,0) = a, H(1,1) = c, boundary row/column 0 following the
/// Fibonacci rule from (a, b) and row/column 1 from (d, c).
struct SpinSeeds {
    Integer a, b, c, d;
};

/// The two cells (1,0) and (0,1) are claimed by both boundary strings when
/// b != d; the convention picks which seed is actually stored there.
enum class BoundaryConvention { B_WINS, D_WINS };

/// grid_decompose flavor: CORRECTED restores the m < n case by mirror
/// symmetry; LITERAL keeps a published variant whose second case swaps the
/// roles of two seeds and diverges from the grid by (b-d) F(m-2) F(n-m).
enum class DecomposeVariant { CORRECTED, LITERAL };

/// Hard per-axis bound for cell evaluation and region sums.
inline constexpr std::int64_t kGridBound = 2000;
/// Hard bound for full-matrix rendering.
inline constexpr std::int64_t kRenderBound = 500;

/// The unit-seed grid value at (m, n): F(k) F(d+2) + F(k-1) F(d) with
/// k = min(m, n), d = |m - n|. Equals the (0,1,1,1)-seeded grid everywhere.
Integer double_fib(std::int64_t m, std::int64_t n);

/// Two-seed slice b F(n) F(|m-n|+2) + a F(n-1) F(|m-n|), the building block
/// of grid_decompose. Satisfies the same double recurrence in (m, n).
Integer f_ab(const Integer& a, const Integer& b, std::int64_t m, std::int64_t n);

/// H(m, n) by direct iteration of the defining recurrence: walk the boundary
/// string to the diagonal's start, then the diagonal itself. Additions only.
Integer grid_eval_recurrence(const SpinSeeds& s, std::int64_t m, std::int64_t n,
                             BoundaryConvention conv = BoundaryConvention::B_WINS);

/// H(m, n) in closed form: for m >= n,
///   F(n) gfs(d,c)(m-n+1) + F(n-1) gfs(a,b)(m-n)
/// and symmetrically for m < n. Reproduces every cell of the B_WINS grid,
/// corners included, via F(-1) = 1.
Integer grid_eval_closed(const SpinSeeds& s, std::int64_t m, std::int64_t n);

/// H(m, n) as a sum of two f_ab slices. Only defined for |m - n| >= 2
/// (throws DomainError otherwise). With CORRECTED this equals the grid for
/// all seeds; with LITERAL the m <= n-2 case reproduces the published form.
Integer grid_decompose(const SpinSeeds& s, std::int64_t m, std::int64_t n,
                       DecomposeVariant variant = DecomposeVariant::CORRECTED);

/// Dense (size+1) x (size+1) matrix: element [n][m] is H(m, n).
std::vector<std::vector<Integer>> grid_render(const SpinSeeds& s, std::int64_t size,
                                              BoundaryConvention conv = BoundaryConvention::B_WINS);

} // namespace spinfib
