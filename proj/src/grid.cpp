#include "spinfib/grid.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "spinfib/errors.hpp"
#include "spinfib/fib.hpp"

namespace spinfib {

namespace {

void check_cell(std::int64_t m, std::int64_t n) {
    if (m < 0 || n < 0) throw DomainError("grid cells have nonnegative coordinates");
    if (m > kGridBound || n > kGridBound)
        throw LimitError("cell (" + std::to_string(m) + ", " + std::to_string(n) +
                         ") exceeds grid bound " + std::to_string(kGridBound));
}

// Term k (k >= 0) of the Fibonacci-rule string with terms 0 and 1 given.
// Pure additions, deliberately independent of the doubling kernel.
Integer string_term(const Integer& t0, const Integer& t1, std::int64_t k) {
    if (k == 0) return t0;
    Integer prev = t0, cur = t1;
    for (std::int64_t i = 2; i <= k; ++i) {
        prev += cur;
        std::swap(prev, cur);
    }
    return cur;
}

} // namespace

Integer double_fib(std::int64_t m, std::int64_t n) {
    check_cell(m, n);
    std::int64_t k = std::min(m, n);
    std::int64_t gap = std::max(m, n) - k;
    return fib(k) * fib(gap + 2) + fib(k - 1) * fib(gap);
}

Integer f_ab(const Integer& a, const Integer& b, std::int64_t m, std::int64_t n) {
    check_cell(m, n);
    std::int64_t gap = std::llabs(m - n);
    return b * fib(n) * fib(gap + 2) + a * fib(n - 1) * fib(gap);
}

Integer grid_eval_recurrence(const SpinSeeds& s, std::int64_t m, std::int64_t n,
                             BoundaryConvention conv) {
    check_cell(m, n);
    const Integer& corner = (conv == BoundaryConvention::B_WINS) ? s.b : s.d;
    std::int64_t k = std::min(m, n);
    std::int64_t gap = std::max(m, n) - k;
    if (k == 0) return gap == 1 ? corner : string_term(s.a, s.b, gap);
    if (k == 1) return string_term(s.d, s.c, gap + 1);
    // Walk the diagonal {(gap + j, j)} from its two boundary cells.
    Integer w0 = (gap == 1) ? corner : string_term(s.a, s.b, gap);
    Integer w1 = string_term(s.d, s.c, gap + 1);
    for (std::int64_t j = 2; j <= k; ++j) {
        w0 += w1;
        std::swap(w0, w1);
    }
    return w1;
}

Integer grid_eval_closed(const SpinSeeds& s, std::int64_t m, std::int64_t n) {
    check_cell(m, n);
    std::int64_t k = std::min(m, n);
    std::int64_t gap = std::max(m, n) - k;
    Integer fk_prev(1), fk(0); // (F(k-1), F(k)), seeded for k = 0 via F(-1) = 1
    if (k > 0) {
        auto pair = fib_pair(k - 1);
        fk_prev = std::move(pair.first);
        fk = std::move(pair.second);
    }
    return fk * gfs_term(s.d, s.c, gap + 1) + fk_prev * gfs_term(s.a, s.b, gap);
}

Integer grid_decompose(const SpinSeeds& s, std::int64_t m, std::int64_t n,
                       DecomposeVariant variant) {
    check_cell(m, n);
    if (std::llabs(m - n) < 2)
        throw DomainError("grid_decompose requires |m - n| >= 2; cell (" + std::to_string(m) +
                          ", " + std::to_string(n) + ") is too close to the diagonal");
    if (m > n) return f_ab(s.a + s.b, s.c, m - 1, n) + f_ab(s.b, s.d, m - 2, n);
    if (variant == DecomposeVariant::CORRECTED)
        return f_ab(s.a + s.b, s.c, n - 1, m) + f_ab(s.b, s.d, n - 2, m);
    return f_ab(s.a + s.d, s.c, n - 1, m) + f_ab(s.d, s.b, n - 2, m);
}

std::vector<std::vector<Integer>> grid_render(const SpinSeeds& s, std::int64_t size,
                                              BoundaryConvention conv) {
    if (size < 0) throw DomainError("grid size must be nonnegative");
    if (size > kRenderBound)
        throw LimitError("grid size " + std::to_string(size) + " exceeds render bound " +
                         std::to_string(kRenderBound));
    const Integer& corner = (conv == BoundaryConvention::B_WINS) ? s.b : s.d;
    std::size_t dim = static_cast<std::size_t>(size) + 1;
    std::vector<std::vector<Integer>> g(dim, std::vector<Integer>(dim));

    // Boundary strings, built incrementally.
    Integer outer_prev = s.a, outer_cur = s.b; // (a, b) string along row/column 0
    Integer inner_prev = s.d, inner_cur = s.c; // (d, c) string along row/column 1
    for (std::size_t i = 0; i < dim; ++i) {
        if (i >= 2) {
            outer_prev += outer_cur;
            std::swap(outer_prev, outer_cur);
            inner_prev += inner_cur;
            std::swap(inner_prev, inner_cur);
        }
        const Integer& outer = (i == 0) ? s.a : outer_cur;
        const Integer& inner = (i == 0) ? s.d : inner_cur;
        g[0][i] = outer;
        g[i][0] = outer;
        if (i >= 1) {
            g[1][i] = inner;
            g[i][1] = inner;
        }
    }
    if (dim > 1) {
        g[0][1] = corner;
        g[1][0] = corner;
    }
    for (std::size_t j = 2; j < dim; ++j)
        for (std::size_t i = 2; i < dim; ++i) g[j][i] = g[j - 1][i - 1] + g[j - 2][i - 2];
    return g;
}

} // namespace spinfib
