#include "spinfib/sums.hpp"

#include <string>
#include <utility>

#include "spinfib/errors.hpp"
#include "spinfib/fib.hpp"

namespace spinfib {

namespace {

void check_bound(std::int64_t n) {
    if (n < 0) throw DomainError("region bound must be nonnegative");
    if (n > kGridBound)
        throw LimitError("region bound " + std::to_string(n) + " exceeds grid bound " +
                         std::to_string(kGridBound));
}

void check_cancel(const CancelFlag* cancel) {
    if (cancel && cancel->cancelled()) throw Cancelled();
}

bool takes_lower(Region r) {
    return r == Region::LOWER_STRICT || r == Region::LOWER_INCL_DIAG ||
           r == Region::FULL_SQUARE;
}

bool takes_upper(Region r) {
    return r == Region::UPPER_INCL_DIAG || r == Region::FULL_SQUARE;
}

bool takes_diagonal(Region r) { return r != Region::LOWER_STRICT; }

// Term k (k >= 1) of the Fibonacci-rule string with terms 0 and 1 given.
Integer walk_string(const Integer& t0, const Integer& t1, std::int64_t k) {
    Integer prev = t0, cur = t1;
    for (std::int64_t i = 2; i <= k; ++i) {
        prev += cur;
        std::swap(prev, cur);
    }
    return cur;
}

// Sum of the first `len` cells of the grid diagonal at distance `gap` from
// the main one: cells (gap + j, j), j = 0..len-1 (the mirrored diagonal
// (j, gap + j) holds the same values because the grid is symmetric).
Integer diagonal_sum(const SpinSeeds& s, std::int64_t gap, std::int64_t len,
                     const Integer& corner) {
    Integer w0, w1;
    if (gap == 0) {
        w0 = s.a;
        w1 = s.c;
    } else {
        w0 = (gap == 1) ? corner : walk_string(s.a, s.b, gap);
        w1 = walk_string(s.d, s.c, gap + 1);
    }
    Integer acc = w0;
    for (std::int64_t j = 1; j < len; ++j) {
        if (j > 1) {
            w0 += w1;
            std::swap(w0, w1);
        }
        acc += w1;
    }
    return acc;
}

} // namespace

Integer weighted_gfs_sum_closed(const Integer& g0, const Integer& g1, std::int64_t n) {
    if (n < 1) throw DomainError("weighted_gfs_sum_closed requires n >= 1");
    Integer g3 = gfs_term(g0, g1, 3);
    return Integer(n) * gfs_term(g0, g1, n + 2) - gfs_term(g0, g1, n + 3) + g3;
}

Integer triangle_sum_closed(std::int64_t m) {
    if (m < 0) throw DomainError("triangle_sum_closed requires m >= 0");
    Integer x = Integer(m) * lucas(m + 3) - lucas(m + 4) + Integer(2) * fib(m + 2);
    return Integer(2) * x.div_exact(Integer(5)) + Integer(2);
}

Integer square_sum_closed(std::int64_t m) {
    if (m < 0) throw DomainError("square_sum_closed requires m >= 0");
    Integer x = Integer(m) * lucas(m + 3) - lucas(m + 4) + Integer(2) * fib(m + 2);
    return Integer(4) * x.div_exact(Integer(5)) - fib(m + 2) + Integer(5);
}

Integer region_sum(const SpinSeeds& s, Region region, std::int64_t n, BoundaryConvention conv,
                   const CancelFlag* cancel) {
    check_bound(n);
    const Integer& corner = (conv == BoundaryConvention::B_WINS) ? s.b : s.d;
    Integer total;
    int sides = (takes_lower(region) ? 1 : 0) + (takes_upper(region) ? 1 : 0);
    for (std::int64_t gap = 1; gap <= n && sides > 0; ++gap) {
        check_cancel(cancel);
        Integer one = diagonal_sum(s, gap, n - gap + 1, corner);
        if (sides == 2) one += one;
        total += one;
    }
    if (takes_diagonal(region)) {
        check_cancel(cancel);
        total += diagonal_sum(s, 0, n + 1, corner);
    }
    return total;
}

std::vector<Integer> sum_sequence(const SpinSeeds& s, Region region, std::int64_t count,
                                  BoundaryConvention conv, const CancelFlag* cancel) {
    if (count < 1) throw DomainError("sum_sequence requires count >= 1");
    check_bound(count - 1);
    const Integer& corner = (conv == BoundaryConvention::B_WINS) ? s.b : s.d;
    auto in_region = [&](std::int64_t i, std::int64_t j) {
        if (i > j) return takes_lower(region);
        if (i < j) return takes_upper(region);
        return takes_diagonal(region);
    };

    std::size_t dim = static_cast<std::size_t>(count);
    std::vector<Integer> delta(dim); // delta[t] = in-region cells with max(i, j) = t
    std::vector<Integer> prev2(dim), prev1(dim), cur(dim);
    Integer outer_prev = s.a, outer_cur = s.b; // (a, b) string
    Integer inner_prev = s.d, inner_cur = s.c; // (d, c) string
    for (std::int64_t j = 0; j < count; ++j) {
        check_cancel(cancel);
        if (j >= 2) {
            outer_prev += outer_cur;
            std::swap(outer_prev, outer_cur);
            inner_prev += inner_cur;
            std::swap(inner_prev, inner_cur);
        }
        if (j == 0) {
            Integer p = s.a, c = s.b;
            for (std::int64_t i = 0; i < count; ++i) {
                if (i >= 2) {
                    p += c;
                    std::swap(p, c);
                }
                cur[static_cast<std::size_t>(i)] = (i == 0) ? s.a : (i == 1 ? corner : c);
            }
        } else if (j == 1) {
            Integer p = s.d, c = s.c;
            for (std::int64_t i = 0; i < count; ++i) {
                if (i >= 2) {
                    p += c;
                    std::swap(p, c);
                }
                cur[static_cast<std::size_t>(i)] = (i == 0) ? corner : c;
            }
        } else {
            for (std::int64_t i = 0; i < count; ++i) {
                auto u = static_cast<std::size_t>(i);
                if (i == 0)
                    cur[u] = outer_cur;
                else if (i == 1)
                    cur[u] = inner_cur;
                else
                    cur[u] = prev1[u - 1] + prev2[u - 2];
            }
        }
        for (std::int64_t i = 0; i < count; ++i)
            if (in_region(i, j)) delta[static_cast<std::size_t>(std::max(i, j))] += cur[static_cast<std::size_t>(i)];
        std::swap(prev2, prev1);
        std::swap(prev1, cur);
    }

    std::vector<Integer> out(dim);
    Integer acc;
    for (std::size_t t = 0; t < dim; ++t) {
        acc += delta[t];
        out[t] = acc;
    }
    return out;
}

} // namespace spinfib
