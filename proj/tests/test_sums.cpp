#include "doctest.h"

#include <cstdint>
#include <vector>

#include "spinfib/errors.hpp"
#include "spinfib/fib.hpp"
#include "spinfib/sums.hpp"

using namespace spinfib;

namespace {

// Oracle: build the grid directly and sum the region with a double loop.
Integer naive_region_sum(long long a, long long b, long long c, long long d, bool corner_keeps_b,
                         Region region, std::int64_t n) {
    std::size_t dim = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<Integer>> g(dim, std::vector<Integer>(dim));
    std::vector<Integer> outer(dim), inner(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        if (k == 0) {
            outer[k] = Integer(a);
            inner[k] = Integer(d);
        } else if (k == 1) {
            outer[k] = Integer(b);
            inner[k] = Integer(c);
        } else {
            outer[k] = outer[k - 1] + outer[k - 2];
            inner[k] = inner[k - 1] + inner[k - 2];
        }
    }
    Integer corner = corner_keeps_b ? Integer(b) : Integer(d);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) {
            if (j == 0)
                g[j][i] = (i == 1) ? corner : outer[i];
            else if (i == 0)
                g[j][i] = (j == 1) ? corner : outer[j];
            else if (j == 1)
                g[j][i] = inner[i];
            else if (i == 1)
                g[j][i] = inner[j];
            else
                g[j][i] = g[j - 1][i - 1] + g[j - 2][i - 2];
        }
    Integer acc(0);
    for (std::int64_t j = 0; j <= n; ++j)
        for (std::int64_t i = 0; i <= n; ++i) {
            bool in = false;
            switch (region) {
                case Region::LOWER_STRICT: in = i > j; break;
                case Region::UPPER_INCL_DIAG: in = i <= j; break;
                case Region::LOWER_INCL_DIAG: in = j <= i; break;
                case Region::FULL_SQUARE: in = true; break;
            }
            if (in) acc += g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    return acc;
}

SpinSeeds seeds_of(long long a, long long b, long long c, long long d) {
    return SpinSeeds{Integer(a), Integer(b), Integer(c), Integer(d)};
}

} // namespace

TEST_CASE("weighted seeded sums: frozen examples") {
    CHECK(weighted_gfs_sum_closed(Integer(0), Integer(1), 4) == Integer(21));
    CHECK(weighted_gfs_sum_closed(Integer(2), Integer(1), 3) == Integer(19));
    for (long long g0 = -2; g0 <= 2; ++g0)
        for (long long g1 = -2; g1 <= 2; ++g1)
            CHECK(weighted_gfs_sum_closed(Integer(g0), Integer(g1), 1) == Integer(g1));
    CHECK_THROWS_AS(weighted_gfs_sum_closed(Integer(0), Integer(1), 0), DomainError);
}

TEST_CASE("weighted seeded sums match direct accumulation") {
    for (long long g0 = -3; g0 <= 3; ++g0)
        for (long long g1 = -3; g1 <= 3; ++g1) {
            Integer prev(g0), cur(g1), acc(0);
            for (std::int64_t n = 1; n <= 150; ++n) {
                if (n >= 2) {
                    prev += cur;
                    std::swap(prev, cur);
                }
                acc += Integer(n) * cur;
                CAPTURE(g0);
                CAPTURE(g1);
                CAPTURE(n);
                REQUIRE(weighted_gfs_sum_closed(Integer(g0), Integer(g1), n) == acc);
            }
        }
}

TEST_CASE("triangle and square closed forms: frozen examples") {
    CHECK(triangle_sum_closed(0) == Integer(0));
    CHECK(triangle_sum_closed(1) == Integer(2));
    CHECK(triangle_sum_closed(2) == Integer(6));
    CHECK(triangle_sum_closed(3) == Integer(16));
    CHECK(square_sum_closed(0) == Integer(0));
    CHECK(square_sum_closed(1) == Integer(3));
    CHECK(square_sum_closed(2) == Integer(10));
    CHECK(square_sum_closed(3) == Integer(28));
    CHECK_THROWS_AS(triangle_sum_closed(-1), DomainError);
    CHECK_THROWS_AS(square_sum_closed(-1), DomainError);
}

TEST_CASE("closed forms match the direct region sums for the 0,1,1,1 row") {
    SpinSeeds unit = seeds_of(0, 1, 1, 1);
    for (std::int64_t m = 0; m <= 160; ++m) {
        CAPTURE(m);
        REQUIRE(triangle_sum_closed(m) == region_sum(unit, Region::UPPER_INCL_DIAG, m));
        REQUIRE(square_sum_closed(m) == region_sum(unit, Region::FULL_SQUARE, m));
    }
}

TEST_CASE("closed-form divisions stay exact far out") {
    for (std::int64_t m = 0; m <= 600; ++m) {
        triangle_sum_closed(m); // div_exact throws ArithmeticBug if divisibility ever fails
        square_sum_closed(m);
    }
}

TEST_CASE("region sums: frozen examples") {
    SpinSeeds unit = seeds_of(0, 1, 1, 1);
    CHECK(region_sum(unit, Region::UPPER_INCL_DIAG, 3) == Integer(16));
    CHECK(region_sum(unit, Region::FULL_SQUARE, 2) == Integer(10));
    CHECK(region_sum(unit, Region::LOWER_STRICT, 1) == Integer(1));
    SpinSeeds s = seeds_of(2, 1, 3, 4);
    CHECK(region_sum(s, Region::LOWER_STRICT, 1, BoundaryConvention::B_WINS) == Integer(1));
    CHECK(region_sum(s, Region::LOWER_STRICT, 1, BoundaryConvention::D_WINS) == Integer(4));
    CHECK(region_sum(s, Region::FULL_SQUARE, 0) == Integer(2));
}

TEST_CASE("region sums match the naive oracle") {
    const long long rows[][4] = {{0, 1, 1, 1}, {2, 1, 3, 4}, {1, 0, 0, 1}, {-2, 5, 1, -3}};
    for (auto [a, b, c, d] : rows)
        for (bool b_wins : {true, false}) {
            auto conv = b_wins ? BoundaryConvention::B_WINS : BoundaryConvention::D_WINS;
            SpinSeeds s = seeds_of(a, b, c, d);
            for (auto region : {Region::LOWER_STRICT, Region::UPPER_INCL_DIAG,
                                Region::LOWER_INCL_DIAG, Region::FULL_SQUARE})
                for (std::int64_t n = 0; n <= 24; ++n) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CAPTURE(c);
                    CAPTURE(d);
                    CAPTURE(b_wins);
                    CAPTURE(static_cast<int>(region));
                    CAPTURE(n);
                    REQUIRE(region_sum(s, region, n, conv) ==
                            naive_region_sum(a, b, c, d, b_wins, region, n));
                }
        }
}

TEST_CASE("sequence route agrees with the single-bound route") {
    const long long rows[][4] = {{0, 1, 1, 1}, {2, 1, 3, 4}, {1, 0, 0, 1}, {3, 3, 1, 2}};
    constexpr std::int64_t count = 20;
    for (auto [a, b, c, d] : rows)
        for (bool b_wins : {true, false}) {
            auto conv = b_wins ? BoundaryConvention::B_WINS : BoundaryConvention::D_WINS;
            SpinSeeds s = seeds_of(a, b, c, d);
            for (auto region : {Region::LOWER_STRICT, Region::UPPER_INCL_DIAG,
                                Region::LOWER_INCL_DIAG, Region::FULL_SQUARE}) {
                auto seq = sum_sequence(s, region, count, conv);
                REQUIRE(seq.size() == static_cast<std::size_t>(count));
                for (std::int64_t k = 0; k < count; ++k) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CAPTURE(c);
                    CAPTURE(d);
                    CAPTURE(b_wins);
                    CAPTURE(static_cast<int>(region));
                    CAPTURE(k);
                    REQUIRE(seq[static_cast<std::size_t>(k)] == region_sum(s, region, k, conv));
                }
            }
        }
}

TEST_CASE("sequence route: frozen examples") {
    SpinSeeds unit = seeds_of(0, 1, 1, 1);
    auto triangle = sum_sequence(unit, Region::UPPER_INCL_DIAG, 4);
    CHECK(triangle == std::vector<Integer>{Integer(0), Integer(2), Integer(6), Integer(16)});
    auto square = sum_sequence(unit, Region::FULL_SQUARE, 4);
    CHECK(square == std::vector<Integer>{Integer(0), Integer(3), Integer(10), Integer(28)});
}

TEST_CASE("including the diagonal adds the (a, c) string") {
    SpinSeeds s = seeds_of(2, 1, 3, 4);
    Integer diag(0);
    for (std::int64_t n = 0; n <= 120; ++n) {
        diag += gfs_term(s.a, s.c, n);
        CAPTURE(n);
        REQUIRE(region_sum(s, Region::LOWER_INCL_DIAG, n) ==
                region_sum(s, Region::LOWER_STRICT, n) + diag);
    }
}

TEST_CASE("upper and lower triangles of a symmetric grid sum equally") {
    SpinSeeds s = seeds_of(2, 1, 3, 4);
    for (std::int64_t n = 0; n <= 60; ++n) {
        CAPTURE(n);
        REQUIRE(region_sum(s, Region::UPPER_INCL_DIAG, n) ==
                region_sum(s, Region::LOWER_INCL_DIAG, n));
        REQUIRE(region_sum(s, Region::FULL_SQUARE, n) ==
                region_sum(s, Region::UPPER_INCL_DIAG, n) +
                    region_sum(s, Region::LOWER_STRICT, n));
    }
}

TEST_CASE("cancellation throws promptly") {
    SpinSeeds unit = seeds_of(0, 1, 1, 1);
    CancelFlag flag;
    flag.cancel();
    CHECK_THROWS_AS(region_sum(unit, Region::FULL_SQUARE, 100, BoundaryConvention::B_WINS, &flag),
                    Cancelled);
    CHECK_THROWS_AS(sum_sequence(unit, Region::FULL_SQUARE, 100, BoundaryConvention::B_WINS, &flag),
                    Cancelled);
}

TEST_CASE("bounds and domains") {
    SpinSeeds unit = seeds_of(0, 1, 1, 1);
    CHECK_THROWS_AS(region_sum(unit, Region::FULL_SQUARE, -1), DomainError);
    CHECK_THROWS_AS(region_sum(unit, Region::FULL_SQUARE, kGridBound + 1), LimitError);
    CHECK_THROWS_AS(sum_sequence(unit, Region::FULL_SQUARE, 0), DomainError);
    CHECK_THROWS_AS(sum_sequence(unit, Region::FULL_SQUARE, kGridBound + 2), LimitError);
}
