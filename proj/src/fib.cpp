#include "spinfib/fib.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

#include "spinfib/errors.hpp"

namespace spinfib {

namespace {

constexpr std::int64_t kDefaultMaxIndex = 10'000'000;

std::atomic<std::int64_t>& cap_cell() {
    static std::atomic<std::int64_t> cap{kDefaultMaxIndex};
    return cap;
}

void check_index(std::int64_t n) {
    std::int64_t cap = max_index();
    if (n > cap || n < -cap)
        throw LimitError("index " + std::to_string(n) + " exceeds max index " +
                         std::to_string(cap));
}

} // namespace

std::int64_t max_index() noexcept { return cap_cell().load(std::memory_order_relaxed); }

void set_max_index(std::int64_t cap) {
    if (cap < 0) throw DomainError("max index must be nonnegative");
    cap_cell().store(cap, std::memory_order_relaxed);
}

std::pair<Integer, Integer> fib_pair(std::int64_t n) {
    if (n < 0) throw DomainError("fib_pair requires n >= 0");
    check_index(n);
    Integer a(0), b(1); // (F(k), F(k+1)), k = prefix of n's bits
    if (n == 0) return {std::move(a), std::move(b)};
    auto u = static_cast<std::uint64_t>(n);
    int bits = 64 - std::countl_zero(u);
    for (int i = bits - 1; i >= 0; --i) {
        // k -> 2k: F(2k) = F(k) (2 F(k+1) - F(k)), F(2k+1) = F(k)^2 + F(k+1)^2
        Integer even = a * (b + b - a);
        Integer odd = a * a + b * b;
        if ((u >> i) & 1u) {
            a = std::move(odd);
            b = even + a;
        } else {
            a = std::move(even);
            b = std::move(odd);
        }
    }
    return {std::move(a), std::move(b)};
}

Integer fib(std::int64_t n) {
    if (n >= 0) return fib_pair(n).first;
    check_index(n);
    Integer f = fib_pair(-n).first;
    return (n % 2 == 0) ? -f : f;
}

Integer lucas(std::int64_t n) {
    check_index(n);
    if (n < 0) {
        Integer l = lucas(-n);
        return (n % 2 == 0) ? l : -l;
    }
    if (n == 0) return Integer(2);
    auto [fprev, fcur] = fib_pair(n - 1); // (F(n-1), F(n))
    return fprev + fprev + fcur;          // F(n-1) + F(n+1)
}

Integer gfs_term(const Integer& g0, const Integer& g1, std::int64_t n) {
    if (n < 0) throw DomainError("gfs_term requires n >= 0");
    check_index(n);
    if (n == 0) return g0;
    auto [fprev, fcur] = fib_pair(n - 1);
    return g1 * fcur + g0 * fprev;
}

Integer fib_convolution(std::int64_t n) {
    if (n < 0) throw DomainError("fib_convolution requires n >= 0");
    check_index(n);
    Integer num = Integer(n) * lucas(n) - fib(n);
    return num.div_exact(Integer(5));
}

Integer weighted_fib_sum(std::int64_t n) {
    if (n < 0) throw DomainError("weighted_fib_sum requires n >= 0");
    check_index(n);
    auto [f2, f3] = fib_pair(n + 2); // (F(n+2), F(n+3))
    return Integer(n) * f2 - f3 + Integer(2);
}

} // namespace spinfib
