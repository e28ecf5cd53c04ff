#pragma once

#include <gmp.h>

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "spinfib/errors.hpp"

namespace spinfib {

/// Exact signed integer of arbitrary size. Thin value-semantics wrapper over
/// GMP's mpz_t; every operation is exact or throws.
class Integer {
public:
    Integer() noexcept { mpz_init(v_); }

    Integer(std::int64_t n) noexcept {
        static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 assumed");
        mpz_init_set_si(v_, static_cast<long>(n));
    }

    explicit Integer(std::string_view decimal) {
        mpz_init(v_);
        if (!set_from_decimal(decimal)) {
            mpz_clear(v_);
            throw DomainError("not a decimal integer: '" + std::string(decimal) + "'");
        }
    }

    Integer(const Integer& o) noexcept { mpz_init_set(v_, o.v_); }
    Integer(Integer&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    Integer& operator=(const Integer& o) noexcept {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    Integer& operator=(Integer&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~Integer() { mpz_clear(v_); }

    std::string to_string() const {
        // +2: sign and NUL, per GMP's documented bound.
        std::string buf(mpz_sizeinbase(v_, 10) + 2, '\0');
        mpz_get_str(buf.data(), 10, v_);
        buf.resize(buf.find('\0'));
        return buf;
    }

    /// Number of decimal digits of |x|; zero has one digit.
    std::size_t digit_count() const {
        if (is_zero()) return 1;
        std::size_t n = mpz_sizeinbase(v_, 10); // exact or one too high
        if (n < 2) return n;
        Integer p;
        mpz_ui_pow_ui(p.v_, 10, static_cast<unsigned long>(n - 1));
        return mpz_cmpabs(v_, p.v_) < 0 ? n - 1 : n;
    }

    int sign() const noexcept { return mpz_sgn(v_); }
    bool is_zero() const noexcept { return mpz_sgn(v_) == 0; }
    bool is_negative() const noexcept { return mpz_sgn(v_) < 0; }

    /// True iff the value fits in int64; `to_int64` asserts it does.
    bool fits_int64() const noexcept { return mpz_fits_slong_p(v_) != 0; }
    std::int64_t to_int64() const {
        if (!fits_int64()) throw DomainError("value does not fit in 64 bits");
        return static_cast<std::int64_t>(mpz_get_si(v_));
    }

    Integer& operator+=(const Integer& o) noexcept {
        mpz_add(v_, v_, o.v_);
        return *this;
    }
    Integer& operator-=(const Integer& o) noexcept {
        mpz_sub(v_, v_, o.v_);
        return *this;
    }
    Integer& operator*=(const Integer& o) noexcept {
        mpz_mul(v_, v_, o.v_);
        return *this;
    }

    friend Integer operator+(Integer a, const Integer& b) noexcept { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) noexcept { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) noexcept { return a *= b; }
    friend Integer operator-(Integer a) noexcept {
        mpz_neg(a.v_, a.v_);
        return a;
    }

    /// Quotient of an exact division; throws ArithmeticBug if the divisor is
    /// zero or does not divide the value.
    Integer div_exact(const Integer& d) const {
        if (d.is_zero()) throw ArithmeticBug("exact division by zero");
        if (!mpz_divisible_p(v_, d.v_))
            throw ArithmeticBug("inexact division: " + to_string() + " / " + d.to_string());
        Integer q;
        mpz_divexact(q.v_, v_, d.v_);
        return q;
    }

    Integer abs() const noexcept {
        Integer r;
        mpz_abs(r.v_, v_);
        return r;
    }

    friend bool operator==(const Integer& a, const Integer& b) noexcept {
        return mpz_cmp(a.v_, b.v_) == 0;
    }
    friend bool operator!=(const Integer& a, const Integer& b) noexcept { return !(a == b); }
    friend bool operator<(const Integer& a, const Integer& b) noexcept {
        return mpz_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator>(const Integer& a, const Integer& b) noexcept { return b < a; }
    friend bool operator<=(const Integer& a, const Integer& b) noexcept { return !(b < a); }
    friend bool operator>=(const Integer& a, const Integer& b) noexcept { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Integer& x) {
        return os << x.to_string();
    }

private:
    bool set_from_decimal(std::string_view s) {
        // Stricter than mpz_set_str: no whitespace, no empty string, no lone '-'.
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return false;
        return mpz_set_str(v_, std::string(s).c_str(), 10) == 0;
    }

    mpz_t v_;
};

} // namespace spinfib
