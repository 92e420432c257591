#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gmk {

// Exact rational used for valuations and certified bounds. Denominators stay
// tiny (ramification indices, p-1 factors), so int64 components suffice.
struct Rat {
    long long num = 0;
    long long den = 1; // den == 0 encodes +infinity (num > 0)

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    static Rat inf() {
        Rat r;
        r.num = 1;
        r.den = 0;
        return r;
    }
    bool is_inf() const { return den == 0; }

    void normalize() {
        if (den == 0) {
            num = 1;
            return;
        }
        if (den < 0) {
            den = -den;
            num = -num;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        if (a.is_inf()) return inf();
        if (b.is_inf()) throw std::domain_error("Rat: inf subtraction");
        return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return Rat(a.num * b.num, a.den * b.den);
    }
    friend bool operator<(const Rat& a, const Rat& b) {
        if (a.is_inf()) return false;
        if (b.is_inf()) return true;
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }

    // largest integer <= value (requires finite)
    long long floor() const {
        if (is_inf()) throw std::domain_error("Rat: floor of inf");
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const {
        if (is_inf()) throw std::domain_error("Rat: ceil of inf");
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }
    std::string str() const {
        if (is_inf()) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Deterministic cross-platform RNG for the seeded property suites.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

inline mpz_class mpz_pow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpz_class mpz_pow_prime(long p, long e) {
    if (e < 0) throw std::domain_error("mpz_pow_prime: negative exponent");
    return mpz_pow(mpz_class(p), static_cast<unsigned long>(e));
}

inline mpz_class mpz_factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class mpz_binom(const mpz_class& n, unsigned long k) {
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

} // namespace gmk
