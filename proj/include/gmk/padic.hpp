#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "gmk/util.hpp"

namespace gmk {

// A p-adic rational with capped absolute precision.
//
// A nonzero value is p^val * unit with unit a p-adic unit known modulo
// p^(prec - val); the value as a whole is known modulo p^prec.  Arithmetic
// propagates worst-case precision: addition keeps the minimum absolute
// precision, multiplication and division keep the minimum relative
// precision.  Exact zero is a distinguished sentinel with infinite
// valuation and precision, so structural zeros never consume digits.
//
// A value may have no known digits at all (it is O(p^prec)); then
// valuation() is only a lower bound and has_known_digits() is false.
class PadicScalar {
  public:
    static constexpr long kInf = 1000000000L;

    PadicScalar() : p_(0), exact_zero_(true), val_(kInf), prec_(kInf) {}

    static PadicScalar zero(long p) {
        PadicScalar x;
        x.p_ = p;
        return x;
    }
    static PadicScalar from_mpz(long p, const mpz_class& value, long prec);
    static PadicScalar from_int(long p, long value, long prec) {
        return from_mpz(p, mpz_class(value), prec);
    }
    static PadicScalar from_ratio(long p, const mpz_class& num, const mpz_class& den,
                                  long prec);
    // p^val * unit + O(p^prec), unit given as an integer (not necessarily reduced)
    static PadicScalar from_unit_val(long p, const mpz_class& unit, long val, long prec);
    // the value O(p^prec): no known digits
    static PadicScalar unknown_zero(long p, long prec);

    long prime() const { return p_; }
    bool is_exact_zero() const { return exact_zero_; }
    // true if at least one nonzero digit is known
    bool has_known_digits() const { return !exact_zero_ && !unit_is_zero_; }
    // exact for known digits / exact zero; otherwise a lower bound (== prec)
    long valuation() const { return val_; }
    long precision() const { return prec_; }
    long rel_precision() const { return exact_zero_ ? kInf : prec_ - val_; }
    const mpz_class& unit_part() const { return unit_; }

    // true when the tracked digits cannot distinguish the value from 0
    bool is_zero_within_precision() const { return exact_zero_ || unit_is_zero_; }

    PadicScalar with_prec_cap(long prec) const;

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
    PadicScalar operator-() const;

    PadicScalar pow(long e) const;
    PadicScalar inverse() const;

    // helpers used by the generic binomial routine
    PadicScalar sub_int(long k) const;
    PadicScalar div_mpz(const mpz_class& d) const;
    static PadicScalar one_like(const PadicScalar& x) {
        return from_int(x.prime(), 1, x.precision());
    }

    // integer representative of the value modulo p^prec; requires val >= 0
    mpz_class to_mpz() const;

    std::string str() const;

  private:
    void normalize();
    static void require_same_prime(const PadicScalar& a, const PadicScalar& b);

    long p_;
    bool exact_zero_;
    bool unit_is_zero_ = false; // O(p^prec): no known digits
    long val_ = 0;
    long prec_ = kInf;
    mpz_class unit_ = 0;
};

bool equal_within_precision(const PadicScalar& a, const PadicScalar& b);

// p-adic valuation of h! (Legendre sum); always <= h/(p-1).
long factorial_valuation(long p, long h);

// exp(x) = sum x^k / k!  requires v(x) >= 1 (and p > 2).
PadicScalar padic_exp(const PadicScalar& x);

// log(1+x) = sum (-1)^(k+1) x^k / k.  requires v(x) >= 1.
PadicScalar padic_log1p(const PadicScalar& x);

// The (p-1)-th root of unity congruent to a mod p.
PadicScalar teichmuller(long p, long a, long prec);

// x(x-1)...(x-i+1)/i! over any ring with sub_int / div_mpz / one_like / mul.
template <class R>
R binom_general(const R& x, long i) {
    if (i < 0) throw std::domain_error("binom_general: negative index");
    R acc = R::one_like(x);
    for (long j = 0; j < i; ++j) acc = acc * x.sub_int(j);
    return acc.div_mpz(mpz_factorial(static_cast<unsigned long>(i)));
}

} // namespace gmk
