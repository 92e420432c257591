#pragma once

#include <vector>

#include "gmk/padic.hpp"

namespace gmk {

// Z_p[xi] for xi a primitive p^n-th root of unity, in the power basis
// 1, xi, ..., xi^(phi(p^n)-1) with reduction by the cyclotomic polynomial
// Phi_{p^n}.  xi stays symbolic; only its algebraic relations are used.
struct CycloRing {
    long p;
    int level; // n
    long degree() const {
        long d = p - 1;
        for (int i = 1; i < level; ++i) d *= p;
        return d;
    }
    long root_order() const {
        long m = 1;
        for (int i = 0; i < level; ++i) m *= p;
        return m;
    }
    friend bool operator==(const CycloRing& a, const CycloRing& b) {
        return a.p == b.p && a.level == b.level;
    }
};

class CycloScalar {
  public:
    CycloScalar() = default;
    CycloScalar(CycloRing ring, std::vector<PadicScalar> coeffs);

    static CycloScalar zero(CycloRing ring);
    static CycloScalar one(CycloRing ring, long prec);
    static CycloScalar from_padic(CycloRing ring, const PadicScalar& c);
    // xi^m for any integer m (reduced mod p^n, rewritten into the power basis)
    static CycloScalar root_power(CycloRing ring, long m, long prec);

    const CycloRing& ring() const { return ring_; }
    const std::vector<PadicScalar>& coeffs() const { return c_; }

    friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b);
    friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b);
    friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
    CycloScalar operator-() const;
    CycloScalar scaled(const PadicScalar& s) const;

    // Galois automorphism xi -> xi^a, gcd(a, p) = 1
    CycloScalar galois(long a) const;
    // product of all Galois conjugates; lands in Z_p (checked within precision)
    PadicScalar norm() const;
    CycloScalar inverse() const;
    // asserts all non-constant coordinates vanish within precision
    PadicScalar expect_base() const;

    bool is_zero_within_precision() const;
    // exact valuation (rational, denominator dividing phi(p^n)) computed in the
    // (xi - 1)-adic basis; returns a lower bound when digits run out (second = false)
    std::pair<Rat, bool> valuation() const;

    // helpers matching the generic ring interface
    CycloScalar sub_int(long k) const;
    CycloScalar div_mpz(const mpz_class& d) const;
    static CycloScalar one_like(const CycloScalar& x);

    std::string str() const;

  private:
    CycloRing ring_{3, 1};
    std::vector<PadicScalar> c_;
};

bool equal_within_precision(const CycloScalar& a, const CycloScalar& b);

// Character of (Z/p^n Z)^x with values in mu_{phi(p^n)} inside Z_p[xi_{p^n}];
// by convention chi(a) = 0 for p | a.
class DirichletChar {
  public:
    // the e-th power character: chi(g^k) = zeta^{e k} for g the fixed generator
    DirichletChar(long p, int level, long exponent, long prec);

    long p() const { return p_; }
    int level() const { return level_; }
    long modulus() const { return modulus_; }
    long exponent() const { return exponent_; }
    CycloRing value_ring() const { return CycloRing{p_, level_}; }

    const CycloScalar& value(long a) const; // a mod p^n; zero scalar when p | a
    DirichletChar inverse() const;
    bool is_trivial() const { return exponent_ == 0; }
    // conductor p^c: smallest c with chi factoring through (Z/p^c)^x
    int conductor_level() const;
    bool is_primitive() const { return conductor_level() == level_; }
    bool is_odd() const; // chi(-1) = -1

    static long generator(long p, int level); // fixed generator of (Z/p^nZ)^x

  private:
    long p_;
    int level_;
    long modulus_;
    long exponent_;
    std::vector<CycloScalar> table_;
};

// sum over units a mod p^n of chi(a) * xi^a
CycloScalar gauss_sum(const DirichletChar& chi, long prec);

} // namespace gmk
