#pragma once

#include <vector>

#include "gmk/padic.hpp"

namespace gmk {

// Small unramified extension Z_p[x]/(g) with g monic of degree f <= 2 and
// irreducible modulo p.  Frobenius is the Hensel lift of the p-power map.
struct UnramifiedRing {
    long p;
    int f;
    std::vector<long> poly; // monic: poly[0] + poly[1] x + ... + x^f (constant..x^{f-1})

    // default quadratic extension x^2 - c, c the smallest non-residue mod p
    static UnramifiedRing quadratic(long p);
    static UnramifiedRing base(long p) { return UnramifiedRing{p, 1, {0}}; }

    friend bool operator==(const UnramifiedRing& a, const UnramifiedRing& b) {
        return a.p == b.p && a.f == b.f && a.poly == b.poly;
    }
};

class UnramifiedScalar {
  public:
    UnramifiedScalar() = default;
    UnramifiedScalar(UnramifiedRing ring, std::vector<PadicScalar> coords);

    static UnramifiedScalar zero(const UnramifiedRing& ring);
    static UnramifiedScalar one(const UnramifiedRing& ring, long prec);
    static UnramifiedScalar from_padic(const UnramifiedRing& ring, const PadicScalar& c);
    static UnramifiedScalar gen(const UnramifiedRing& ring, long prec); // the class of x

    const UnramifiedRing& ring() const { return ring_; }
    const std::vector<PadicScalar>& coords() const { return c_; }

    friend UnramifiedScalar operator+(const UnramifiedScalar& a, const UnramifiedScalar& b);
    friend UnramifiedScalar operator-(const UnramifiedScalar& a, const UnramifiedScalar& b);
    friend UnramifiedScalar operator*(const UnramifiedScalar& a, const UnramifiedScalar& b);
    UnramifiedScalar operator-() const;
    UnramifiedScalar scaled(const PadicScalar& s) const;
    UnramifiedScalar pow(long e) const;
    UnramifiedScalar inverse() const;

    bool is_zero_within_precision() const;
    bool is_unit() const; // some coordinate is a unit (valuation 0 element)
    long valuation_lb() const; // min over coordinates (exact for unramified)

    std::string str() const;

  private:
    UnramifiedScalar conj_quadratic() const;

    UnramifiedRing ring_{3, 1, {0}};
    std::vector<PadicScalar> c_;
};

bool equal_within_precision(const UnramifiedScalar& a, const UnramifiedScalar& b);

// Hensel-lifted p-power automorphism; identity on the base, order f.
UnramifiedScalar frobenius(const UnramifiedScalar& x, long prec);
// x * frobenius(x) * ... * frobenius^{f-1}(x), landing in the base ring.
PadicScalar norm(const UnramifiedScalar& x, long prec);

} // namespace gmk
