#include "gmk/cyclo.hpp"

#include <algorithm>
#include <numeric>

namespace gmk {

CycloScalar::CycloScalar(CycloRing ring, std::vector<PadicScalar> coeffs)
    : ring_(ring), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != ring_.degree())
        throw std::invalid_argument("CycloScalar: wrong coefficient count");
}

CycloScalar CycloScalar::zero(CycloRing ring) {
    return CycloScalar(ring, std::vector<PadicScalar>(ring.degree(), PadicScalar::zero(ring.p)));
}

CycloScalar CycloScalar::one(CycloRing ring, long prec) {
    CycloScalar x = zero(ring);
    x.c_[0] = PadicScalar::from_int(ring.p, 1, prec);
    return x;
}

CycloScalar CycloScalar::from_padic(CycloRing ring, const PadicScalar& c) {
    CycloScalar x = zero(ring);
    x.c_[0] = c;
    return x;
}

CycloScalar CycloScalar::root_power(CycloRing ring, long m, long prec) {
    long order = ring.root_order();
    long deg = ring.degree();
    long step = order / ring.p; // p^(n-1)
    m %= order;
    if (m < 0) m += order;
    CycloScalar x = zero(ring);
    if (m < deg) {
        x.c_[m] = PadicScalar::from_int(ring.p, 1, prec);
        return x;
    }
    // xi^deg = -(1 + xi^step + ... + xi^((p-2)step)); shift by m - deg
    for (long j = 0; j + 2 <= ring.p; ++j) {
        long e = m - deg + j * step;
        x.c_[e] = PadicScalar::from_int(ring.p, -1, prec);
    }
    return x;
}

CycloScalar operator+(const CycloScalar& a, const CycloScalar& b) {
    if (!(a.ring() == b.ring())) throw std::invalid_argument("CycloScalar: ring mismatch");
    std::vector<PadicScalar> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return CycloScalar(a.ring_, std::move(c));
}

CycloScalar CycloScalar::operator-() const {
    std::vector<PadicScalar> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
    return CycloScalar(ring_, std::move(c));
}

CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) { return a + (-b); }

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
    if (!(a.ring() == b.ring())) throw std::invalid_argument("CycloScalar: ring mismatch");
    long deg = a.ring_.degree();
    long p = a.ring_.p;
    long step = a.ring_.root_order() / p;
    std::vector<PadicScalar> prod(2 * deg - 1, PadicScalar::zero(p));
    for (long i = 0; i < deg; ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (long j = 0; j < deg; ++j) {
            if (b.c_[j].is_exact_zero()) continue;
            prod[i + j] = prod[i + j] + a.c_[i] * b.c_[j];
        }
    }
    // reduce by Phi_{p^n}: X^deg = -(1 + X^step + ... + X^((p-2)step))
    for (long d = 2 * deg - 2; d >= deg; --d) {
        PadicScalar c = prod[d];
        if (c.is_exact_zero()) continue;
        prod[d] = PadicScalar::zero(p);
        for (long j = 0; j + 2 <= p; ++j) prod[d - deg + j * step] = prod[d - deg + j * step] - c;
    }
    prod.resize(deg);
    return CycloScalar(a.ring_, std::move(prod));
}

CycloScalar CycloScalar::scaled(const PadicScalar& s) const {
    std::vector<PadicScalar> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = c_[i] * s;
    return CycloScalar(ring_, std::move(c));
}

CycloScalar CycloScalar::galois(long a) const {
    long order = ring_.root_order();
    a %= order;
    if (a < 0) a += order;
    if (std::gcd(a, ring_.p) != 1)
        throw std::domain_error("CycloScalar: Galois index not a unit");
    CycloScalar acc = zero(ring_);
    long deg = ring_.degree();
    for (long k = 0; k < deg; ++k) {
        if (c_[k].is_exact_zero()) continue;
        CycloScalar basis = root_power(ring_, a * k % order, PadicScalar::kInf);
        acc = acc + basis.scaled(c_[k]);
    }
    return acc;
}

PadicScalar CycloScalar::expect_base() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero_within_precision())
            throw std::runtime_error("CycloScalar: value did not land in the base ring");
    return c_[0];
}

PadicScalar CycloScalar::norm() const {
    long order = ring_.root_order();
    CycloScalar acc = one(ring_, PadicScalar::kInf);
    for (long a = 1; a < order; ++a) {
        if (a % ring_.p == 0) continue;
        acc = acc * galois(a);
    }
    return acc.expect_base();
}

CycloScalar CycloScalar::inverse() const {
    long order = ring_.root_order();
    CycloScalar conj = one(ring_, PadicScalar::kInf);
    bool first = true;
    for (long a = 2; a < order; ++a) {
        if (a % ring_.p == 0) continue;
        CycloScalar g = galois(a);
        if (first) {
            conj = g;
            first = false;
        } else {
            conj = conj * g;
        }
    }
    PadicScalar n = (*this * conj).expect_base();
    return conj.scaled(n.inverse());
}

bool CycloScalar::is_zero_within_precision() const {
    for (const auto& c : c_)
        if (!c.is_zero_within_precision()) return false;
    return true;
}

std::pair<Rat, bool> CycloScalar::valuation() const {
    // write the element over the (xi-1)-adic basis: xi^k = sum_j C(k,j) pi^j;
    // the pi-coordinates have pairwise distinct valuations mod 1, so the
    // minimum is exact whenever its coordinate has known digits
    long deg = ring_.degree();
    std::vector<PadicScalar> d(deg, PadicScalar::zero(ring_.p));
    for (long j = 0; j < deg; ++j) {
        for (long k = j; k < deg; ++k) {
            if (c_[k].is_exact_zero()) continue;
            mpz_class bin = mpz_binom(mpz_class(k), static_cast<unsigned long>(j));
            if (bin == 0) continue;
            d[j] = d[j] + c_[k] * PadicScalar::from_mpz(ring_.p, bin, PadicScalar::kInf);
        }
    }
    Rat best = Rat::inf();
    bool exact = false;
    for (long j = 0; j < deg; ++j) {
        if (d[j].is_exact_zero()) continue;
        Rat v = Rat(d[j].valuation()) + Rat(j, deg);
        if (v < best) {
            best = v;
            exact = d[j].has_known_digits();
        }
    }
    return {best, exact};
}

CycloScalar CycloScalar::sub_int(long k) const {
    long prec = PadicScalar::kInf;
    for (const auto& c : c_)
        if (!c.is_exact_zero()) prec = std::min(prec, c.precision());
    CycloScalar x = *this;
    x.c_[0] = x.c_[0] - PadicScalar::from_int(ring_.p, k, prec);
    return x;
}

CycloScalar CycloScalar::div_mpz(const mpz_class& d) const {
    CycloScalar x = *this;
    for (auto& c : x.c_) c = c.div_mpz(d);
    return x;
}

CycloScalar CycloScalar::one_like(const CycloScalar& x) {
    long prec = PadicScalar::kInf;
    for (const auto& c : x.c_)
        if (!c.is_exact_zero()) prec = std::min(prec, c.precision());
    return one(x.ring_, prec);
}

std::string CycloScalar::str() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ", ";
        s += c_[i].str();
    }
    return s + "]";
}

bool equal_within_precision(const CycloScalar& a, const CycloScalar& b) {
    return (a - b).is_zero_within_precision();
}

// ---------------------------------------------------------------------------

long DirichletChar::generator(long p, int level) {
    long mod = 1;
    for (int i = 0; i < level; ++i) mod *= p;
    long phi = mod / p * (p - 1);
    for (long g = 2; g < mod; ++g) {
        if (g % p == 0) continue;
        // g generates iff g^(phi/q) != 1 for every prime q | phi
        bool ok = true;
        for (long q = 2; q <= phi; ++q) {
            if (phi % q != 0) continue;
            bool qprime = true;
            for (long r = 2; r * r <= q; ++r)
                if (q % r == 0) { qprime = false; break; }
            if (!qprime) continue;
            long e = phi / q;
            long acc = 1, base = g % mod;
            while (e) {
                if (e & 1) acc = acc * base % mod;
                base = base * base % mod;
                e >>= 1;
            }
            if (acc == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::runtime_error("DirichletChar: no generator found");
}

DirichletChar::DirichletChar(long p, int level, long exponent, long prec)
    : p_(p), level_(level) {
    modulus_ = 1;
    for (int i = 0; i < level; ++i) modulus_ *= p;
    long phi = modulus_ / p * (p - 1);
    exponent_ = ((exponent % phi) + phi) % phi;
    CycloRing ring{p, level};
    // zeta = teich(g)^* xi^p decomposition: build zeta as the product of a
    // (p-1)-th root (Teichmuller) and a p^(n-1)-th root (xi^p)
    long g = generator(p, level);
    long wild = modulus_ / p;          // p^(n-1)
    PadicScalar omega = teichmuller(p, g % p, prec);
    table_.assign(modulus_, CycloScalar::zero(ring));
    // enumerate powers of g
    long a = 1;
    for (long k = 0; k < phi; ++k) {
        long m = exponent_ * k;
        // tame component: omega^(m mod p-1); wild component: (xi^p)^(m mod p^(n-1))
        PadicScalar tame = omega.pow(m % (p - 1));
        CycloScalar val = CycloScalar::root_power(ring, p * (m % wild), prec).scaled(tame);
        table_[a] = val;
        a = a * g % modulus_;
    }
}

const CycloScalar& DirichletChar::value(long a) const {
    a %= modulus_;
    if (a < 0) a += modulus_;
    return table_[a];
}

DirichletChar DirichletChar::inverse() const {
    long prec = PadicScalar::kInf;
    for (const auto& v : table_)
        for (const auto& c : v.coeffs())
            if (!c.is_exact_zero()) prec = std::min(prec, c.precision());
    return DirichletChar(p_, level_, -exponent_, prec);
}

int DirichletChar::conductor_level() const {
    // smallest c with chi trivial on units congruent to 1 mod p^c
    for (int c = 0; c <= level_; ++c) {
        long pc = 1;
        for (int i = 0; i < c; ++i) pc *= p_;
        bool trivial = true;
        for (long a = 1; a < modulus_; a += pc) {
            if (a % p_ == 0) continue;
            if (!equal_within_precision(value(a), value(1))) { trivial = false; break; }
        }
        if (trivial) return c;
    }
    return level_;
}

bool DirichletChar::is_odd() const {
    CycloScalar v = value(modulus_ - 1);
    return !equal_within_precision(v, value(1));
}

CycloScalar gauss_sum(const DirichletChar& chi, long prec) {
    CycloRing ring = chi.value_ring();
    CycloScalar acc = CycloScalar::zero(ring);
    for (long a = 1; a < chi.modulus(); ++a) {
        if (a % chi.p() == 0) continue;
        acc = acc + chi.value(a) * CycloScalar::root_power(ring, a, prec);
    }
    return acc;
}

} // namespace gmk
