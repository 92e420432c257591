#include "gmk/unram.hpp"

#include <algorithm>

namespace gmk {

UnramifiedRing UnramifiedRing::quadratic(long p) {
    for (long c = 2; c < p; ++c) {
        // c is a non-residue iff c^((p-1)/2) = -1 mod p
        long e = (p - 1) / 2, acc = 1, base = c % p;
        while (e) {
            if (e & 1) acc = acc * base % p;
            base = base * base % p;
            e >>= 1;
        }
        if (acc == p - 1) return UnramifiedRing{p, 2, {-c, 0}}; // x^2 - c
    }
    throw std::runtime_error("UnramifiedRing: no quadratic non-residue found");
}

UnramifiedScalar::UnramifiedScalar(UnramifiedRing ring, std::vector<PadicScalar> coords)
    : ring_(std::move(ring)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != ring_.f)
        throw std::invalid_argument("UnramifiedScalar: wrong coordinate count");
}

UnramifiedScalar UnramifiedScalar::zero(const UnramifiedRing& ring) {
    return UnramifiedScalar(ring, std::vector<PadicScalar>(ring.f, PadicScalar::zero(ring.p)));
}

UnramifiedScalar UnramifiedScalar::one(const UnramifiedRing& ring, long prec) {
    UnramifiedScalar x = zero(ring);
    x.c_[0] = PadicScalar::from_int(ring.p, 1, prec);
    return x;
}

UnramifiedScalar UnramifiedScalar::from_padic(const UnramifiedRing& ring, const PadicScalar& c) {
    UnramifiedScalar x = zero(ring);
    x.c_[0] = c;
    return x;
}

UnramifiedScalar UnramifiedScalar::gen(const UnramifiedRing& ring, long prec) {
    if (ring.f < 2) throw std::domain_error("UnramifiedScalar: base ring has no generator");
    UnramifiedScalar x = zero(ring);
    x.c_[1] = PadicScalar::from_int(ring.p, 1, prec);
    return x;
}

UnramifiedScalar operator+(const UnramifiedScalar& a, const UnramifiedScalar& b) {
    if (!(a.ring() == b.ring())) throw std::invalid_argument("UnramifiedScalar: ring mismatch");
    std::vector<PadicScalar> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return UnramifiedScalar(a.ring_, std::move(c));
}

UnramifiedScalar UnramifiedScalar::operator-() const {
    std::vector<PadicScalar> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
    return UnramifiedScalar(ring_, std::move(c));
}

UnramifiedScalar operator-(const UnramifiedScalar& a, const UnramifiedScalar& b) {
    return a + (-b);
}

UnramifiedScalar operator*(const UnramifiedScalar& a, const UnramifiedScalar& b) {
    if (!(a.ring() == b.ring())) throw std::invalid_argument("UnramifiedScalar: ring mismatch");
    long p = a.ring_.p;
    int f = a.ring_.f;
    if (f == 1) return UnramifiedScalar(a.ring_, {a.c_[0] * b.c_[0]});
    std::vector<PadicScalar> prod(2 * f - 1, PadicScalar::zero(p));
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) prod[i + j] = prod[i + j] + a.c_[i] * b.c_[j];
    // reduce modulo the monic defining polynomial
    for (int d = 2 * f - 2; d >= f; --d) {
        PadicScalar c = prod[d];
        if (c.is_exact_zero()) continue;
        prod[d] = PadicScalar::zero(p);
        for (int j = 0; j < f; ++j) {
            PadicScalar coef = PadicScalar::from_int(p, a.ring_.poly[j], PadicScalar::kInf);
            prod[d - f + j] = prod[d - f + j] - c * coef;
        }
    }
    prod.resize(f);
    return UnramifiedScalar(a.ring_, std::move(prod));
}

UnramifiedScalar UnramifiedScalar::scaled(const PadicScalar& s) const {
    std::vector<PadicScalar> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = c_[i] * s;
    return UnramifiedScalar(ring_, std::move(c));
}

UnramifiedScalar UnramifiedScalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    UnramifiedScalar r = one(ring_, PadicScalar::kInf);
    UnramifiedScalar base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return r;
}

UnramifiedScalar UnramifiedScalar::conj_quadratic() const {
    // the algebraic conjugate for f = 2: x -> -poly[1] - x
    if (ring_.f != 2) throw std::domain_error("conj_quadratic: degree must be 2");
    PadicScalar b1 = PadicScalar::from_int(ring_.p, ring_.poly[1], PadicScalar::kInf);
    return UnramifiedScalar(ring_, {c_[0] - c_[1] * b1, -c_[1]});
}

UnramifiedScalar UnramifiedScalar::inverse() const {
    if (ring_.f == 1) return UnramifiedScalar(ring_, {c_[0].inverse()});
    UnramifiedScalar conj = conj_quadratic();
    UnramifiedScalar nrm = *this * conj;
    for (size_t i = 1; i < nrm.c_.size(); ++i)
        if (!nrm.c_[i].is_zero_within_precision())
            throw std::runtime_error("UnramifiedScalar: norm did not land in the base");
    return conj.scaled(nrm.c_[0].inverse());
}

bool UnramifiedScalar::is_zero_within_precision() const {
    for (const auto& c : c_)
        if (!c.is_zero_within_precision()) return false;
    return true;
}

bool UnramifiedScalar::is_unit() const {
    long v = valuation_lb();
    return v == 0;
}

long UnramifiedScalar::valuation_lb() const {
    long best = PadicScalar::kInf;
    for (const auto& c : c_) best = std::min(best, c.valuation());
    return best;
}

std::string UnramifiedScalar::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ", ";
        s += c_[i].str();
    }
    return s + ")";
}

bool equal_within_precision(const UnramifiedScalar& a, const UnramifiedScalar& b) {
    return (a - b).is_zero_within_precision();
}

namespace {

UnramifiedScalar eval_poly(const UnramifiedRing& ring, const UnramifiedScalar& x,
                           bool derivative) {
    // g(x) or g'(x) for the monic defining polynomial
    int f = ring.f;
    UnramifiedScalar acc = UnramifiedScalar::zero(ring);
    UnramifiedScalar xp = UnramifiedScalar::one(ring, PadicScalar::kInf);
    for (int i = 0; i <= f; ++i) {
        long coef = (i == f) ? 1 : ring.poly[i];
        if (derivative) {
            if (i >= 1 && coef * i != 0) {
                UnramifiedScalar term =
                    xp.scaled(PadicScalar::from_int(ring.p, coef * i, PadicScalar::kInf));
                acc = acc + term;
            }
            if (i < f) xp = xp * x;
            continue;
        }
        if (coef != 0)
            acc = acc + xp.scaled(PadicScalar::from_int(ring.p, coef, PadicScalar::kInf));
        if (i < f) xp = xp * x;
    }
    return acc;
}

} // namespace

UnramifiedScalar frobenius(const UnramifiedScalar& x, long prec) {
    const UnramifiedRing& ring = x.ring();
    if (ring.f == 1) return x;
    // Hensel: lift the root x^p mod p of g to an exact root by Newton iteration
    UnramifiedScalar r = UnramifiedScalar::gen(ring, prec).pow(ring.p);
    for (int it = 0; it < prec + 2; ++it) {
        UnramifiedScalar g = eval_poly(ring, r, false);
        if (g.is_zero_within_precision()) break;
        UnramifiedScalar gp = eval_poly(ring, r, true);
        if (!gp.is_unit())
            throw std::domain_error("frobenius: defining polynomial not separable mod p");
        r = r - g * gp.inverse();
    }
    // apply the automorphism coordinate-wise: sum c_i r^i
    UnramifiedScalar acc = UnramifiedScalar::zero(ring);
    UnramifiedScalar rp = UnramifiedScalar::one(ring, PadicScalar::kInf);
    for (int i = 0; i < ring.f; ++i) {
        acc = acc + rp.scaled(x.coords()[i]);
        if (i + 1 < ring.f) rp = rp * r;
    }
    return acc;
}

PadicScalar norm(const UnramifiedScalar& x, long prec) {
    UnramifiedScalar acc = x;
    UnramifiedScalar conj = x;
    for (int i = 1; i < x.ring().f; ++i) {
        conj = frobenius(conj, prec);
        acc = acc * conj;
    }
    for (size_t i = 1; i < acc.coords().size(); ++i)
        if (!acc.coords()[i].is_zero_within_precision())
            throw std::runtime_error("norm: result did not land in the base ring");
    return acc.coords()[0];
}

} // namespace gmk
