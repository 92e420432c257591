#pragma once

#include <map>

#include "gmk/cyclo.hpp"
#include "gmk/iwasawa.hpp"
#include "gmk/padic.hpp"

namespace gmk {

// coefficient-ring helpers shared by the expansion containers
inline PadicScalar scale_coeff(const PadicScalar& c, const PadicScalar& s) { return c * s; }
inline CycloScalar scale_coeff(const CycloScalar& c, const PadicScalar& s) { return c.scaled(s); }
inline IwasawaSeries scale_coeff(const IwasawaSeries& c, const PadicScalar& s) {
    return c.scaled(s);
}

inline long coeff_prime(const PadicScalar& c) { return c.prime(); }
inline long coeff_prime(const CycloScalar& c) { return c.ring().p; }
inline long coeff_prime(const IwasawaSeries& c) { return c.prime(); }

inline bool structural_zero(const PadicScalar& c) { return c.is_exact_zero(); }
inline bool structural_zero(const CycloScalar& c) {
    for (const auto& x : c.coeffs())
        if (!x.is_exact_zero()) return false;
    return true;
}
inline bool structural_zero(const IwasawaSeries& c) {
    for (int l = 1; l <= IwasawaSeries::kLevels; ++l)
        if (!c.tail_floor(l).is_inf()) return false;
    for (const auto& x : c.coeffs())
        if (!x.is_exact_zero()) return false;
    return true;
}

// Finite q-expansion sum_nu a_nu (1+q)^nu with exponents in [0, window).
template <class C>
struct QExpansion {
    long window = 0;
    C proto; // zero of the coefficient ring
    std::map<long, C> terms;

    QExpansion() = default;
    QExpansion(long window_, C proto_) : window(window_), proto(std::move(proto_)) {}

    long prime() const { return coeff_prime(proto); }

    void add_term(long nu, const C& c) {
        if (nu < 0 || nu >= window)
            throw std::domain_error("QExpansion: exponent outside the window");
        auto it = terms.find(nu);
        if (it == terms.end())
            terms.emplace(nu, c);
        else
            it->second = it->second + c;
        trim();
    }
    void trim() {
        for (auto it = terms.begin(); it != terms.end();)
            it = structural_zero(it->second) ? terms.erase(it) : std::next(it);
    }
    bool is_zero_within_precision() const {
        for (const auto& [nu, c] : terms)
            if (!c.is_zero_within_precision()) return false;
        return true;
    }
};

template <class C>
QExpansion<C> operator+(const QExpansion<C>& a, const QExpansion<C>& b) {
    QExpansion<C> r(std::max(a.window, b.window), a.proto);
    r.terms = a.terms;
    for (const auto& [nu, c] : b.terms) {
        auto it = r.terms.find(nu);
        if (it == r.terms.end())
            r.terms.emplace(nu, c);
        else
            it->second = it->second + c;
    }
    r.trim();
    return r;
}

template <class C>
QExpansion<C> qexp_scaled(const QExpansion<C>& a, const PadicScalar& s) {
    QExpansion<C> r(a.window, a.proto);
    for (const auto& [nu, c] : a.terms) r.terms.emplace(nu, scale_coeff(c, s));
    r.trim();
    return r;
}

template <class C>
QExpansion<C> operator-(const QExpansion<C>& a, const QExpansion<C>& b) {
    QExpansion<C> nb = b;
    for (auto& [nu, c] : nb.terms) c = -c;
    return a + nb;
}

// theta = (1+q) d/dq: multiplies the (1+q)^nu term by nu
template <class C>
QExpansion<C> derive(const QExpansion<C>& f) {
    QExpansion<C> r(f.window, f.proto);
    for (const auto& [nu, c] : f.terms) {
        if (nu == 0) continue;
        r.terms.emplace(nu, scale_coeff(c, PadicScalar::from_int(f.prime(), nu, PadicScalar::kInf)));
    }
    r.trim();
    return r;
}

// U: a_nu -> a_{p nu}
template <class C>
QExpansion<C> u_op(const QExpansion<C>& f) {
    long p = f.prime();
    QExpansion<C> r(f.window, f.proto);
    for (const auto& [nu, c] : f.terms)
        if (nu % p == 0) r.terms.emplace(nu / p, c);
    r.trim();
    return r;
}

// V: exponent nu -> p nu; overflow of the window is an error
template <class C>
QExpansion<C> v_op(const QExpansion<C>& f) {
    long p = f.prime();
    QExpansion<C> r(f.window, f.proto);
    for (const auto& [nu, c] : f.terms) {
        if (p * nu >= f.window)
            throw std::domain_error("v_op: exponent leaves the window");
        r.terms.emplace(p * nu, c);
    }
    r.trim();
    return r;
}

// p-depletion (1 - V U): zeroes exactly the p-divisible exponents
template <class C>
QExpansion<C> deplete(const QExpansion<C>& f) {
    long p = f.prime();
    QExpansion<C> r(f.window, f.proto);
    for (const auto& [nu, c] : f.terms)
        if (nu % p != 0) r.terms.emplace(nu, c);
    r.trim();
    return r;
}

QExpansion<CycloScalar> inline embed_cyclo(const QExpansion<PadicScalar>& f, CycloRing ring) {
    QExpansion<CycloScalar> r(f.window, CycloScalar::zero(ring));
    for (const auto& [nu, c] : f.terms)
        r.terms.emplace(nu, CycloScalar::from_padic(ring, c));
    return r;
}

// coefficientwise twist a_nu -> chi(nu) a_nu
inline QExpansion<CycloScalar> theta_chi_direct(const QExpansion<CycloScalar>& f,
                                                const DirichletChar& chi) {
    if (!(f.proto.ring() == chi.value_ring()))
        throw std::invalid_argument("theta_chi_direct: coefficient ring mismatch");
    QExpansion<CycloScalar> r(f.window, f.proto);
    for (const auto& [nu, c] : f.terms) {
        if (nu % chi.p() == 0) continue;
        r.terms.emplace(nu, c * chi.value(nu));
    }
    r.trim();
    return r;
}

// isogeny substitution (1+q) -> xi^j (1+q): a_nu -> xi^{j nu} a_nu
inline QExpansion<CycloScalar> t_j_pullback(const QExpansion<CycloScalar>& f, long j,
                                            long prec) {
    QExpansion<CycloScalar> r(f.window, f.proto);
    CycloRing ring = f.proto.ring();
    for (const auto& [nu, c] : f.terms)
        r.terms.emplace(nu, c * CycloScalar::root_power(ring, j * nu, prec));
    r.trim();
    return r;
}

// Gauss-sum average realisation of the twist; must agree with the direct form
inline QExpansion<CycloScalar> theta_chi_avg(const QExpansion<CycloScalar>& f,
                                             const DirichletChar& chi, long prec) {
    DirichletChar chi_inv = chi.inverse();
    CycloScalar g = gauss_sum(chi_inv, prec);
    if (g.is_zero_within_precision())
        throw std::domain_error("theta_chi_avg: Gauss sum not invertible");
    CycloScalar ginv = g.inverse();
    QExpansion<CycloScalar> acc(f.window, f.proto);
    for (long j = 1; j < chi.modulus(); ++j) {
        if (j % chi.p() == 0) continue;
        QExpansion<CycloScalar> part = t_j_pullback(f, j, prec);
        for (auto& [nu, c] : part.terms) c = c * chi_inv.value(j);
        acc = acc + part;
    }
    for (auto& [nu, c] : acc.terms) c = c * ginv;
    acc.trim();
    return acc;
}

template <class C>
bool equal_within_precision(const QExpansion<C>& a, const QExpansion<C>& b) {
    return (a - b).is_zero_within_precision();
}

} // namespace gmk
