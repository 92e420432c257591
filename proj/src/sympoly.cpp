#include "gmk/sympoly.hpp"

namespace gmk {

void SymPoly::trim() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

SymPoly SymPoly::constant(long c) { return monomial(c, 0, 0, 0); }

SymPoly SymPoly::monomial(long c, int a, int b, int m) {
    SymPoly s;
    if (c != 0) s.terms_[{a, b, m}] = c;
    return s;
}

SymPoly operator+(const SymPoly& x, const SymPoly& y) {
    SymPoly r = x;
    for (const auto& [k, c] : y.terms_) r.terms_[k] += c;
    r.trim();
    return r;
}

SymPoly SymPoly::operator-() const {
    SymPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

SymPoly operator-(const SymPoly& x, const SymPoly& y) { return x + (-y); }

SymPoly operator*(const SymPoly& x, const SymPoly& y) {
    SymPoly r;
    for (const auto& [kx, cx] : x.terms_)
        for (const auto& [ky, cy] : y.terms_) {
            SymPoly::Key k{std::get<0>(kx) + std::get<0>(ky), std::get<1>(kx) + std::get<1>(ky),
                           std::get<2>(kx) + std::get<2>(ky)};
            r.terms_[k] += cx * cy;
        }
    r.trim();
    return r;
}

SymPoly SymPoly::scaled(const mpz_class& c) const {
    SymPoly r = *this;
    for (auto& [k, v] : r.terms_) v *= c;
    r.trim();
    return r;
}

SymPoly SymPoly::pow(long e) const {
    SymPoly r = constant(1);
    SymPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return r;
}

mpz_class SymPoly::eval(const mpz_class& A, const mpz_class& B, const mpz_class& M) const {
    mpz_class acc = 0;
    for (const auto& [k, c] : terms_) {
        mpz_class t = c;
        t *= mpz_pow(A, std::get<0>(k));
        t *= mpz_pow(B, std::get<1>(k));
        t *= mpz_pow(M, std::get<2>(k));
        acc += t;
    }
    return acc;
}

std::string SymPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += c.get_str();
        if (std::get<0>(k)) s += "*A^" + std::to_string(std::get<0>(k));
        if (std::get<1>(k)) s += "*B^" + std::to_string(std::get<1>(k));
        if (std::get<2>(k)) s += "*M^" + std::to_string(std::get<2>(k));
    }
    return s;
}

SymPoly falling_factorial_M(long shift, long len) {
    SymPoly r = SymPoly::constant(1);
    for (long t = 0; t < len; ++t)
        r = r * (SymPoly::var_M() + SymPoly::constant(shift - t));
    return r;
}

SymPoly binom_lemma_lhs(long i) {
    SymPoly acc;
    for (long j = 0; j <= i; ++j) {
        for (long k = 0; k <= j; ++k) {
            mpz_class coef = mpz_binom(mpz_class(i), static_cast<unsigned long>(j)) *
                             mpz_binom(mpz_class(j), static_cast<unsigned long>(k));
            if ((i - j) % 2 != 0) coef = -coef;
            SymPoly term = falling_factorial_M(j, k).scaled(coef);
            term = term * SymPoly::var_A().pow(k) * SymPoly::var_B().pow(j);
            acc = acc + term;
        }
    }
    return acc;
}

SymPoly binom_lemma_rhs(long i) {
    SymPoly one_minus_B = SymPoly::constant(1) - SymPoly::var_B();
    SymPoly acc;
    for (long k = 0; k <= i; ++k) {
        for (long j = 0; j <= k; ++j) {
            // k! C(M+k, k-j) = [k!/(k-j)!] * FF_M(k, k-j)
            mpz_class head = 1;
            for (long t = 0; t < j; ++t) head *= (k - t); // k!/(k-j)!
            mpz_class coef = mpz_binom(mpz_class(i), static_cast<unsigned long>(k)) *
                             mpz_binom(mpz_class(i - k), static_cast<unsigned long>(j)) * head;
            // signs: (-1)^i (-AB)^k (-B)^j
            if ((i + k + j) % 2 != 0) coef = -coef;
            SymPoly term = falling_factorial_M(k, k - j).scaled(coef);
            term = term * SymPoly::var_A().pow(k) * SymPoly::var_B().pow(k + j);
            term = term * one_minus_B.pow(i - k - j);
            acc = acc + term;
        }
    }
    return acc;
}

} // namespace gmk
