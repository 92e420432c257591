#include "gmk/padic.hpp"

#include <algorithm>

namespace gmk {

void PadicScalar::require_same_prime(const PadicScalar& a, const PadicScalar& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
        throw std::invalid_argument("PadicScalar: mixed primes");
}

namespace {
long clamp_prec(long x) { return std::min(x, PadicScalar::kInf); }
} // namespace

void PadicScalar::normalize() {
    if (exact_zero_) {
        unit_is_zero_ = false;
        val_ = kInf;
        prec_ = kInf;
        unit_ = 0;
        return;
    }
    prec_ = clamp_prec(prec_);
    if (unit_ == 0) {
        unit_is_zero_ = true;
        val_ = prec_;
        return;
    }
    if (prec_ >= kInf) {
        // exact value: strip p-powers, no modular reduction
        mpz_class u = unit_;
        while (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p_))) {
            u /= p_;
            ++val_;
        }
        unit_ = u;
        unit_is_zero_ = false;
        return;
    }
    if (prec_ <= val_) {
        // no digits representable
        unit_is_zero_ = true;
        val_ = prec_;
        unit_ = 0;
        return;
    }
    mpz_class mod = mpz_pow_prime(p_, prec_ - val_);
    mpz_class u = unit_ % mod;
    if (u < 0) u += mod;
    if (u == 0) {
        unit_is_zero_ = true;
        val_ = prec_;
        unit_ = 0;
        return;
    }
    // pull p-powers out of the unit
    while (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p_))) {
        u /= p_;
        ++val_;
    }
    if (val_ >= prec_) {
        unit_is_zero_ = true;
        val_ = prec_;
        unit_ = 0;
        return;
    }
    mod = mpz_pow_prime(p_, prec_ - val_);
    unit_ = u % mod;
    unit_is_zero_ = false;
}

PadicScalar PadicScalar::from_mpz(long p, const mpz_class& value, long prec) {
    if (p < 3) throw std::domain_error("PadicScalar: prime must be odd, p > 2");
    if (value == 0) return zero(p);
    PadicScalar x;
    x.p_ = p;
    x.exact_zero_ = false;
    x.val_ = 0;
    x.prec_ = prec;
    x.unit_ = value;
    x.normalize();
    return x;
}

PadicScalar PadicScalar::from_ratio(long p, const mpz_class& num, const mpz_class& den,
                                    long prec) {
    if (den == 0) throw std::domain_error("PadicScalar: zero denominator");
    long work = clamp_prec(prec >= kInf ? kInf : prec + 64); // headroom for the quotient digits
    PadicScalar n = from_mpz(p, num, work);
    PadicScalar d = from_mpz(p, den, work);
    return (n / d).with_prec_cap(prec);
}

PadicScalar PadicScalar::from_unit_val(long p, const mpz_class& unit, long val, long prec) {
    if (p < 3) throw std::domain_error("PadicScalar: prime must be odd, p > 2");
    PadicScalar x;
    x.p_ = p;
    x.exact_zero_ = false;
    x.val_ = val;
    x.prec_ = prec;
    x.unit_ = unit;
    x.normalize();
    return x;
}

PadicScalar PadicScalar::unknown_zero(long p, long prec) {
    PadicScalar x;
    x.p_ = p;
    x.exact_zero_ = false;
    x.unit_is_zero_ = true;
    x.val_ = prec;
    x.prec_ = prec;
    x.unit_ = 0;
    return x;
}

PadicScalar PadicScalar::with_prec_cap(long prec) const {
    if (exact_zero_) {
        if (prec >= kInf) return *this;
        PadicScalar x = *this; // exact zero stays exact under capping
        return x;
    }
    if (prec >= prec_) return *this;
    PadicScalar x = *this;
    x.prec_ = prec;
    x.normalize();
    return x;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    PadicScalar::require_same_prime(a, b);
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    long prec = std::min(a.prec_, b.prec_);
    long v0 = std::min(a.val_, b.val_);
    if (v0 >= prec) return PadicScalar::unknown_zero(a.p_, prec);
    mpz_class acc = 0;
    if (!a.unit_is_zero_) acc += a.unit_ * mpz_pow_prime(a.p_, a.val_ - v0);
    if (!b.unit_is_zero_) acc += b.unit_ * mpz_pow_prime(a.p_, b.val_ - v0);
    return PadicScalar::from_unit_val(a.p_, acc, v0, prec);
}

PadicScalar PadicScalar::operator-() const {
    if (exact_zero_) return *this;
    PadicScalar x = *this;
    if (!x.unit_is_zero_) {
        x.unit_ = -x.unit_;
        x.normalize();
    }
    return x;
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    PadicScalar::require_same_prime(a, b);
    if (a.exact_zero_ || b.exact_zero_) return PadicScalar::zero(a.p_ ? a.p_ : b.p_);
    long rel = std::min(a.rel_precision(), b.rel_precision());
    long val = a.val_ + b.val_;
    if (rel <= 0 || a.unit_is_zero_ || b.unit_is_zero_)
        return PadicScalar::unknown_zero(a.p_, val);
    PadicScalar x;
    x.p_ = a.p_;
    x.exact_zero_ = false;
    x.val_ = val;
    x.prec_ = clamp_prec(rel >= PadicScalar::kInf ? PadicScalar::kInf : val + rel);
    x.unit_ = a.unit_ * b.unit_;
    x.normalize();
    return x;
}

PadicScalar PadicScalar::inverse() const {
    if (exact_zero_) throw std::domain_error("PadicScalar: inverse of exact zero");
    if (unit_is_zero_) throw std::domain_error("PadicScalar: inverse of value with no known digits");
    long rel = rel_precision();
    if (rel >= kInf) {
        if (unit_ == 1 || unit_ == -1) {
            PadicScalar x = *this;
            x.val_ = -val_;
            x.prec_ = kInf;
            return x;
        }
        throw std::domain_error("PadicScalar: inverse of exact value needs a precision cap");
    }
    mpz_class mod = mpz_pow_prime(p_, rel);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::domain_error("PadicScalar: unit not invertible (internal)");
    PadicScalar x;
    x.p_ = p_;
    x.exact_zero_ = false;
    x.val_ = -val_;
    x.prec_ = -val_ + rel;
    x.unit_ = inv;
    x.normalize();
    return x;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
    PadicScalar::require_same_prime(a, b);
    if (b.exact_zero_) throw std::domain_error("PadicScalar: division by exact zero");
    if (a.exact_zero_) return a;
    return a * b.inverse();
}

PadicScalar PadicScalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return from_int(p_ ? p_ : 3, 1, kInf);
    if (exact_zero_) return *this;
    PadicScalar r = from_int(p_, 1, kInf);
    PadicScalar base = *this;
    long ee = e;
    while (ee > 0) {
        if (ee & 1) r = r * base;
        ee >>= 1;
        if (ee > 0) base = base * base;
    }
    return r;
}

PadicScalar PadicScalar::sub_int(long k) const {
    long p = p_ ? p_ : 3;
    return *this - PadicScalar::from_int(p, k, precision());
}

PadicScalar PadicScalar::div_mpz(const mpz_class& d) const {
    if (exact_zero_) return *this;
    long work = clamp_prec(prec_ >= kInf ? kInf : prec_ + 64);
    return *this / PadicScalar::from_mpz(p_, d, work);
}

mpz_class PadicScalar::to_mpz() const {
    if (exact_zero_ || unit_is_zero_) return 0;
    if (val_ < 0) throw std::domain_error("PadicScalar: negative valuation has no integer representative");
    return unit_ * mpz_pow_prime(p_, val_);
}

std::string PadicScalar::str() const {
    if (exact_zero_) return "0";
    if (unit_is_zero_) return "O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    std::string s = unit_.get_str();
    if (val_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(val_);
    s += " + O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    return s;
}

bool equal_within_precision(const PadicScalar& a, const PadicScalar& b) {
    return (a - b).is_zero_within_precision();
}

long factorial_valuation(long p, long h) {
    if (h < 0) throw std::domain_error("factorial_valuation: negative argument");
    long v = 0;
    for (long q = p; q <= h; q *= p) {
        v += h / q;
        if (q > h / p) break;
    }
    return v;
}

PadicScalar padic_exp(const PadicScalar& x) {
    long p = x.prime();
    if (x.is_exact_zero()) return PadicScalar::from_int(p, 1, PadicScalar::kInf);
    if (x.valuation() < 1)
        throw std::domain_error("padic_exp: requires v(x) >= 1");
    long N = x.precision();
    if (!x.has_known_digits()) {
        // exp(O(p^N)) = 1 + O(p^N)
        return PadicScalar::from_int(p, 1, N);
    }
    PadicScalar acc = PadicScalar::from_int(p, 1, N);
    PadicScalar term = acc;
    long vx = x.valuation();
    for (long k = 1;; ++k) {
        term = term * x;
        term = term.div_mpz(mpz_class(k));
        acc = acc + term;
        if (k * vx - factorial_valuation(p, k) >= N && k >= 2) break;
        if (k > 8 * N + 64) throw std::runtime_error("padic_exp: series did not settle");
    }
    return acc.with_prec_cap(N);
}

PadicScalar padic_log1p(const PadicScalar& x) {
    long p = x.prime();
    if (x.is_exact_zero()) return PadicScalar::zero(p);
    if (x.valuation() < 1)
        throw std::domain_error("padic_log1p: requires v(x) >= 1");
    long N = x.precision();
    if (!x.has_known_digits()) return PadicScalar::unknown_zero(p, N);
    PadicScalar acc = PadicScalar::zero(p);
    PadicScalar xpow = PadicScalar::from_int(p, 1, N + 8);
    long vx = x.valuation();
    for (long k = 1;; ++k) {
        xpow = xpow * x;
        PadicScalar term = xpow.div_mpz(mpz_class(k));
        if (k % 2 == 0) term = -term;
        acc = acc + term;
        long vk = 0;
        for (long q = k; q % p == 0; q /= p) ++vk;
        if (k * vx - vk >= N && k >= 2) break;
        if (k > 8 * N + 64) throw std::runtime_error("padic_log1p: series did not settle");
    }
    return acc.with_prec_cap(N);
}

PadicScalar teichmuller(long p, long a, long prec) {
    if (a % p == 0) throw std::domain_error("teichmuller: argument divisible by p");
    mpz_class mod = mpz_pow_prime(p, prec);
    mpz_class x = mpz_class(a) % mod;
    if (x < 0) x += mod;
    for (long k = 0; k < prec + 1; ++k) {
        mpz_class nx;
        mpz_powm(nx.get_mpz_t(), x.get_mpz_t(), mpz_class(p).get_mpz_t(), mod.get_mpz_t());
        if (nx == x) break;
        x = nx;
    }
    return PadicScalar::from_mpz(p, x, prec);
}

} // namespace gmk
