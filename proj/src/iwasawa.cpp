#include "gmk/iwasawa.hpp"

#include <algorithm>

namespace gmk {

IwasawaSeries::IwasawaSeries(long p, int level, int trunc)
    : p_(p), level_(level), trunc_(trunc), c_(trunc + 1, PadicScalar::zero(p)) {
    if (level < 1 || level > kLevels)
        throw std::invalid_argument("IwasawaSeries: level out of range");
    if (trunc < 1) throw std::invalid_argument("IwasawaSeries: truncation too small");
}

long IwasawaSeries::pl(int level) const {
    long q = 1;
    for (int i = 1; i < level; ++i) q *= p_;
    return q;
}

IwasawaSeries IwasawaSeries::zero(long p, int level, int trunc) {
    return IwasawaSeries(p, level, trunc);
}

IwasawaSeries IwasawaSeries::constant(long p, int level, int trunc, const PadicScalar& c) {
    IwasawaSeries s(p, level, trunc);
    s.c_[0] = c;
    return s;
}

IwasawaSeries IwasawaSeries::variable_T(long p, int level, int trunc, long prec) {
    IwasawaSeries s(p, level, trunc);
    s.c_[1] = PadicScalar::from_int(p, 1, prec);
    return s;
}

IwasawaSeries IwasawaSeries::one_plus_T_pow(long p, int level, int trunc, long j, long prec) {
    if (j < 0 || j > trunc)
        throw std::invalid_argument("one_plus_T_pow: exponent outside the truncation window");
    IwasawaSeries s(p, level, trunc);
    for (long d = 0; d <= j; ++d)
        s.c_[d] = PadicScalar::from_mpz(
            p, mpz_binom(mpz_class(j), static_cast<unsigned long>(d)), prec);
    return s;
}

IwasawaSeries IwasawaSeries::log_one_plus_T(long p, int level, int trunc, long prec) {
    IwasawaSeries s(p, level, trunc);
    for (long d = 1; d <= trunc; ++d) {
        mpz_class num = (d % 2 == 0) ? mpz_class(-1) : mpz_class(1);
        s.c_[d] = PadicScalar::from_ratio(p, num, mpz_class(d), prec);
    }
    // analytic tail floors: min over d > trunc of (-v_p(d) + d/p^(l-1))
    for (int l = 1; l <= kLevels; ++l) {
        long q = 1;
        for (int i = 1; i < l; ++i) q *= p;
        Rat best = Rat::inf();
        long d = trunc + 1;
        while (true) {
            long vd = 0;
            for (long m = d; m % p == 0; m /= p) ++vd;
            Rat h = Rat(d, q) - Rat(vd);
            best = rat_min(best, h);
            // beyond this point h(d) >= d/q - (log_p(d)+1) can no longer dip below best
            long logd = 0;
            for (long m = 1; m <= d; m *= p) ++logd;
            if (!best.is_inf() && Rat(d, q) - Rat(logd + 1) > best && d > trunc + q) break;
            ++d;
            if (d > trunc + 4000000L)
                throw std::runtime_error("log_one_plus_T: tail scan did not settle");
        }
        s.tail_[l - 1] = best;
    }
    return s;
}

IwasawaSeries operator+(const IwasawaSeries& a, const IwasawaSeries& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("IwasawaSeries: prime mismatch");
    IwasawaSeries r(a.p_, std::max(a.level_, b.level_), std::min(a.trunc_, b.trunc_));
    for (int d = 0; d <= r.trunc_; ++d) r.c_[d] = a.c_[d] + b.c_[d];
    for (int l = 0; l < IwasawaSeries::kLevels; ++l)
        r.tail_[l] = rat_min(a.tail_[l], b.tail_[l]);
    // coefficients dropped by a narrower truncation join the tail
    if (a.trunc_ != b.trunc_) {
        const IwasawaSeries& wide = a.trunc_ > b.trunc_ ? a : b;
        for (int d = r.trunc_ + 1; d <= wide.trunc_; ++d) {
            if (wide.c_[d].is_exact_zero()) continue;
            for (int l = 1; l <= IwasawaSeries::kLevels; ++l) {
                long fl = wide.c_[d].has_known_digits() ? wide.c_[d].valuation()
                                                        : wide.c_[d].precision();
                r.tail_[l - 1] = rat_min(r.tail_[l - 1], Rat(fl) + Rat(d, r.pl(l)));
            }
        }
    }
    return r;
}

IwasawaSeries IwasawaSeries::operator-() const {
    IwasawaSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

IwasawaSeries operator-(const IwasawaSeries& a, const IwasawaSeries& b) { return a + (-b); }

Rat IwasawaSeries::gauss_floor(int level) const {
    Rat best = tail_.at(level - 1);
    long q = pl(level);
    for (int d = 0; d <= trunc_; ++d) {
        if (c_[d].is_exact_zero()) continue;
        long fl = c_[d].has_known_digits() ? c_[d].valuation() : c_[d].precision();
        best = rat_min(best, Rat(fl) + Rat(d, q));
    }
    return best;
}

IwasawaSeries operator*(const IwasawaSeries& a, const IwasawaSeries& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("IwasawaSeries: prime mismatch");
    IwasawaSeries r(a.p_, std::max(a.level_, b.level_), std::min(a.trunc_, b.trunc_));
    for (int i = 0; i <= a.trunc_; ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (int j = 0; j <= b.trunc_ && i + j <= r.trunc_; ++j) {
            if (b.c_[j].is_exact_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
    }
    // degree bookkeeping: if both factors are exact polynomials fitting the
    // window, the product is exact too
    auto degree_of = [](const IwasawaSeries& s) {
        int deg = -1;
        for (int d = 0; d <= s.trunc_; ++d)
            if (!s.c_[d].is_exact_zero()) deg = d;
        return deg;
    };
    bool exact = true;
    for (int l = 0; l < IwasawaSeries::kLevels; ++l)
        if (!a.tail_[l].is_inf() || !b.tail_[l].is_inf()) exact = false;
    if (exact && degree_of(a) + degree_of(b) <= r.trunc_) return r;
    for (int l = 1; l <= IwasawaSeries::kLevels; ++l)
        r.tail_[l - 1] = a.gauss_floor(l) + b.gauss_floor(l);
    return r;
}

IwasawaSeries IwasawaSeries::scaled(const PadicScalar& s) const {
    IwasawaSeries r = *this;
    for (auto& c : r.c_) c = c * s;
    if (s.is_exact_zero()) {
        for (auto& t : r.tail_) t = Rat::inf();
        return r;
    }
    long fl = s.has_known_digits() ? s.valuation() : s.precision();
    for (auto& t : r.tail_)
        if (!t.is_inf()) t = t + Rat(fl);
    return r;
}

IwasawaSeries IwasawaSeries::div_scalar(const PadicScalar& s) const {
    if (!s.has_known_digits())
        throw std::domain_error("IwasawaSeries: division by scalar without known digits");
    IwasawaSeries r = *this;
    for (auto& c : r.c_) c = c / s;
    for (auto& t : r.tail_)
        if (!t.is_inf()) t = t - Rat(s.valuation());
    return r;
}

IwasawaSeries IwasawaSeries::sub_int(long k) const {
    IwasawaSeries r = *this;
    long prec = PadicScalar::kInf;
    for (const auto& c : c_)
        if (!c.is_exact_zero()) prec = std::min(prec, c.precision());
    r.c_[0] = r.c_[0] - PadicScalar::from_int(p_, k, prec);
    return r;
}

IwasawaSeries IwasawaSeries::div_mpz(const mpz_class& d) const {
    long prec = PadicScalar::kInf;
    for (const auto& c : c_)
        if (!c.is_exact_zero()) prec = std::min(prec, c.precision());
    long work = prec >= PadicScalar::kInf ? PadicScalar::kInf
                                          : std::min(prec + 64, PadicScalar::kInf);
    return div_scalar(PadicScalar::from_mpz(p_, d, work));
}

IwasawaSeries IwasawaSeries::one_like(const IwasawaSeries& x) {
    long prec = PadicScalar::kInf;
    for (const auto& c : x.c_)
        if (!c.is_exact_zero()) prec = std::min(prec, c.precision());
    return constant(x.p_, x.level_, x.trunc_, PadicScalar::from_int(x.p_, 1, prec));
}

bool IwasawaSeries::is_zero_within_precision() const {
    for (const auto& c : c_)
        if (!c.is_zero_within_precision()) return false;
    return true;
}

Rat IwasawaSeries::certified_floor(long d) const {
    if (d <= trunc_) {
        const PadicScalar& c = c_[d];
        if (c.is_exact_zero()) return Rat::inf();
        return Rat(c.has_known_digits() ? c.valuation() : c.precision());
    }
    Rat best = Rat(-PadicScalar::kInf);
    for (int l = 1; l <= kLevels; ++l) {
        if (tail_[l - 1].is_inf()) return Rat::inf(); // exact polynomial: nothing beyond D
        best = rat_max(best, tail_[l - 1] - Rat(d, pl(l)));
    }
    return best;
}

bool IwasawaSeries::is_member_certified(long shift, int level) const {
    long q = pl(level);
    for (int d = 0; d <= trunc_; ++d) {
        const PadicScalar& c = c_[d];
        if (c.is_exact_zero()) continue;
        long fl = c.has_known_digits() ? c.valuation() : c.precision();
        if (fl < shift - d / q) return false;
    }
    return !(tail_[level - 1] < Rat(shift));
}

void IwasawaSeries::fold_error(const std::array<Rat, kLevels>& eps) {
    for (int d = 0; d <= trunc_; ++d) {
        Rat best = Rat(-PadicScalar::kInf);
        for (int l = 1; l <= kLevels; ++l) {
            if (eps[l - 1].is_inf()) { best = Rat::inf(); break; }
            best = rat_max(best, eps[l - 1] - Rat(d, pl(l)));
        }
        if (best.is_inf()) continue;
        c_[d] = c_[d].with_prec_cap(best.ceil());
    }
    for (int l = 0; l < kLevels; ++l) tail_[l] = rat_min(tail_[l], eps[l]);
}

std::string IwasawaSeries::str() const {
    std::string s = "[";
    for (int d = 0; d <= trunc_; ++d) {
        if (d) s += ", ";
        s += c_[d].str();
    }
    s += "]";
    for (int l = 0; l < kLevels; ++l) s += " t" + std::to_string(l + 1) + "=" + tail_[l].str();
    return s;
}

bool equal_within_precision(const IwasawaSeries& a, const IwasawaSeries& b) {
    return (a - b).is_zero_within_precision();
}

IwasawaSeries build_un(long p, int n, int trunc, long prec) {
    long q = 1;
    for (int i = 1; i < n; ++i) q *= p;
    if (trunc < q) throw std::invalid_argument("build_un: truncation below p^(n-1)");
    IwasawaSeries u = IwasawaSeries::log_one_plus_T(p, n, trunc, prec);
    if (!u.is_member_certified(2 - n, n))
        throw std::runtime_error("build_un: membership certificate failed");
    return u;
}

IwasawaSeries build_wn_prime(long p, int n, int trunc, long prec) {
    IwasawaSeries u = build_un(p, n, trunc, prec);
    IwasawaSeries w = u.div_scalar(PadicScalar::from_int(p, p, PadicScalar::kInf));
    if (!w.is_member_certified(1 - n, n))
        throw std::runtime_error("build_wn_prime: membership certificate failed");
    return w;
}

Rat WeightPoint::valuation_lb() const {
    if (cyclotomic) return t_cyclo.valuation().first;
    if (t_padic.is_exact_zero()) return Rat::inf();
    return Rat(t_padic.has_known_digits() ? t_padic.valuation() : t_padic.precision());
}

bool WeightPoint::legal_for_level(long p, int level) const {
    long q = 1;
    for (int i = 1; i < level; ++i) q *= p;
    return !(valuation_lb() < Rat(1, q));
}

namespace {

// certified floor of the unknown tail after substituting a value of
// valuation vt: best over levels of tail(l) + (D+1)(vt - 1/p^(l-1))
Rat tail_at_point(const IwasawaSeries& s, const Rat& vt) {
    Rat best = Rat(-PadicScalar::kInf);
    for (int l = 1; l <= IwasawaSeries::kLevels; ++l) {
        long q = 1;
        for (int i = 1; i < l; ++i) q *= s.prime();
        if (vt.is_inf()) return Rat::inf();
        Rat slope = vt - Rat(1, q);
        if (slope < Rat(0)) continue; // point outside the level-l disk
        if (s.tail_floor(l).is_inf()) return Rat::inf();
        best = rat_max(best, s.tail_floor(l) + Rat(s.trunc() + 1) * slope);
    }
    return best;
}

} // namespace

PadicScalar specialize(const IwasawaSeries& s, const PadicScalar& t) {
    WeightPoint pt = WeightPoint::at(t);
    if (!pt.legal_for_level(s.prime(), s.level()))
        throw std::domain_error("specialize: point outside the disk of the series' level");
    if (t.is_exact_zero()) return s.coeff(0);
    PadicScalar acc = PadicScalar::zero(s.prime());
    for (int d = s.trunc(); d >= 0; --d) acc = acc * t + s.coeff(d);
    Rat eps = tail_at_point(s, pt.valuation_lb());
    if (!eps.is_inf()) acc = acc.with_prec_cap(eps.ceil());
    return acc;
}

CycloScalar specialize(const IwasawaSeries& s, const CycloScalar& t) {
    WeightPoint pt = WeightPoint::at(t);
    if (!pt.legal_for_level(s.prime(), s.level()))
        throw std::domain_error("specialize: point outside the disk of the series' level");
    CycloScalar acc = CycloScalar::zero(t.ring());
    for (int d = s.trunc(); d >= 0; --d)
        acc = acc * t + CycloScalar::from_padic(t.ring(), s.coeff(d));
    Rat eps = tail_at_point(s, pt.valuation_lb());
    if (!eps.is_inf()) {
        long cap = eps.floor(); // coordinates of a v >= eps element have v >= floor(eps)
        std::vector<PadicScalar> c;
        for (const auto& x : acc.coeffs()) c.push_back(x.with_prec_cap(cap));
        acc = CycloScalar(t.ring(), std::move(c));
    }
    return acc;
}

} // namespace gmk
