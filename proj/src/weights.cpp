#include "gmk/weights.hpp"

#include <algorithm>

namespace gmk {

namespace {

// per-level Gauss floor of the i-th inner term binom(w'_n, i) * delta^i:
// each factor (w'_n - j) has level-l floor min(1-l, 0) = 1-l, so the term
// floor is i(1-l) - v_p(i!) + i v(delta)
Rat inner_term_floor(long p, int l, long i, const Rat& vdelta) {
    long vfact = factorial_valuation(p, i);
    return Rat(i) * (Rat(1 - l) + vdelta) - Rat(vfact);
}

std::array<Rat, IwasawaSeries::kLevels> inner_tail_floors(long p, int n, int I,
                                                          const Rat& vdelta) {
    std::array<Rat, IwasawaSeries::kLevels> eps;
    for (int l = 1; l <= IwasawaSeries::kLevels; ++l) {
        if (vdelta.is_inf()) {
            eps[l - 1] = Rat::inf();
            continue;
        }
        // the envelope i((1-l) + vdelta - 1/(p-1)) must increase for the scan to settle
        Rat rate = Rat(1 - l) + vdelta - Rat(1, p - 1);
        if (!(rate > Rat(0))) {
            eps[l - 1] = Rat(-PadicScalar::kInf); // no certificate at this level
            continue;
        }
        Rat best = Rat::inf();
        for (long i = I + 1;; ++i) {
            best = rat_min(best, inner_term_floor(p, l, i, vdelta));
            if (Rat(i) * rate > best && i > I + 2) break;
            if (i > I + 100000)
                throw std::runtime_error("inner_tail_floors: scan did not settle");
        }
        eps[l - 1] = best;
    }
    return eps;
}

} // namespace

int univ_char_terms_for(long p, int n, long digits) {
    // smallest I with min_{i>I} (i - v_p(i!)) >= digits + 1 (floors at level n
    // with v(delta) >= n give i(1-n) - v(i!) + i n = i - v(i!))
    for (int I = 1; I < 4000; ++I) {
        bool ok = true;
        for (long i = I + 1; i <= (digits + 2) * (p - 1) + I + 8; ++i) {
            if (i - factorial_valuation(p, i) < digits + 1) { ok = false; break; }
        }
        if (ok) return I;
    }
    throw std::runtime_error("univ_char_terms_for: no cutoff found");
}

IwasawaSeries eval_univ_char(long p, int n, const PadicScalar& beta, int trunc, int I,
                             long prec) {
    if (beta.prime() != p) throw std::invalid_argument("eval_univ_char: prime mismatch");
    PadicScalar one = PadicScalar::from_int(p, 1, prec);
    PadicScalar bm1 = beta - one;
    if (!bm1.is_zero_within_precision() && bm1.valuation() < 1)
        throw std::domain_error("eval_univ_char: beta not in 1 + pZ_p");
    long q = 1;
    for (int i = 1; i < n; ++i) q *= p;
    if (trunc < q) throw std::invalid_argument("eval_univ_char: truncation below p^(n-1)");
    if (I < 1) throw std::invalid_argument("eval_univ_char: inner cutoff must be >= 1");

    // residue-disk indicators 1_{exp(jp) + p^n Z_p}: exactly one fires
    long fired = -1;
    PadicScalar ej = PadicScalar::zero(p);
    for (long j = 0; j < q; ++j) {
        PadicScalar e = padic_exp(PadicScalar::from_int(p, j * p, prec));
        PadicScalar diff = beta - e;
        bool in_disk = diff.is_zero_within_precision() || diff.valuation() >= n;
        if (in_disk) {
            if (fired >= 0)
                throw std::runtime_error("eval_univ_char: indicator fired twice");
            fired = j;
            ej = e;
        }
    }
    if (fired < 0) throw std::runtime_error("eval_univ_char: no indicator fired");

    PadicScalar delta = (beta - ej) / ej;
    Rat vdelta = delta.is_exact_zero()
                     ? Rat::inf()
                     : Rat(delta.has_known_digits() ? delta.valuation() : delta.precision());

    IwasawaSeries wprime = build_wn_prime(p, n, trunc, prec);
    IwasawaSeries inner = IwasawaSeries::constant(p, n, trunc, PadicScalar::from_int(p, 1, prec));
    if (!delta.is_exact_zero()) {
        IwasawaSeries binom = IwasawaSeries::constant(p, n, trunc, PadicScalar::from_int(p, 1, prec));
        PadicScalar dpow = PadicScalar::from_int(p, 1, prec);
        for (long i = 1; i <= I; ++i) {
            binom = (binom * wprime.sub_int(i - 1)).div_mpz(mpz_class(i));
            dpow = dpow * delta;
            inner = inner + binom.scaled(dpow);
        }
    }
    IwasawaSeries out = IwasawaSeries::one_plus_T_pow(p, n, trunc, fired, prec) * inner;
    out.fold_error(inner_tail_floors(p, n, I, vdelta));
    return out;
}

WeightChar WeightChar::classical(long p, long k, long prec) {
    WeightChar w;
    w.kind_ = Kind::Classical;
    w.p_ = p;
    w.k_ = k;
    w.prec_ = prec;
    w.finite_part_.assign(p - 1, PadicScalar::from_int(p, 1, prec));
    return w;
}

WeightChar WeightChar::finite_order(long p, int level, long zeta_exp, long prec) {
    WeightChar w;
    w.kind_ = Kind::FiniteOrder;
    w.p_ = p;
    w.level_ = level;
    w.zeta_exp_ = zeta_exp;
    w.prec_ = prec;
    w.finite_part_.assign(p - 1, PadicScalar::from_int(p, 1, prec));
    return w;
}

WeightChar WeightChar::universal(long p, int level, int trunc, long prec) {
    WeightChar w;
    w.kind_ = Kind::Universal;
    w.p_ = p;
    w.level_ = level;
    w.trunc_ = trunc;
    w.prec_ = prec;
    w.finite_part_.assign(p - 1, PadicScalar::from_int(p, 1, prec));
    return w;
}

WeightChar WeightChar::with_omega_power(long t) const {
    WeightChar w = *this;
    w.omega_pow_ = ((t % (p_ - 1)) + (p_ - 1)) % (p_ - 1);
    for (long a = 1; a < p_; ++a)
        w.finite_part_[a - 1] = teichmuller(p_, a, prec_).pow(w.omega_pow_);
    return w;
}

const PadicScalar& WeightChar::finite_value(long a) const {
    a %= p_;
    if (a < 0) a += p_;
    if (a == 0) throw std::domain_error("WeightChar: finite part at a non-unit");
    return finite_part_[a - 1];
}

WeightChar::Value WeightChar::eval(const PadicScalar& beta) const {
    if (beta.is_exact_zero() || !beta.has_known_digits() || beta.valuation() != 0)
        throw std::domain_error("WeightChar: evaluation requires a unit");
    // split beta = omega(beta) <beta>
    mpz_class rep = beta.to_mpz();
    long a = mpz_class(rep % p_).get_si();
    PadicScalar omega = teichmuller(p_, a, beta.precision());
    PadicScalar anal = beta / omega; // in 1 + pZ_p
    PadicScalar fin = finite_value(a);

    Value v;
    switch (kind_) {
        case Kind::Classical: {
            v.type = Value::Type::Padic;
            v.s = anal.pow(k_) * fin;
            return v;
        }
        case Kind::FiniteOrder: {
            // <beta> = exp(alpha p); the character sends it to xi^(zeta_exp alpha)
            PadicScalar alpha = padic_log1p(anal - PadicScalar::from_int(p_, 1, prec_))
                                    .div_mpz(mpz_class(p_));
            long order = 1;
            for (int i = 1; i < level_; ++i) order *= p_;
            long am = 0;
            if (alpha.has_known_digits() && alpha.valuation() >= 0)
                am = mpz_class(alpha.to_mpz() % order).get_si();
            CycloRing ring{p_, level_ - 1};
            if (level_ == 1) { // order-1 character: value is the finite part
                v.type = Value::Type::Padic;
                v.s = fin;
                return v;
            }
            v.type = Value::Type::Cyclo;
            v.c = CycloScalar::root_power(ring, zeta_exp_ * am, prec_).scaled(fin);
            return v;
        }
        case Kind::Universal: {
            v.type = Value::Type::Series;
            int I = univ_char_terms_for(p_, level_, std::min(prec_, 24L));
            v.w = eval_univ_char(p_, level_, anal, trunc_, I, prec_).scaled(fin);
            return v;
        }
    }
    throw std::logic_error("WeightChar: unreachable");
}

WeightChar weight_map_k(const WeightChar& r, const WeightChar& nu) {
    if (r.kind() != WeightChar::Kind::Classical || nu.kind() != WeightChar::Kind::Classical)
        throw std::domain_error("weight_map_k: classical characters only");
    if (r.prime() != nu.prime()) throw std::invalid_argument("weight_map_k: prime mismatch");
    return WeightChar::classical(r.prime(), nu.classical_exponent() - 2 * r.classical_exponent(),
                                 std::min(r.precision(), nu.precision()));
}

std::vector<long> weight_map_exponents(const std::vector<long>& r, long nu) {
    std::vector<long> k(r.size());
    for (size_t i = 0; i < r.size(); ++i) k[i] = nu - 2 * r[i];
    return k;
}

} // namespace gmk
