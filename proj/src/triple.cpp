#include "gmk/triple.hpp"

#include <algorithm>

namespace gmk {

namespace {

void require_holomorphic(const NearlyForm<PadicScalar>& s, long k, const char* who) {
    if (!std::holds_alternative<long>(s.weight) || std::get<long>(s.weight) != k)
        throw std::invalid_argument(std::string(who) + ": weight tag mismatch");
    if (s.fil_degree() != 0)
        throw std::invalid_argument(std::string(who) + ": filtration-0 input required");
}

} // namespace

NearlyForm<PadicScalar> triple_t(const TripleWeights& w, const NearlyForm<PadicScalar>& s1,
                                 const NearlyForm<PadicScalar>& s2, long prec) {
    require_holomorphic(s1, w.k1, "triple_t");
    require_holomorphic(s2, w.k2, "triple_t");
    if (s1.geometric != s2.geometric || s1.level != s2.level)
        throw std::invalid_argument("triple_t: incompatible bases");
    long p = s1.prime();
    long m = w.m();
    long M = w.big_m();
    NearlyForm<PadicScalar> acc(w.k3, s1.geometric, s1.level, s1.window + s2.window,
                                PadicScalar::zero(p));
    for (long j = 0; j <= m; ++j) {
        mpz_class coef = mpz_binom(mpz_class(m), static_cast<unsigned long>(j)) *
                         mpz_binom(mpz_class(M - 2), static_cast<unsigned long>(w.k1 + j - 1));
        if (j % 2 != 0) coef = -coef;
        if (coef == 0) continue;
        NearlyForm<PadicScalar> term =
            nearly_mul(nabla_pow(s1, j, prec), nabla_pow(s2, m - j, prec));
        acc = acc + nearly_scaled(term, PadicScalar::from_mpz(p, coef, PadicScalar::kInf));
    }
    return acc;
}

std::vector<mpq_class> correction_coeffs(const TripleWeights& w) {
    long m = w.m();
    if (m < 1) throw std::domain_error("correction_coeffs: m >= 1 required");
    mpz_class denom = mpz_binom(mpz_class(w.k3 - 2), static_cast<unsigned long>(m + w.k2 - 1));
    if (denom == 0)
        throw std::domain_error("correction_coeffs: degenerate binomial C(k3-2, m+k2-1) = 0");
    std::vector<mpq_class> a(m);
    mpz_class partial = 0;
    for (long i = 0; i < m; ++i) {
        partial += mpz_binom(mpz_class(m), static_cast<unsigned long>(i)) *
                   mpz_binom(mpz_class(w.big_m() - 2), static_cast<unsigned long>(w.k1 + i - 1));
        mpq_class v(partial, denom);
        v.canonicalize();
        if ((i + m + 1) % 2 != 0) v = -v;
        a[i] = v;
    }
    return a;
}

ThetaMReport verify_theta_m_identity(const TripleWeights& w, const NearlyForm<PadicScalar>& s1,
                                     const NearlyForm<PadicScalar>& s2, long prec) {
    require_holomorphic(s1, w.k1, "verify_theta_m_identity");
    require_holomorphic(s2, w.k2, "verify_theta_m_identity");
    long p = s1.prime();
    long m = w.m();
    mpz_class denom = mpz_binom(mpz_class(w.k3 - 2), static_cast<unsigned long>(m + w.k2 - 1));
    if (denom == 0)
        throw std::domain_error("verify_theta_m_identity: degenerate binomial");

    NearlyForm<PadicScalar> lhs = nearly_mul(nabla_pow(s1, m, prec), s2);

    PadicScalar lead = PadicScalar::from_int(p, 1, prec + 32).div_mpz(denom);
    if (m % 2 != 0) lead = -lead;
    NearlyForm<PadicScalar> rhs = nearly_scaled(triple_t(w, s1, s2, prec), lead);
    if (m >= 1) {
        std::vector<mpq_class> a = correction_coeffs(w);
        NearlyForm<PadicScalar> corr(w.k3 - 2, s1.geometric, s1.level, s1.window + s2.window,
                                     PadicScalar::zero(p));
        for (long i = 0; i < m; ++i) {
            if (a[i] == 0) continue;
            PadicScalar c = PadicScalar::from_ratio(p, a[i].get_num(), a[i].get_den(), prec + 32);
            NearlyForm<PadicScalar> term =
                nearly_mul(nabla_pow(s1, i, prec), nabla_pow(s2, m - 1 - i, prec));
            corr = corr + nearly_scaled(term, c);
        }
        rhs = rhs + nabla(corr);
    }

    NearlyForm<PadicScalar> residual = lhs - rhs;
    ThetaMReport rep;
    rep.pass = residual.is_zero_within_precision();
    long minprec = PadicScalar::kInf;
    for (const auto& [key, c] : residual.grid) minprec = std::min(minprec, c.precision());
    rep.residual_valuation = minprec;
    rep.detail = rep.pass ? "residual zero within tracked precision" : "residual nonzero";
    return rep;
}

namespace {

PadicScalar p_power(long p, long e, long prec) {
    PadicScalar x = PadicScalar::from_int(p, p, prec + std::max(0L, e) + 8);
    return x.pow(e);
}

EulerFactors collect(const std::vector<PadicScalar>& factors, long p, long prec) {
    EulerFactors r;
    r.factors = factors;
    r.product = PadicScalar::from_int(p, 1, prec);
    r.vanishing = false;
    for (const auto& f : factors) {
        r.product = r.product * f;
        if (f.is_zero_within_precision()) r.vanishing = true;
    }
    return r;
}

} // namespace

EulerFactors euler_E(long p, const EulerSlot& slot, long prec) {
    PadicScalar one = PadicScalar::from_int(p, 1, prec);
    std::vector<PadicScalar> fs;
    if (slot.is_p0) {
        long e = 1 - slot.m0();
        PadicScalar P = p_power(p, e, prec);
        fs = {one - slot.ax * slot.ay * slot.bz * P, one - slot.ax * slot.by * slot.bz * P,
              one - slot.bx * slot.ay * slot.bz * P, one - slot.bx * slot.by * slot.bz * P};
    } else {
        // vector exponent: varpi^(-m-2) means p^(-sum_tau (m_tau + 2))
        long e = 0;
        for (long mt : slot.m_vec()) e -= mt + 2;
        PadicScalar P = p_power(p, e, prec);
        fs = {one - slot.bx * slot.by * slot.az * P, one - slot.ax * slot.by * slot.bz * P,
              one - slot.bx * slot.ay * slot.bz * P, one - slot.bx * slot.by * slot.bz * P};
    }
    return collect(fs, p, prec);
}

EulerFactors euler_E1(long p, const EulerSlot& slot, long prec) {
    PadicScalar one = PadicScalar::from_int(p, 1, prec);
    PadicScalar bz2 = slot.bz * slot.bz;
    std::vector<PadicScalar> fs;
    if (slot.is_p0) {
        long k3 = slot.k3.at(0);
        fs = {one - bz2 * p_power(p, -k3, prec), one - bz2 * p_power(p, 1 - k3, prec)};
    } else {
        long e2 = 0, e1 = 0;
        for (long kt : slot.k3) {
            e2 -= kt + 2;
            e1 -= kt + 1;
        }
        fs = {one - bz2 * p_power(p, e2, prec), one - bz2 * p_power(p, e1, prec)};
    }
    return collect(fs, p, prec);
}

std::vector<long> DeltaKernelSpec::m1_exps() const {
    std::vector<long> e(r1.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = r1[i] - r3[i] - r2[i] + nu2;
    return e;
}
std::vector<long> DeltaKernelSpec::m2_exps() const {
    std::vector<long> e(r1.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = r2[i] - r1[i] - r3[i] + nu1;
    return e;
}
std::vector<long> DeltaKernelSpec::m3_exps() const {
    std::vector<long> e(r1.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = r3[i] - r1[i] - r2[i];
    return e;
}

UnramifiedScalar char_eval(const std::vector<long>& exps, const UnramifiedScalar& x, long prec) {
    const UnramifiedRing& ring = x.ring();
    if (static_cast<int>(exps.size()) != ring.f)
        throw std::invalid_argument("char_eval: exponent vector length mismatch");
    bool trivial = true;
    for (long e : exps)
        if (e != 0) trivial = false;
    if (!x.is_unit()) {
        // extended by 0 off the units unless the character is trivial
        return trivial ? UnramifiedScalar::one(ring, prec) : UnramifiedScalar::zero(ring);
    }
    UnramifiedScalar acc = UnramifiedScalar::one(ring, prec);
    UnramifiedScalar conj = x;
    for (int i = 0; i < ring.f; ++i) {
        if (i > 0) conj = frobenius(conj, prec);
        if (exps[i] != 0) acc = acc * conj.pow(exps[i]);
    }
    return acc;
}

UnramifiedScalar delta_eval(const DeltaKernelSpec& spec,
                            const std::pair<UnramifiedScalar, UnramifiedScalar>& v1,
                            const std::pair<UnramifiedScalar, UnramifiedScalar>& v2,
                            const std::pair<UnramifiedScalar, UnramifiedScalar>& v3, long prec) {
    if (spec.empty) return UnramifiedScalar::one(UnramifiedRing::base(3), prec);
    UnramifiedScalar d1 = v3.first * v2.second - v2.first * v3.second;
    UnramifiedScalar d2 = v3.first * v1.second - v1.first * v3.second;
    UnramifiedScalar d3 = v1.first * v2.second - v2.first * v1.second;
    UnramifiedScalar a = char_eval(spec.m1_exps(), d1, prec);
    UnramifiedScalar b = char_eval(spec.m2_exps(), d2, prec);
    UnramifiedScalar c = char_eval(spec.m3_exps(), d3, prec);
    return a * b * c;
}

} // namespace gmk
