#include "gmk/gm_iter.hpp"

#include <algorithm>

namespace gmk {

UnivExponent UnivExponent::universal(long p, int level, int trunc, long prec, long omega_pow) {
    UnivExponent s;
    s.p = p;
    s.level = level;
    s.trunc = trunc;
    s.prec = prec;
    s.omega_pow = ((omega_pow % (p - 1)) + (p - 1)) % (p - 1);
    return s;
}

long UnivExponent::wild_index(long gamma) const {
    long q = conductor();
    gamma = ((gamma % q) + q) % q;
    if (gamma % p == 0) throw std::domain_error("UnivExponent: gamma not a unit");
    PadicScalar g = PadicScalar::from_int(p, gamma, prec);
    PadicScalar omega = teichmuller(p, gamma % p, prec);
    PadicScalar anal = g / omega;
    PadicScalar alpha =
        padic_log1p(anal - PadicScalar::from_int(p, 1, prec)).div_mpz(mpz_class(p));
    long wild = q / p; // p^(level-1)
    if (wild == 1) return 0;
    if (!alpha.has_known_digits()) return 0;
    if (alpha.valuation() < 0) throw std::runtime_error("UnivExponent: wild index not integral");
    return mpz_class(alpha.to_mpz() % wild).get_si();
}

IwasawaSeries UnivExponent::value(long gamma) const {
    long j = wild_index(gamma);
    PadicScalar fin = teichmuller(p, ((gamma % p) + p) % p, prec).pow(omega_pow);
    return IwasawaSeries::one_plus_T_pow(p, level, trunc, j, prec).scaled(fin);
}

PadicScalar UnivExponent::integer_specialization(long gamma, long m) const {
    return PadicScalar::from_int(p, gamma, prec).pow(m);
}

GradedNearly<PadicScalar> twist_power(const NearlyForm<PadicScalar>& F, long gamma, long i,
                                      long prec) {
    long p = F.prime();
    PadicScalar g = PadicScalar::from_int(p, gamma, prec);
    PadicScalar ginv = g.inverse();
    GradedNearly<PadicScalar> acc;
    acc.base = F.weight;
    acc.add_part(0, F);
    for (long step = 0; step < i; ++step) {
        GradedNearly<PadicScalar> next;
        next.base = acc.base;
        // (nabla - gamma)/gamma
        for (const auto& [j, f] : acc.parts) {
            NearlyForm<PadicScalar> up = nearly_scaled(nabla(f), ginv);
            if (!up.grid.empty()) next.add_part(j + 1, up);
            NearlyForm<PadicScalar> same =
                nearly_scaled(f, PadicScalar::from_int(p, -1, PadicScalar::kInf));
            if (!same.grid.empty()) next.add_part(j, same);
        }
        acc = next;
    }
    return acc;
}

GradedNearly<IwasawaSeries> a_i_term(const NearlyForm<PadicScalar>& F, const UnivExponent& s,
                                     long i) {
    if (!std::holds_alternative<long>(F.weight))
        throw std::domain_error("a_i_term: classical input weight required");
    long p = F.prime();
    IwasawaSeries wprime = build_wn_prime(p, s.level, s.trunc, s.prec);
    IwasawaSeries binom = binom_general(wprime, i);

    GradedNearly<IwasawaSeries> out;
    out.base = F.weight;
    long q = s.conductor();
    for (long gamma = 1; gamma < q; ++gamma) {
        if (gamma % p == 0) continue;
        NearlyForm<PadicScalar> Fg = nabla_disk(F, gamma, s.level);
        if (Fg.grid.empty()) continue;
        GradedNearly<PadicScalar> tw = twist_power(Fg, gamma, i, s.prec);
        IwasawaSeries factor = s.value(gamma) * binom;
        for (const auto& [j, f] : tw.parts) {
            NearlyForm<IwasawaSeries> lifted(f.weight, f.geometric, f.level, f.window,
                                             IwasawaSeries::zero(p, s.level, s.trunc));
            for (const auto& [key, c] : f.grid) {
                IwasawaSeries v = factor.scaled(c);
                if (!structural_zero(v)) lifted.grid.emplace(key, v);
            }
            if (!lifted.grid.empty()) out.add_part(j, lifted);
        }
    }
    return out;
}

namespace {

Rat min_coeff_valuation(const NearlyForm<PadicScalar>& F) {
    Rat best = Rat::inf();
    for (const auto& [key, c] : F.grid) {
        if (c.is_exact_zero()) continue;
        best = rat_min(best, Rat(c.has_known_digits() ? c.valuation() : c.precision()));
    }
    return best;
}

} // namespace

UnivIterate nabla_univ(const NearlyForm<PadicScalar>& F, const UnivExponent& s, long digits) {
    int I = univ_char_terms_for(s.p, s.level, digits);
    GradedNearly<IwasawaSeries> acc;
    acc.base = F.weight;
    for (long i = 0; i <= I; ++i) acc = acc + a_i_term(F, s, i);
    // certified tail: v(A_i) >= v_min(F) + i - v_p(i!) for every i > I
    Rat vmin = min_coeff_valuation(F);
    Rat tail = Rat::inf();
    for (long i = I + 1; i <= I + 4 * (digits + 4) * (s.p - 1); ++i)
        tail = rat_min(tail, Rat(i - factorial_valuation(s.p, i)));
    return UnivIterate{acc, vmin.is_inf() ? Rat::inf() : tail + vmin, I};
}

GradedNearly<PadicScalar> specialize_graded(const GradedNearly<IwasawaSeries>& g, long m,
                                            long prec) {
    long p = 0;
    for (const auto& [j, f] : g.parts) {
        p = f.prime();
        break;
    }
    GradedNearly<PadicScalar> out;
    // classical base: tag stays classical integer
    out.base = g.base;
    if (p == 0) return out;
    PadicScalar t = padic_exp(PadicScalar::from_int(p, m * p, prec)) -
                    PadicScalar::from_int(p, 1, prec);
    for (const auto& [j, f] : g.parts) {
        NearlyForm<PadicScalar> sf(f.weight, f.geometric, f.level, f.window,
                                   PadicScalar::zero(p));
        for (const auto& [key, c] : f.grid) {
            PadicScalar v = specialize(c, t);
            if (!v.is_exact_zero()) sf.grid.emplace(key, v);
        }
        sf.trim();
        if (!sf.grid.empty()) out.add_part(j, sf);
    }
    return out;
}

Rat graded_gauss_floor(const GradedNearly<IwasawaSeries>& g, int level) {
    Rat best = Rat::inf();
    for (const auto& [j, f] : g.parts)
        for (const auto& [key, c] : f.grid) best = rat_min(best, c.gauss_floor(level));
    return best;
}

PdiviterReport pdiviter_certificate(long p, int n, long i,
                                    const std::vector<std::pair<long, long>>& monomials,
                                    long weight_k, long prec) {
    PdiviterReport rep;
    rep.p = p;
    rep.level = n;
    rep.i = i;
    rep.bullets_ok = true;
    rep.stated_ok = true;
    rep.honest_ok = true;

    long q = 1;
    for (int t = 0; t < n; ++t) q *= p;
    int trunc = std::max<long>(4 * (q / p), 8);
    UnivExponent s = UnivExponent::universal(p, n, trunc, prec, 0);

    // k! binom(M+k, j) in p^(-n j) Lambda for all j, k <= i (universal M = w - m - 1)
    bool kfact_ok = true;
    {
        IwasawaSeries w = build_wn_prime(p, n, trunc, prec);
        for (long m0 = 0; m0 <= 1; ++m0) {
            IwasawaSeries M = w.sub_int(m0 + 1);
            for (long k = 0; k <= i; ++k) {
                IwasawaSeries Mk = M.sub_int(-k); // M + k
                for (long j = 0; j <= k; ++j) {
                    IwasawaSeries b = binom_general(Mk, j);
                    b = b.scaled(PadicScalar::from_mpz(
                        p, mpz_factorial(static_cast<unsigned long>(k)), PadicScalar::kInf));
                    if (!b.is_member_certified(-n * j, n)) kfact_ok = false;
                }
            }
        }
    }

    for (const auto& [nu, m] : monomials) {
        if (nu % p == 0) throw std::domain_error("pdiviter_certificate: ordinary monomials only");
        PdiviterSample sample;
        sample.nu = nu;
        sample.weight_k = weight_k;
        sample.fil_m = m;
        long gamma0 = ((nu % q) + q) % q;
        // v(1 - nu/gamma0) and v(p^(2n)/nu)
        PadicScalar one = PadicScalar::from_int(p, 1, prec);
        PadicScalar ratio = PadicScalar::from_int(p, nu, prec) /
                            PadicScalar::from_int(p, gamma0, prec);
        PadicScalar omb = one - ratio;
        sample.one_minus_b_val =
            omb.is_zero_within_precision() ? Rat(prec) : Rat(omb.valuation());
        sample.a_subst_val = Rat(2 * n);
        sample.kfact_binom_ok = kfact_ok;
        if (sample.one_minus_b_val < Rat(n) || sample.a_subst_val < Rat(2 * n) || !kfact_ok) {
            rep.bullets_ok = false;
        }

        NearlyForm<PadicScalar> F(weight_k, true, n, 2 * q * (nu + 1), PadicScalar::zero(p));
        F.add_term(m, nu, PadicScalar::from_int(p, 1, prec));
        GradedNearly<IwasawaSeries> Ai = a_i_term(F, s, i);
        sample.aggregate = graded_gauss_floor(Ai, n);

        Rat stated = Rat((Rat(i * p, p - 1)).ceil() - 1);
        sample.stated_ok = !(sample.aggregate < stated);
        Rat honest = Rat(i - factorial_valuation(p, i));
        sample.honest_ok = !(sample.aggregate < honest);
        if (!sample.stated_ok) rep.stated_ok = false;
        if (!sample.honest_ok) rep.honest_ok = false;
        rep.samples.push_back(sample);
    }
    return rep;
}

} // namespace gmk
