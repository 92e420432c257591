#pragma once

#include "gmk/nearly.hpp"
#include "gmk/weights.hpp"

namespace gmk {

// Universal exponent on the level-n disks: a table gamma -> s(gamma) over the
// units mod p^n, with s(omega(s0) exp(jp)) = omega(s0)^t (1+T)^j; at an
// integer weight m with m = t mod (p-1) the table specializes to gamma^m.
struct UnivExponent {
    long p = 3;
    int level = 1; // conductor p^level
    int trunc = 8;
    long prec = 24;
    long omega_pow = 0; // t

    static UnivExponent universal(long p, int level, int trunc, long prec, long omega_pow);

    long conductor() const {
        long c = 1;
        for (int i = 0; i < level; ++i) c *= p;
        return c;
    }
    // wild index j(gamma) in [0, p^(level-1)): <gamma> = exp(jp) mod p^level
    long wild_index(long gamma) const;
    IwasawaSeries value(long gamma) const;
    // the scalar gamma^m (consistency target of the specialization contract)
    PadicScalar integer_specialization(long gamma, long m) const;
};

// exponent-congruence projector onto the disk gamma + p^n Z_p (kills p | nu)
template <class C>
NearlyForm<C> nabla_disk(const NearlyForm<C>& F, long gamma, int cond_level) {
    long p = F.prime();
    long q = 1;
    for (int i = 0; i < cond_level; ++i) q *= p;
    if (gamma % p == 0) throw std::domain_error("nabla_disk: gamma divisible by p");
    long g = ((gamma % q) + q) % q;
    NearlyForm<C> r(F.weight, F.geometric, F.level, F.window, F.proto);
    for (const auto& [key, c] : F.grid)
        if (key.second % q == g) r.grid.emplace(key, c);
    r.trim();
    return r;
}

// ((nabla - gamma)/gamma)^i across the weight-offset grading
GradedNearly<PadicScalar> twist_power(const NearlyForm<PadicScalar>& F, long gamma, long i,
                                      long prec);

// i-th term of the universal iterate:
//   A_i = sum_gamma s(gamma) binom(w'_n, i) ((nabla - gamma)/gamma)^i o disk_gamma
GradedNearly<IwasawaSeries> a_i_term(const NearlyForm<PadicScalar>& F, const UnivExponent& s,
                                     long i);

struct UnivIterate {
    GradedNearly<IwasawaSeries> value;
    Rat tail_floor; // certified floor of the omitted i > I terms
    int terms_used;
};

// truncated universal iterate sum_{i <= I} A_i with a certified tail
UnivIterate nabla_univ(const NearlyForm<PadicScalar>& F, const UnivExponent& s, long digits);

// specialize every series coefficient at T -> exp(mp) - 1
GradedNearly<PadicScalar> specialize_graded(const GradedNearly<IwasawaSeries>& g, long m,
                                            long prec);

// measured Gauss floor (level n) over all grid entries of a graded value
Rat graded_gauss_floor(const GradedNearly<IwasawaSeries>& g, int level);

struct PdiviterSample {
    long nu;
    long weight_k;
    long fil_m;
    Rat one_minus_b_val;   // v(1 - nu/gamma0)
    Rat a_subst_val;       // v(p^(2n)/nu)
    bool kfact_binom_ok;   // k! binom(M+k, j) in p^(-nj) Lambda for j,k <= i
    Rat aggregate;         // measured level-n Gauss floor of A_i on the sample
    bool stated_ok;        // aggregate >= ceil(i p/(p-1)) - 1
    bool honest_ok;        // aggregate >= v_min(F) + min_{i' = i} (i - v_p(i!))
};

struct PdiviterReport {
    long p;
    int level;
    long i;
    std::vector<PdiviterSample> samples;
    bool bullets_ok;  // the three divisibility bullets
    bool stated_ok;   // the aggregate bound as stated
    bool honest_ok;   // the provable aggregate bound
};

PdiviterReport pdiviter_certificate(long p, int n, long i,
                                    const std::vector<std::pair<long, long>>& monomials,
                                    long weight_k, long prec);

} // namespace gmk
