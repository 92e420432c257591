#pragma once

#include <vector>

#include "gmk/iwasawa.hpp"

namespace gmk {

// The locally analytic expansion of the universal character on the level-n
// disk, as a series in T: exactly one residue-disk indicator fires for the
// given beta, and the inner binomial series is truncated at index I with a
// certified tail folded into the result.
//   pre: beta in 1 + pZ_p, trunc >= p^(n-1), I >= 1
IwasawaSeries eval_univ_char(long p, int n, const PadicScalar& beta, int trunc, int I,
                             long prec);

// number of inner terms needed so the certified tail reaches `digits`
int univ_char_terms_for(long p, int n, long digits);

// A character of Z_p^x: Teichmuller finite part (value table on (Z/pZ)^x)
// tensor an analytic part on 1 + pZ_p.
class WeightChar {
  public:
    enum class Kind { Classical, FiniteOrder, Universal };

    static WeightChar classical(long p, long k, long prec);
    // analytic part exp(p) -> xi^zeta_exp with xi a primitive p^(level-1)-th root
    static WeightChar finite_order(long p, int level, long zeta_exp, long prec);
    static WeightChar universal(long p, int level, int trunc, long prec);

    WeightChar with_omega_power(long t) const; // set finite part to omega^t

    Kind kind() const { return kind_; }
    long prime() const { return p_; }
    long classical_exponent() const { return k_; }
    int level() const { return level_; }
    long zeta_exp() const { return zeta_exp_; }
    long precision() const { return prec_; }
    int trunc() const { return trunc_; }
    long omega_power() const { return omega_pow_; }
    const PadicScalar& finite_value(long a) const; // a a unit mod p

    struct Value {
        enum class Type { Padic, Cyclo, Series } type;
        PadicScalar s;
        CycloScalar c;
        IwasawaSeries w;
    };
    // evaluate at a unit of Z_p^x
    Value eval(const PadicScalar& beta) const;

  private:
    Kind kind_ = Kind::Classical;
    long p_ = 3;
    long k_ = 0;
    int level_ = 1;
    long zeta_exp_ = 0;
    int trunc_ = 8;
    long prec_ = 16;
    long omega_pow_ = 0;
    std::vector<PadicScalar> finite_part_; // index a-1 for a in 1..p-1
};

// weight map (r, nu) -> (t -> r(t)^{-2} nu(N(t))); classical one-variable case
// over Q gives the exponent nu - 2r
WeightChar weight_map_k(const WeightChar& r, const WeightChar& nu);
// vector version for an unramified component of degree f: exponents nu - 2 r_i
std::vector<long> weight_map_exponents(const std::vector<long>& r, long nu);

} // namespace gmk
