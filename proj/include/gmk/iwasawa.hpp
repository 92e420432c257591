#pragma once

#include <array>
#include <vector>

#include "gmk/cyclo.hpp"
#include "gmk/padic.hpp"

namespace gmk {

// Truncated power series in T over capped-precision Q_p, modelling elements
// of the one-variable rings Lambda_{tau0,l} = Z_p[[T]]<T^{p^(l-1)}/p>.
//
// Coefficients are stored exactly (interval-tracked) up to T-degree D.  The
// content beyond degree D, together with any analytically truncated piece,
// is certified by per-level Gauss floors: tail(l) <= v(c_d) + d/p^(l-1) for
// every unknown contribution of degree d.  A floor of +inf means the stored
// polynomial is the exact value.
class IwasawaSeries {
  public:
    static constexpr int kLevels = 4;

    IwasawaSeries() = default;
    IwasawaSeries(long p, int level, int trunc);

    static IwasawaSeries zero(long p, int level, int trunc);
    static IwasawaSeries constant(long p, int level, int trunc, const PadicScalar& c);
    static IwasawaSeries variable_T(long p, int level, int trunc, long prec);
    // (1+T)^j, exact polynomial; requires j <= trunc
    static IwasawaSeries one_plus_T_pow(long p, int level, int trunc, long j, long prec);
    // log(1+T) truncated at D with analytic per-level tail floors
    static IwasawaSeries log_one_plus_T(long p, int level, int trunc, long prec);

    long prime() const { return p_; }
    int level() const { return level_; }
    int trunc() const { return trunc_; }
    const std::vector<PadicScalar>& coeffs() const { return c_; }
    const PadicScalar& coeff(int d) const { return c_.at(d); }
    void set_coeff(int d, const PadicScalar& v) { c_.at(d) = v; }
    Rat tail_floor(int level) const { return tail_.at(level - 1); }

    friend IwasawaSeries operator+(const IwasawaSeries& a, const IwasawaSeries& b);
    friend IwasawaSeries operator-(const IwasawaSeries& a, const IwasawaSeries& b);
    friend IwasawaSeries operator*(const IwasawaSeries& a, const IwasawaSeries& b);
    IwasawaSeries operator-() const;
    IwasawaSeries scaled(const PadicScalar& s) const;
    IwasawaSeries div_scalar(const PadicScalar& s) const;

    // generic-ring hooks
    IwasawaSeries sub_int(long k) const;
    IwasawaSeries div_mpz(const mpz_class& d) const;
    static IwasawaSeries one_like(const IwasawaSeries& x);

    bool is_zero_within_precision() const;

    // lower bound for v(coeff_d), valid for every d >= 0 (beyond the
    // truncation it comes from the tail floors)
    Rat certified_floor(long d) const;
    // full-element Gauss floor at a level: min over stored coefficients and tail
    Rat gauss_floor(int level) const;
    // checked certificate for membership in p^shift * Lambda_{tau0,level}
    // (integral convention: v(c_d) >= shift - floor(d / p^(level-1)))
    bool is_member_certified(long shift, int level) const;

    // absorb an unknown additive error with the given per-level Gauss floors
    void fold_error(const std::array<Rat, kLevels>& eps);

    std::string str() const;

  private:
    long pl(int level) const; // p^(level-1)

    long p_ = 0;
    int level_ = 1;
    int trunc_ = 0;
    std::vector<PadicScalar> c_;
    std::array<Rat, kLevels> tail_{Rat::inf(), Rat::inf(), Rat::inf(), Rat::inf()};
};

bool equal_within_precision(const IwasawaSeries& a, const IwasawaSeries& b);

// u_n = log(1+T) with the membership certificate u_n in p^(2-n) Lambda_{tau0,n}
IwasawaSeries build_un(long p, int n, int trunc, long prec);
// w'_n = p^{-1) log(1+T) with certificate w'_n in p^(1-n) Lambda_{tau0,n}
IwasawaSeries build_wn_prime(long p, int n, int trunc, long prec);

// A point of weight space: a value for T.  Legal for level l when
// v(value^(p^(l-1))) >= 1.
struct WeightPoint {
    bool cyclotomic = false;
    PadicScalar t_padic;
    CycloScalar t_cyclo;

    static WeightPoint at(const PadicScalar& t) {
        WeightPoint w;
        w.t_padic = t;
        return w;
    }
    static WeightPoint at(const CycloScalar& t) {
        WeightPoint w;
        w.cyclotomic = true;
        w.t_cyclo = t;
        return w;
    }
    Rat valuation_lb() const;
    bool legal_for_level(long p, int level) const;
};

// Substitute the T-value; the result carries the precision certified by the
// coefficient intervals plus the tail floors.
PadicScalar specialize(const IwasawaSeries& s, const PadicScalar& t);
CycloScalar specialize(const IwasawaSeries& s, const CycloScalar& t);

} // namespace gmk
