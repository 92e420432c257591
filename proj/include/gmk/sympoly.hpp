#pragma once

#include <map>
#include <tuple>

#include "gmk/util.hpp"

namespace gmk {

// Sparse integer polynomial in the commuting indeterminates A, B, M.
class SymPoly {
  public:
    using Key = std::tuple<int, int, int>; // exponents of A, B, M

    static SymPoly zero() { return SymPoly(); }
    static SymPoly constant(long c);
    static SymPoly monomial(long c, int a, int b, int m);
    static SymPoly var_A() { return monomial(1, 1, 0, 0); }
    static SymPoly var_B() { return monomial(1, 0, 1, 0); }
    static SymPoly var_M() { return monomial(1, 0, 0, 1); }

    friend SymPoly operator+(const SymPoly& x, const SymPoly& y);
    friend SymPoly operator-(const SymPoly& x, const SymPoly& y);
    friend SymPoly operator*(const SymPoly& x, const SymPoly& y);
    SymPoly operator-() const;
    SymPoly scaled(const mpz_class& c) const;
    SymPoly pow(long e) const;

    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    mpz_class eval(const mpz_class& A, const mpz_class& B, const mpz_class& M) const;
    std::string str() const;

  private:
    void trim();
    std::map<Key, mpz_class> terms_;
};

// falling factorial (X + shift)(X + shift - 1)...(X + shift - len + 1) in the
// variable M: the integral form of len! * binom(M + shift, len)
SymPoly falling_factorial_M(long shift, long len);

// the two sides of the rearrangement identity behind the iterate's
// convergence, with the k!-binomials expanded integrally:
//   LHS = sum_{j<=i} sum_{k<=j} C(i,j) C(j,k) [k! C(M+j,k)] (-1)^(i-j) A^k B^j
SymPoly binom_lemma_lhs(long i);
//   RHS = (-1)^i sum_{k<=i} C(i,k) (-AB)^k sum_{j<=k} [k! C(M+k,k-j)] C(i-k,j)
//         (1-B)^(i-k-j) (-B)^j
SymPoly binom_lemma_rhs(long i);

} // namespace gmk
