#pragma once

#include "gmk/nearly.hpp"
#include "gmk/unram.hpp"

namespace gmk {

// Unbalanced classical triple at tau0: k3 dominant, k1+k2+k3 even.
struct TripleWeights {
    long k1, k2, k3;
    long nu1 = 0, nu2 = 0, nu3 = 0;

    TripleWeights(long k1_, long k2_, long k3_) : k1(k1_), k2(k2_), k3(k3_) {
        if ((k1 + k2 + k3) % 2 != 0)
            throw std::domain_error("TripleWeights: k1+k2+k3 must be even");
        if (k3 < k1 + k2)
            throw std::domain_error("TripleWeights: unbalanced condition k3 >= k1+k2 fails");
        if (k1 < 1 || k2 < 1)
            throw std::domain_error("TripleWeights: k1, k2 must be positive");
    }
    long m() const { return (k3 - k1 - k2) / 2; }
    long big_m() const { return (k1 + k2 + k3) / 2; }
};

// t_{k1,k2,k3}(s1,s2) = sum_j (-1)^j C(m,j) C(M-2, k1+j-1) nabla^j(s1) nabla^(m-j)(s2)
NearlyForm<PadicScalar> triple_t(const TripleWeights& w, const NearlyForm<PadicScalar>& s1,
                                 const NearlyForm<PadicScalar>& s2, long prec = 48);

// de Rham correction coefficients a_0..a_{m-1}:
//   a_i = (-1)^(i+m+1) C(k3-2, m+k2-1)^{-1} sum_{j<=i} C(m,j) C(M-2, k1+j-1)
std::vector<mpq_class> correction_coeffs(const TripleWeights& w);

struct ThetaMReport {
    bool pass;
    long residual_valuation; // min tracked precision when the residual vanished
    std::string detail;
};

// checks nabla^m(s1) s2 = (-1)^m C(k3-2, m+k2-1)^{-1} t(s1,s2)
//                         + nabla(sum_i a_i nabla^i(s1) nabla^(m-1-i)(s2))
ThetaMReport verify_theta_m_identity(const TripleWeights& w, const NearlyForm<PadicScalar>& s1,
                                     const NearlyForm<PadicScalar>& s2, long prec = 48);

// ---------------------------------------------------------------------------

// Per-prime Hecke data for the interpolation Euler factors.
struct EulerSlot {
    bool is_p0 = true;
    // per-embedding weights of the three forms at this prime (one entry for p0)
    std::vector<long> k1{2}, k2{2}, k3{2};
    PadicScalar ax, bx, ay, by, az, bz;

    long m0() const { return (k1.at(0) + k2.at(0) + k3.at(0)) / 2; } // p0 slot
    std::vector<long> m_vec() const {
        std::vector<long> m(k1.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = (k1[i] + k2[i] + k3[i]) / 2;
        return m;
    }
};

struct EulerFactors {
    std::vector<PadicScalar> factors;
    PadicScalar product;
    bool vanishing; // some factor is zero within precision (exceptional point)
};

EulerFactors euler_E(long p, const EulerSlot& slot, long prec);
EulerFactors euler_E1(long p, const EulerSlot& slot, long prec);

// ---------------------------------------------------------------------------

// The tau0-free character data of the distribution kernel: one unramified
// component of degree f <= 2 (empty list models F = Q).
struct DeltaKernelSpec {
    UnramifiedRing ring{3, 1, {0}};
    bool empty = false; // F = Q: no tau0-free part, Delta = 1
    std::vector<long> r1, r2, r3; // exponent vectors, length f
    long nu1 = 0, nu2 = 0;

    std::vector<long> m1_exps() const; // r1 - r3 - r2 + nu2 o N
    std::vector<long> m2_exps() const; // r2 - r1 - r3 + nu1 o N
    std::vector<long> m3_exps() const; // r3 - r1 - r2
};

// value of the monomial character with the given exponent vector; non-units
// are sent to 0 unless the character is trivial
UnramifiedScalar char_eval(const std::vector<long>& exps, const UnramifiedScalar& x, long prec);

UnramifiedScalar delta_eval(const DeltaKernelSpec& spec,
                            const std::pair<UnramifiedScalar, UnramifiedScalar>& v1,
                            const std::pair<UnramifiedScalar, UnramifiedScalar>& v2,
                            const std::pair<UnramifiedScalar, UnramifiedScalar>& v3, long prec);

} // namespace gmk
