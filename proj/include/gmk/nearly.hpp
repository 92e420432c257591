#pragma once

#include <variant>

#include "gmk/qexp.hpp"

namespace gmk {

// weight of a nearly overconvergent form: a classical integer, or the
// universal weight series shifted by an even offset accumulated under nabla
struct UnivWeightTag {
    int level;   // disk level of the weight variable
    long offset; // w = w_series + offset
    friend bool operator==(const UnivWeightTag& a, const UnivWeightTag& b) {
        return a.level == b.level && a.offset == b.offset;
    }
};
using WeightTag = std::variant<long, UnivWeightTag>;

inline WeightTag tag_raised(const WeightTag& t, long by) {
    if (std::holds_alternative<long>(t)) return std::get<long>(t) + by;
    UnivWeightTag u = std::get<UnivWeightTag>(t);
    u.offset += by;
    return u;
}

inline bool tag_equal(const WeightTag& a, const WeightTag& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<long>(a)) return std::get<long>(a) == std::get<long>(b);
    return std::get<UnivWeightTag>(a) == std::get<UnivWeightTag>(b);
}

// Weight-tagged finite sum over the fiber basis: grid (m, nu) -> coefficient
// of (1+q)^nu V_{k,m} (geometric basis, carrying p^(2 level) factors) or
// (1+q)^nu W_{k,m} (normalized basis, W_{k,m} = p^(2 level m) V_{k,m}).
template <class C>
struct NearlyForm {
    WeightTag weight = 0L;
    bool geometric = true;
    int level = 1; // the n of the p^(2n) radius factors
    long window = 0;
    C proto;
    std::map<std::pair<long, long>, C> grid; // key (m, nu)

    NearlyForm() = default;
    NearlyForm(WeightTag w, bool geom, int level_, long window_, C proto_)
        : weight(w), geometric(geom), level(level_), window(window_), proto(std::move(proto_)) {}

    long prime() const { return coeff_prime(proto); }
    long fil_degree() const {
        long m = 0;
        for (const auto& [key, c] : grid) m = std::max(m, key.first);
        return m;
    }
    void add_term(long m, long nu, const C& c) {
        if (m < 0) throw std::domain_error("NearlyForm: negative filtration index");
        if (nu < 0 || nu >= window)
            throw std::domain_error("NearlyForm: exponent outside the window");
        auto key = std::make_pair(m, nu);
        auto it = grid.find(key);
        if (it == grid.end())
            grid.emplace(key, c);
        else
            it->second = it->second + c;
        trim();
    }
    void trim() {
        for (auto it = grid.begin(); it != grid.end();)
            it = structural_zero(it->second) ? grid.erase(it) : std::next(it);
    }
    bool is_zero_within_precision() const {
        for (const auto& [key, c] : grid)
            if (!c.is_zero_within_precision()) return false;
        return true;
    }
};

template <class C>
NearlyForm<C> operator+(const NearlyForm<C>& a, const NearlyForm<C>& b) {
    if (!tag_equal(a.weight, b.weight) || a.geometric != b.geometric || a.level != b.level)
        throw std::invalid_argument("NearlyForm: incompatible sum");
    NearlyForm<C> r(a.weight, a.geometric, a.level, std::max(a.window, b.window), a.proto);
    r.grid = a.grid;
    for (const auto& [key, c] : b.grid) {
        auto it = r.grid.find(key);
        if (it == r.grid.end())
            r.grid.emplace(key, c);
        else
            it->second = it->second + c;
    }
    r.trim();
    return r;
}

template <class C>
NearlyForm<C> operator-(const NearlyForm<C>& a, const NearlyForm<C>& b) {
    NearlyForm<C> nb = b;
    for (auto& [key, c] : nb.grid) c = -c;
    return a + nb;
}

template <class C>
NearlyForm<C> nearly_scaled(const NearlyForm<C>& a, const PadicScalar& s) {
    NearlyForm<C> r(a.weight, a.geometric, a.level, a.window, a.proto);
    for (const auto& [key, c] : a.grid) r.grid.emplace(key, scale_coeff(c, s));
    r.trim();
    return r;
}

// diagonal rescale between the two bases: W_{k,m} = p^(2 level m) V_{k,m}
template <class C>
NearlyForm<C> to_normalized(const NearlyForm<C>& a) {
    if (!a.geometric) return a;
    NearlyForm<C> r(a.weight, false, a.level, a.window, a.proto);
    long p = a.prime();
    for (const auto& [key, c] : a.grid) {
        PadicScalar f = PadicScalar::from_int(p, 1, PadicScalar::kInf)
                            .div_mpz(mpz_pow_prime(p, 2L * a.level * key.first));
        r.grid.emplace(key, scale_coeff(c, f));
    }
    r.trim();
    return r;
}

template <class C>
NearlyForm<C> to_geometric(const NearlyForm<C>& a) {
    if (a.geometric) return a;
    NearlyForm<C> r(a.weight, true, a.level, a.window, a.proto);
    long p = a.prime();
    for (const auto& [key, c] : a.grid) {
        PadicScalar f = PadicScalar::from_mpz(p, mpz_pow_prime(p, 2L * a.level * key.first),
                                              PadicScalar::kInf);
        r.grid.emplace(key, scale_coeff(c, f));
    }
    r.trim();
    return r;
}

namespace detail {

// the (w - m) factor applied to a coefficient; universal tags need series
// coefficients (the weight series is w'_n = p^{-1} log(1+T) plus the offset)
inline PadicScalar weight_factor_apply(const PadicScalar& c, const WeightTag& tag, long m,
                                       long p, int /*level*/) {
    if (!std::holds_alternative<long>(tag))
        throw std::domain_error("NearlyForm: universal weight needs series coefficients");
    return c * PadicScalar::from_int(p, std::get<long>(tag) - m, PadicScalar::kInf);
}

inline CycloScalar weight_factor_apply(const CycloScalar& c, const WeightTag& tag, long m,
                                       long p, int /*level*/) {
    if (!std::holds_alternative<long>(tag))
        throw std::domain_error("NearlyForm: universal weight needs series coefficients");
    return c.scaled(PadicScalar::from_int(p, std::get<long>(tag) - m, PadicScalar::kInf));
}

inline IwasawaSeries weight_factor_apply(const IwasawaSeries& c, const WeightTag& tag, long m,
                                         long p, int /*level*/) {
    if (std::holds_alternative<long>(tag))
        return c.scaled(PadicScalar::from_int(p, std::get<long>(tag) - m, PadicScalar::kInf));
    const UnivWeightTag& u = std::get<UnivWeightTag>(tag);
    long prec = PadicScalar::kInf;
    for (const auto& x : c.coeffs())
        if (!x.is_exact_zero()) prec = std::min(prec, x.precision());
    if (prec >= PadicScalar::kInf) prec = 48;
    IwasawaSeries w = build_wn_prime(p, u.level, c.trunc(), prec).sub_int(m - u.offset);
    return c * w;
}

} // namespace detail

// One step of the connection.  Geometric basis:
//   nabla(a (1+q)^nu V_{k,m}) = nu a (1+q)^nu V_{k+2,m} + p^(2 level) (w-m) a (1+q)^nu V_{k+2,m+1}
// Normalized basis: same with the p^(2 level) factor absorbed.
template <class C>
NearlyForm<C> nabla(const NearlyForm<C>& F) {
    NearlyForm<C> r(tag_raised(F.weight, 2), F.geometric, F.level, F.window, F.proto);
    long p = F.prime();
    PadicScalar radius = PadicScalar::from_mpz(p, mpz_pow_prime(p, 2L * F.level),
                                               PadicScalar::kInf);
    for (const auto& [key, c] : F.grid) {
        auto [m, nu] = key;
        if (nu != 0) {
            C dc = scale_coeff(c, PadicScalar::from_int(p, nu, PadicScalar::kInf));
            if (!structural_zero(dc)) {
                auto it = r.grid.find({m, nu});
                if (it == r.grid.end())
                    r.grid.emplace(std::make_pair(m, nu), dc);
                else
                    it->second = it->second + dc;
            }
        }
        C fc = detail::weight_factor_apply(c, F.weight, m, p, F.level);
        if (F.geometric) fc = scale_coeff(fc, radius);
        if (!structural_zero(fc)) {
            auto it = r.grid.find({m + 1, nu});
            if (it == r.grid.end())
                r.grid.emplace(std::make_pair(m + 1, nu), fc);
            else
                it->second = it->second + fc;
        }
    }
    r.trim();
    return r;
}

namespace detail {

// binom(w + s - m - 1, i) as a coefficient multiplier
inline PadicScalar closed_binom_apply(const PadicScalar& c, const WeightTag& tag, long s,
                                      long m, long i, long p, long prec) {
    long upper = std::get<long>(tag) + s - m - 1;
    PadicScalar x = PadicScalar::from_int(p, upper, prec);
    return c * binom_general(x, i);
}

inline CycloScalar closed_binom_apply(const CycloScalar& c, const WeightTag& tag, long s,
                                      long m, long i, long p, long prec) {
    long upper = std::get<long>(tag) + s - m - 1;
    PadicScalar x = PadicScalar::from_int(p, upper, prec);
    return c.scaled(binom_general(x, i));
}

inline IwasawaSeries closed_binom_apply(const IwasawaSeries& c, const WeightTag& tag, long s,
                                        long m, long i, long p, long prec) {
    if (std::holds_alternative<long>(tag)) {
        long upper = std::get<long>(tag) + s - m - 1;
        return c.scaled(binom_general(PadicScalar::from_int(p, upper, prec), i));
    }
    const UnivWeightTag& u = std::get<UnivWeightTag>(tag);
    IwasawaSeries w =
        build_wn_prime(p, u.level, c.trunc(), prec).sub_int(m + 1 - u.offset - s);
    return c * binom_general(w, i);
}

} // namespace detail

// s-fold connection by the closed form
//   nabla^s(f V_{k,m}) = sum_i p^(2 level i) C(s,i) C(w+s-m-1, i) i! d^(s-i) f V_{k+2s, m+i}
// (normalized basis drops the p^(2 level i)); equals the s-fold composition.
template <class C>
NearlyForm<C> nabla_pow(const NearlyForm<C>& F, long s, long prec = 48) {
    if (s < 0) throw std::domain_error("nabla_pow: negative iteration count");
    NearlyForm<C> r(tag_raised(F.weight, 2 * s), F.geometric, F.level, F.window, F.proto);
    long p = F.prime();
    for (const auto& [key, c] : F.grid) {
        auto [m, nu] = key;
        for (long i = 0; i <= s; ++i) {
            mpz_class pref = mpz_binom(mpz_class(s), static_cast<unsigned long>(i)) *
                             mpz_factorial(static_cast<unsigned long>(i));
            if (F.geometric) pref *= mpz_pow_prime(p, 2L * F.level * i);
            // d^(s-i) on (1+q)^nu multiplies by nu^(s-i)
            mpz_class nupow;
            mpz_pow_ui(nupow.get_mpz_t(), mpz_class(nu).get_mpz_t(),
                       static_cast<unsigned long>(s - i));
            pref *= nupow;
            if (pref == 0) continue;
            C term = detail::closed_binom_apply(c, F.weight, s, m, i, p, prec);
            term = scale_coeff(term, PadicScalar::from_mpz(p, pref, PadicScalar::kInf));
            if (structural_zero(term)) continue;
            auto k2 = std::make_pair(m + i, nu);
            auto it = r.grid.find(k2);
            if (it == r.grid.end())
                r.grid.emplace(k2, term);
            else
                it->second = it->second + term;
        }
    }
    r.trim();
    return r;
}

// grid product: q-exponents add, filtration indices add, weights add
// (classical tags only; both operands in the same basis and level)
template <class C>
NearlyForm<C> nearly_mul(const NearlyForm<C>& a, const NearlyForm<C>& b) {
    if (!std::holds_alternative<long>(a.weight) || !std::holds_alternative<long>(b.weight))
        throw std::domain_error("nearly_mul: classical weights only");
    if (a.geometric != b.geometric || a.level != b.level)
        throw std::invalid_argument("nearly_mul: incompatible bases");
    NearlyForm<C> r(std::get<long>(a.weight) + std::get<long>(b.weight), a.geometric, a.level,
                    a.window + b.window, a.proto);
    for (const auto& [ka, ca] : a.grid)
        for (const auto& [kb, cb] : b.grid) {
            C prod = ca * cb;
            if (structural_zero(prod)) continue;
            auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
            auto it = r.grid.find(key);
            if (it == r.grid.end())
                r.grid.emplace(key, prod);
            else
                it->second = it->second + prod;
        }
    r.trim();
    return r;
}

template <class C>
bool equal_within_precision(const NearlyForm<C>& a, const NearlyForm<C>& b) {
    return (a - b).is_zero_within_precision();
}

// direct sum over weight offsets: offset j holds a form of weight base + 2j
template <class C>
struct GradedNearly {
    WeightTag base = 0L;
    std::map<long, NearlyForm<C>> parts;

    void add_part(long j, const NearlyForm<C>& f) {
        if (!tag_equal(f.weight, tag_raised(base, 2 * j)))
            throw std::invalid_argument("GradedNearly: weight tag does not match its offset");
        auto it = parts.find(j);
        if (it == parts.end())
            parts.emplace(j, f);
        else
            it->second = it->second + f;
    }
    bool is_zero_within_precision() const {
        for (const auto& [j, f] : parts)
            if (!f.is_zero_within_precision()) return false;
        return true;
    }
};

template <class C>
GradedNearly<C> operator+(const GradedNearly<C>& a, const GradedNearly<C>& b) {
    if (!tag_equal(a.base, b.base))
        throw std::invalid_argument("GradedNearly: base weight mismatch");
    GradedNearly<C> r = a;
    for (const auto& [j, f] : b.parts) r.add_part(j, f);
    return r;
}

template <class C>
GradedNearly<C> graded_nabla(const GradedNearly<C>& g) {
    GradedNearly<C> r;
    r.base = g.base;
    for (const auto& [j, f] : g.parts) r.add_part(j + 1, nabla(f));
    return r;
}

template <class C>
GradedNearly<C> graded_scaled(const GradedNearly<C>& g, const PadicScalar& s) {
    GradedNearly<C> r;
    r.base = g.base;
    for (const auto& [j, f] : g.parts) {
        NearlyForm<C> sf = nearly_scaled(f, s);
        if (!sf.grid.empty()) r.parts.emplace(j, sf);
    }
    return r;
}

} // namespace gmk
