#ifndef KTDI_TORUS_HPP
#define KTDI_TORUS_HPP

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "ktdi/rational.hpp"

namespace ktdi {

/// Exponent vector of a monomial e^{(n1 eps1 + n2 eps2 + n3 x)/D} in a fixed
/// three-variable weight lattice with common denominator D. The third slot
/// is the Coulomb/auxiliary variable (a on the plane, t in the wallcrossing).
struct Mono3 {
    std::int64_t e1 = 0, e2 = 0, e3 = 0;

    friend Mono3 operator+(const Mono3& a, const Mono3& b) {
        return {a.e1 + b.e1, a.e2 + b.e2, a.e3 + b.e3};
    }
    friend Mono3 operator-(const Mono3& a, const Mono3& b) {
        return {a.e1 - b.e1, a.e2 - b.e2, a.e3 - b.e3};
    }
    Mono3 operator-() const { return {-e1, -e2, -e3}; }
    Mono3 scaled(std::int64_t c) const { return {c * e1, c * e2, c * e3}; }
    bool is_zero() const { return e1 == 0 && e2 == 0 && e3 == 0; }
    friend bool operator==(const Mono3& a, const Mono3& b) {
        return a.e1 == b.e1 && a.e2 == b.e2 && a.e3 == b.e3;
    }
    friend bool operator<(const Mono3& a, const Mono3& b) {
        if (a.e1 != b.e1) return a.e1 < b.e1;
        if (a.e2 != b.e2) return a.e2 < b.e2;
        return a.e3 < b.e3;
    }
    /// true if the first nonzero component is positive
    bool positive() const {
        if (e1 != 0) return e1 > 0;
        if (e2 != 0) return e2 > 0;
        return e3 > 0;
    }
};

struct Mono3Hash {
    std::size_t operator()(const Mono3& m) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint64_t v : {static_cast<std::uint64_t>(m.e1), static_cast<std::uint64_t>(m.e2),
                                static_cast<std::uint64_t>(m.e3)}) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Sparse Laurent polynomial in the three lattice variables.
class SparsePoly {
public:
    SparsePoly() = default;
    static SparsePoly constant(const GaussQ& c);
    static SparsePoly monomial(const GaussQ& c, const Mono3& m);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Mono3& m, const GaussQ& c);
    GaussQ coeff(const Mono3& m) const;

    SparsePoly operator-() const;
    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);

    SparsePoly scaled(const GaussQ& c) const;
    SparsePoly shifted(const Mono3& m) const;
    /// multiply by (1 - e^w)
    SparsePoly times_binomial(const Mono3& w) const;
    /// exact division by (1 - e^w); throws if not divisible
    SparsePoly div_binomial(const Mono3& w) const;

    bool operator==(const SparsePoly& o) const;

    /// exponents transformed by m -> (L1 e1 + L2 e2 + L3 e3) where Li are the
    /// images of the three basis weights (entries already in lattice units)
    SparsePoly mapped(const Mono3& L1, const Mono3& L2, const Mono3& L3) const;

    GaussQ evaluate(const GaussQ& t1, const GaussQ& t2, const GaussQ& t3) const;

    /// canonical (sorted) term list
    std::vector<std::pair<Mono3, GaussQ>> sorted_terms() const;

    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [m, c] : terms_) f(m, c);
    }

private:
    std::unordered_map<Mono3, GaussQ, Mono3Hash> terms_;
};

/// Element of the torus-character function field: a sparse Laurent
/// polynomial numerator over a multiset of binomial factors (1 - e^w).
/// Factors are kept in a canonical orientation (w lexicographically
/// positive); orientation flips are absorbed into the numerator.
class TorusFunction {
public:
    TorusFunction() : num_(SparsePoly::constant(GaussQ(0))) {}
    explicit TorusFunction(SparsePoly num) : num_(std::move(num)) {}

    static TorusFunction constant(const GaussQ& c) { return TorusFunction(SparsePoly::constant(c)); }
    static TorusFunction monomial(const GaussQ& c, const Mono3& m) {
        return TorusFunction(SparsePoly::monomial(c, m));
    }
    /// (1 - e^w)^{+-1} as a function
    static TorusFunction binomial(const Mono3& w, int power);

    const SparsePoly& num() const { return num_; }
    const std::map<Mono3, int>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    TorusFunction operator-() const;
    friend TorusFunction operator+(const TorusFunction& a, const TorusFunction& b);
    friend TorusFunction operator-(const TorusFunction& a, const TorusFunction& b);
    friend TorusFunction operator*(const TorusFunction& a, const TorusFunction& b);
    TorusFunction& operator+=(const TorusFunction& o);
    TorusFunction& operator*=(const TorusFunction& o);

    TorusFunction inverse() const;
    TorusFunction scaled(const GaussQ& c) const;
    TorusFunction shifted(const Mono3& m) const;
    /// multiply by (1 - e^w)^{power}
    TorusFunction times_binomial_pow(const Mono3& w, int power) const;

    /// exact equality in the function field (cross-multiplied)
    bool equals(const TorusFunction& o) const;

    TorusFunction mapped(const Mono3& L1, const Mono3& L2, const Mono3& L3) const;

    /// Evaluate at t_i = values of e^{eps_i / D}, t3 = value of e^{x/D}.
    /// Throws if a denominator factor vanishes at the point.
    GaussQ evaluate(const GaussQ& t1, const GaussQ& t2, const GaussQ& t3) const;

    /// Cancel denominator factors that divide the numerator exactly.
    void reduce();

    /// If the function is a Laurent polynomial (denominator fully
    /// cancellable), return it; throws otherwise.
    SparsePoly as_polynomial() const;

private:
    void push_den(const Mono3& w, int mult);  // canonicalizes orientation

    SparsePoly num_;
    std::map<Mono3, int> den_;  // canonical w -> multiplicity (> 0)
};

/// Laurent series in a single expansion parameter eps with coefficients in
/// the univariate function field Q(i)(e^{x/D}) — the shape of an
/// eps-expansion of a TorusFunction along a ray.
class UniFieldElem {
public:
    UniFieldElem() = default;  // zero
    static UniFieldElem constant(const GaussQ& c);
    static UniFieldElem monomial(const GaussQ& c, std::int64_t e3);
    static UniFieldElem binomial_inv(const GaussQ& c, std::int64_t e3);  // 1/(1 - c e^{e3 x/D})

    bool is_zero() const { return num_.empty(); }

    friend UniFieldElem operator+(const UniFieldElem& a, const UniFieldElem& b);
    friend UniFieldElem operator-(const UniFieldElem& a, const UniFieldElem& b);
    friend UniFieldElem operator*(const UniFieldElem& a, const UniFieldElem& b);
    UniFieldElem operator-() const { return scaled(GaussQ(-1)); }
    UniFieldElem inverse() const;
    UniFieldElem scaled(const GaussQ& c) const;

    bool equals(const UniFieldElem& o) const;

    /// value at e^{x/D} = t3
    GaussQ evaluate(const GaussQ& t3) const;

    /// numerator and denominator as Laurent maps exponent -> coeff
    const std::map<std::int64_t, GaussQ>& num() const { return num_; }
    const std::map<std::int64_t, GaussQ>& den() const { return den_; }

private:
    static std::map<std::int64_t, GaussQ> mul(const std::map<std::int64_t, GaussQ>& a,
                                              const std::map<std::int64_t, GaussQ>& b);
    std::map<std::int64_t, GaussQ> num_;        // zero iff empty
    std::map<std::int64_t, GaussQ> den_ = {{0, GaussQ(1)}};
};

/// Truncated Laurent expansion in eps with UniFieldElem coefficients.
class EpsLaurent {
public:
    EpsLaurent(int lo, int hi) : lo_(lo), hi_(hi) {}

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    UniFieldElem coeff(int k) const;
    void add(int k, const UniFieldElem& v);

    friend EpsLaurent operator+(const EpsLaurent& a, const EpsLaurent& b);
    friend EpsLaurent operator*(const EpsLaurent& a, const EpsLaurent& b);
    EpsLaurent scaled(const GaussQ& c) const;
    EpsLaurent operator-() const;
    /// 1/this; requires a well-defined lowest order with invertible coefficient
    EpsLaurent inverse() const;

private:
    int lo_, hi_;  // knowledge window on eps exponents
    std::map<int, UniFieldElem> c_;
};

/// Expand a TorusFunction along the ray eps1 = c1 eps, eps2 = c2 eps
/// (c1, c2 integers, not both zero) as a Laurent series in eps up to
/// eps^{order}, coefficients exact in Q(i)(e^{x/D}). lattice_den is the
/// common exponent denominator D of the stored lattice units.
EpsLaurent eps_expand(const TorusFunction& f, std::int64_t c1, std::int64_t c2, int order,
                      long lattice_den);

}  // namespace ktdi

#endif
