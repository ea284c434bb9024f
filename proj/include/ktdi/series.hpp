#ifndef KTDI_SERIES_HPP
#define KTDI_SERIES_HPP

#include <map>
#include <vector>

#include "ktdi/rational.hpp"

namespace ktdi {

using LExp = int;   // Lambda exponent
using PExp = long;  // p = q^{1/8} exponent (may be negative)

// Sentinel for "window unbounded on this side" (polynomial-like data).
constexpr PExp kPUnbounded = (1LL << 50);

/// Bigraded truncated series: power/Laurent series in Lambda whose
/// coefficients are bounded-below Laurent series in p. Knowledge windows are
/// tracked explicitly: Lambda exponents in [lambda_min, lambda_max], and for
/// each Lambda exponent d a p-window [p_lo(d), p_hi(d)]. Coefficients inside
/// the window are exact (absent term = exact zero); requesting a coefficient
/// outside the window is a hard error, never a silent zero.
class TruncatedSeries {
public:
    TruncatedSeries() : lmin_(0), lmax_(-1) {}  // empty window

    static TruncatedSeries zero(LExp lmin, LExp lmax);
    /// c * Lambda^d * p^k with the given Lambda window
    static TruncatedSeries monomial(const GaussQ& c, LExp d, PExp k, LExp lmin, LExp lmax);
    static TruncatedSeries one(LExp lmax) { return monomial(GaussQ(1), 0, 0, 0, lmax); }

    LExp lambda_min() const { return lmin_; }
    LExp lambda_max() const { return lmax_; }
    bool window_empty() const { return lmax_ < lmin_; }

    PExp p_lo(LExp d) const { return plo_[idx(d)]; }
    PExp p_hi(LExp d) const { return phi_[idx(d)]; }

    /// Exact coefficient of Lambda^d p^k. Reads below the Lambda window are
    /// provably zero and return 0; reads above it, or outside the p-window,
    /// throw ("information lost to truncation" for the upper side, the
    /// valuation-floor contract for the lower).
    const GaussQ& coeff(LExp d, PExp k) const;
    /// Like coeff, but below-floor reads return the provable zero instead of
    /// throwing. Reads above a knowledge cap still throw.
    const GaussQ& coeff_or_zero(LExp d, PExp k) const;
    bool in_window(LExp d, PExp k) const;

    void set_coeff(LExp d, PExp k, const GaussQ& v);

    bool is_zero() const;
    /// Smallest d in window with a nonzero slice; throws if identically zero
    /// on the whole window.
    LExp lambda_valuation() const;
    /// Smallest k with nonzero coefficient in slice d; throws if slice zero.
    PExp p_valuation(LExp d) const;
    bool slice_zero(LExp d) const;

    /// Nonzero terms in canonical (d, k)-lexicographic order.
    std::map<std::pair<LExp, PExp>, GaussQ> terms() const;

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

    TruncatedSeries& operator+=(const TruncatedSeries& o) { *this = *this + o; return *this; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { *this = *this - o; return *this; }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { *this = *this * o; return *this; }

    TruncatedSeries scaled(const GaussQ& c) const;
    /// Multiply by the monomial Lambda^d p^k (shifts all windows).
    TruncatedSeries shifted(LExp d, PExp k) const;

    /// Narrow the knowledge window (drops information; sound but lossy).
    TruncatedSeries clamped(LExp lmin, LExp lmax, PExp plo, PExp phi) const;
    TruncatedSeries clamped_p(PExp plo, PExp phi) const {
        return clamped(lmin_, lmax_, plo, phi);
    }

    /// Multiplicative inverse; requires the leading Lambda slice to be a
    /// p-Laurent unit. Throws "non-unit leading term" otherwise. When the
    /// leading slice is exactly known (polynomial), its reciprocal is an
    /// infinite p-series: exact_width controls how many p-orders of it are
    /// produced (default: the stored width of the slice).
    TruncatedSeries inverse(PExp exact_width = -1) const;
    TruncatedSeries pow_int(long n) const;

    /// exp: argument must vanish in Lambda degrees <= 0.
    TruncatedSeries exp() const;
    /// log: argument must have Lambda^0 slice exactly 1.
    TruncatedSeries log() const;

    /// s^(num/den) with den in {1,2}. s must factor as c*Lambda^v*p^k*(1+r)
    /// with r strictly higher in the (Lambda, p)-order. For den = 2 the
    /// leading root is sqrt(c) (must be a perfect Gaussian-rational square)
    /// unless leading_root is supplied.
    TruncatedSeries binomial_pow(long num, long den, const GaussQ* leading_root = nullptr) const;

    /// d/dp
    TruncatedSeries derivative_p() const;
    /// Lambda * d/dLambda
    TruncatedSeries lambda_ddlambda() const;

    /// Formal composition: substitute g for the p-variable of *this
    /// (Lambda stays Lambda). The Lambda^0 slice of g must have positive
    /// p-valuation; negative p-powers of *this require g to be a unit. Any
    /// output coefficient outside the resulting knowledge window errors on
    /// read; ginv_width widens the expansion of 1/g when g is exactly known.
    TruncatedSeries substitute_p(const TruncatedSeries& g, PExp ginv_width = -1) const;

    std::size_t term_count() const;

private:
    std::size_t idx(LExp d) const;
    void trim();
    void tighten_lambda();

    LExp lmin_, lmax_;
    std::vector<PExp> plo_, phi_;
    // slice d stored densely over [plo_, phi_] clipped to actual support
    std::vector<std::vector<GaussQ>> data_;
    std::vector<PExp> base_;  // p-exponent of data_[i][0]

    friend class SeriesBuilder;
    const GaussQ& at(LExp d, PExp k) const;  // no window check, 0 if absent
    static const GaussQ kZero;
};

/// Coeff_{x^0}[ x * f(y(x,Lambda), Lambda) * dy/dx ] — the residue-style
/// extraction for a change of variable y = y0(x) + y1(x) Lambda + ... with
/// y0(x) = x(1 + x C[[x]]). Returns a series supported on p-exponent 0.
/// Throws if y0 fails the normalization hypothesis.
TruncatedSeries change_var_residue(const TruncatedSeries& f, const TruncatedSeries& y_of_x);

/// Univariate truncated Laurent series with an expansion-point tag. Used for
/// the constant-term brackets in the auxiliary variable T.
class UniSeries {
public:
    enum class At { Zero, Infinity };

    UniSeries(At tag, long order) : tag_(tag), order_(order) {}

    At tag() const { return tag_; }
    long order() const { return order_; }

    /// Coefficient of T^k (tag Zero) or (T^{-1})^k (tag Infinity).
    GaussQ coeff(long k) const;
    void add(long k, const GaussQ& v);

    /// Expansion of 1/(1 - c*T^m), m != 0, as a geometric series on the side
    /// given by the tag.
    static UniSeries geometric(At tag, long order, const GaussQ& c, long m);

    friend UniSeries operator*(const UniSeries& a, const UniSeries& b);
    friend UniSeries operator+(const UniSeries& a, const UniSeries& b);

private:
    At tag_;
    long order_;  // exponents kept: k <= order (in the tag direction)
    std::map<long, GaussQ> c_;  // key: exponent in tag direction (>= some floor)
};

}  // namespace ktdi

#endif
