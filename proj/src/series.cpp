#include "ktdi/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ktdi {

const GaussQ TruncatedSeries::kZero{};

namespace {
PExp sat_add(PExp a, PExp b) {
    if (a >= kPUnbounded || b >= kPUnbounded) return kPUnbounded;
    if (a <= -kPUnbounded || b <= -kPUnbounded) return -kPUnbounded;
    return a + b;
}
}  // namespace

// Window semantics: p_lo(d) is a true support bound (coefficients below it
// are provably zero; reading there is still an error by contract), p_hi(d)
// is a knowledge cap (coefficients above it were lost to truncation).

std::size_t TruncatedSeries::idx(LExp d) const {
    if (d < lmin_ || d > lmax_) throw std::out_of_range("TruncatedSeries: Lambda exponent outside window");
    return static_cast<std::size_t>(d - lmin_);
}

TruncatedSeries TruncatedSeries::zero(LExp lmin, LExp lmax) {
    TruncatedSeries s;
    s.lmin_ = lmin;
    s.lmax_ = lmax;
    if (lmax >= lmin) {
        std::size_t n = static_cast<std::size_t>(lmax - lmin + 1);
        s.plo_.assign(n, -kPUnbounded);
        s.phi_.assign(n, kPUnbounded);
        s.data_.resize(n);
        s.base_.assign(n, 0);
    }
    return s;
}

TruncatedSeries TruncatedSeries::monomial(const GaussQ& c, LExp d, PExp k, LExp lmin, LExp lmax) {
    TruncatedSeries s = zero(lmin, lmax);
    if (d >= lmin && d <= lmax && !c.is_zero()) s.set_coeff(d, k, c);
    return s;
}

bool TruncatedSeries::in_window(LExp d, PExp k) const {
    if (d < lmin_ || d > lmax_) return false;
    std::size_t i = static_cast<std::size_t>(d - lmin_);
    return k >= plo_[i] && k <= phi_[i];
}

const GaussQ& TruncatedSeries::at(LExp d, PExp k) const {
    if (d < lmin_ || d > lmax_) return kZero;
    std::size_t i = static_cast<std::size_t>(d - lmin_);
    const auto& row = data_[i];
    if (row.empty()) return kZero;
    PExp off = k - base_[i];
    if (off < 0 || off >= static_cast<PExp>(row.size())) return kZero;
    return row[static_cast<std::size_t>(off)];
}

const GaussQ& TruncatedSeries::coeff(LExp d, PExp k) const {
    if (d < lmin_) return kZero;  // below the window: provably zero
    if (!in_window(d, k)) {
        std::ostringstream os;
        os << "TruncatedSeries: coefficient (Lambda^" << d << ", p^" << k
           << ") outside knowledge window (information lost to truncation)";
        throw std::out_of_range(os.str());
    }
    return at(d, k);
}

const GaussQ& TruncatedSeries::coeff_or_zero(LExp d, PExp k) const {
    if (d < lmin_) return kZero;
    if (d > lmax_ || k > p_hi(d)) {
        std::ostringstream os;
        os << "TruncatedSeries: coefficient (Lambda^" << d << ", p^" << k
           << ") lost to truncation";
        throw std::out_of_range(os.str());
    }
    if (k < p_lo(d)) return kZero;  // below the support floor
    return at(d, k);
}

void TruncatedSeries::set_coeff(LExp d, PExp k, const GaussQ& v) {
    std::size_t i = idx(d);
    if (k < plo_[i] || k > phi_[i])
        throw std::out_of_range("TruncatedSeries::set_coeff outside window");
    auto& row = data_[i];
    if (row.empty()) {
        base_[i] = k;
        row.push_back(v);
        return;
    }
    if (k < base_[i]) {
        row.insert(row.begin(), static_cast<std::size_t>(base_[i] - k), GaussQ());
        base_[i] = k;
    } else if (k >= base_[i] + static_cast<PExp>(row.size())) {
        row.resize(static_cast<std::size_t>(k - base_[i] + 1));
    }
    row[static_cast<std::size_t>(k - base_[i])] = v;
}

bool TruncatedSeries::slice_zero(LExp d) const {
    std::size_t i = idx(d);
    for (const auto& c : data_[i])
        if (!c.is_zero()) return false;
    return true;
}

bool TruncatedSeries::is_zero() const {
    for (LExp d = lmin_; d <= lmax_; ++d)
        if (!slice_zero(d)) return false;
    return true;
}

LExp TruncatedSeries::lambda_valuation() const {
    for (LExp d = lmin_; d <= lmax_; ++d)
        if (!slice_zero(d)) return d;
    throw std::domain_error("TruncatedSeries: zero series has no Lambda valuation");
}

PExp TruncatedSeries::p_valuation(LExp d) const {
    std::size_t i = idx(d);
    const auto& row = data_[i];
    for (std::size_t j = 0; j < row.size(); ++j)
        if (!row[j].is_zero()) return base_[i] + static_cast<PExp>(j);
    throw std::domain_error("TruncatedSeries: zero slice has no p valuation");
}

std::map<std::pair<LExp, PExp>, GaussQ> TruncatedSeries::terms() const {
    std::map<std::pair<LExp, PExp>, GaussQ> out;
    for (LExp d = lmin_; d <= lmax_; ++d) {
        std::size_t i = static_cast<std::size_t>(d - lmin_);
        for (std::size_t j = 0; j < data_[i].size(); ++j)
            if (!data_[i][j].is_zero())
                out[{d, base_[i] + static_cast<PExp>(j)}] = data_[i][j];
    }
    return out;
}

std::size_t TruncatedSeries::term_count() const {
    std::size_t n = 0;
    for (const auto& row : data_)
        for (const auto& c : row)
            if (!c.is_zero()) ++n;
    return n;
}

void TruncatedSeries::trim() {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        auto& row = data_[i];
        std::size_t a = 0, b = row.size();
        while (a < b && row[a].is_zero()) ++a;
        while (b > a && row[b - 1].is_zero()) --b;
        if (a == b) {
            row.clear();
            base_[i] = 0;
            // a slice with no support is known to vanish everywhere below
            // its knowledge cap
            if (plo_[i] <= phi_[i]) plo_[i] = -kPUnbounded;
        } else if (a > 0 || b < row.size()) {
            std::vector<GaussQ> nr(row.begin() + a, row.begin() + b);
            row = std::move(nr);
            base_[i] += static_cast<PExp>(a);
        }
    }
}

// Tight support bound for slice d: exponent of first (possibly unknown)
// support. An all-zero slice has no support up to the knowledge cap.
namespace {
PExp eff_lo(const TruncatedSeries& s, LExp d) {
    if (d < s.lambda_min() || d > s.lambda_max()) return kPUnbounded;
    if (!s.slice_zero(d)) return s.p_valuation(d);
    PExp hi = s.p_hi(d);
    return hi >= kPUnbounded ? kPUnbounded : sat_add(hi, 1);
}

// First Lambda slice that could carry anything (nonzero support, or unknown
// content above a finite cap). Slices below are provably zero in full.
LExp eff_lmin(const TruncatedSeries& s) {
    for (LExp d = s.lambda_min(); d <= s.lambda_max(); ++d) {
        if (!s.slice_zero(d)) return d;
        if (s.p_hi(d) < kPUnbounded) return d;  // truncated: unknown terms possible
    }
    return s.lambda_max() + 1;
}
}  // namespace

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& row : r.data_)
        for (auto& c : row) c = -c;
    return r;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.window_empty()) return a;
    if (b.window_empty()) return b;
    LExp lmin = std::min(a.lmin_, b.lmin_);
    LExp lmax = std::min(a.lmax_, b.lmax_);
    TruncatedSeries r = TruncatedSeries::zero(lmin, lmax);
    for (LExp d = lmin; d <= lmax; ++d) {
        std::size_t i = static_cast<std::size_t>(d - lmin);
        // below a series' Lambda window everything is provably zero, so the
        // partner's windows pass through unchanged
        PExp lo_a = (d < a.lmin_) ? kPUnbounded : eff_lo(a, d);
        PExp lo_b = (d < b.lmin_) ? kPUnbounded : eff_lo(b, d);
        PExp hi_a = (d < a.lmin_) ? kPUnbounded : a.p_hi(d);
        PExp hi_b = (d < b.lmin_) ? kPUnbounded : b.p_hi(d);
        r.plo_[i] = std::min(lo_a, lo_b);
        r.phi_[i] = std::min(hi_a, hi_b);
        if (r.plo_[i] > r.phi_[i]) continue;
        PExp klo = r.plo_[i];
        PExp khi = r.phi_[i];
        // restrict to actual stored support for speed
        PExp slo = kPUnbounded, shi = -kPUnbounded;
        for (const TruncatedSeries* s : {&a, &b}) {
            if (d < s->lmin_ || d > s->lmax_) continue;
            std::size_t j = static_cast<std::size_t>(d - s->lmin_);
            if (s->data_[j].empty()) continue;
            slo = std::min(slo, s->base_[j]);
            shi = std::max(shi, s->base_[j] + static_cast<PExp>(s->data_[j].size()) - 1);
        }
        klo = std::max(klo, slo);
        khi = std::min(khi, shi);
        for (PExp k = klo; k <= khi; ++k) {
            GaussQ v = a.at(d, k) + b.at(d, k);
            if (!v.is_zero()) r.set_coeff(d, k, v);
        }
    }
    r.trim();
    r.tighten_lambda();
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.window_empty() || b.window_empty()) return TruncatedSeries::zero(0, -1);
    LExp lmin = a.lmin_ + b.lmin_;
    LExp ea = eff_lmin(a), eb = eff_lmin(b);
    if (ea > a.lmax_ || eb > b.lmax_) {
        // one factor is provably zero on its whole window
        TruncatedSeries z = TruncatedSeries::zero(lmin, a.lmax_ + b.lmax_);
        return z;
    }
    LExp lmax = std::min(a.lmax_ + eb, ea + b.lmax_);
    TruncatedSeries r = TruncatedSeries::zero(lmin, lmax);
    if (r.window_empty()) return r;
    for (LExp D = r.lmin_; D <= r.lmax_; ++D) {
        std::size_t i = static_cast<std::size_t>(D - r.lmin_);
        PExp lo = kPUnbounded, hi = kPUnbounded;
        for (LExp d1 = std::max(a.lmin_, D - b.lmax_); d1 <= std::min(a.lmax_, D - b.lmin_); ++d1) {
            LExp d2 = D - d1;
            PExp l1 = eff_lo(a, d1), l2 = eff_lo(b, d2);
            lo = std::min(lo, sat_add(l1, l2));
            hi = std::min(hi, std::min(sat_add(a.p_hi(d1), l2), sat_add(l1, b.p_hi(d2))));
        }
        r.plo_[i] = lo;
        r.phi_[i] = hi;
    }
    // preallocate output rows over the reachable support per output slice
    for (LExp D = r.lmin_; D <= r.lmax_; ++D) {
        std::size_t io = static_cast<std::size_t>(D - r.lmin_);
        if (r.plo_[io] > r.phi_[io]) continue;
        PExp lo = kPUnbounded, hi = -kPUnbounded;
        for (LExp d1 = std::max(a.lmin_, D - b.lmax_); d1 <= std::min(a.lmax_, D - b.lmin_); ++d1) {
            LExp d2 = D - d1;
            std::size_t i1 = static_cast<std::size_t>(d1 - a.lmin_);
            std::size_t i2 = static_cast<std::size_t>(d2 - b.lmin_);
            if (a.data_[i1].empty() || b.data_[i2].empty()) continue;
            lo = std::min(lo, a.base_[i1] + b.base_[i2]);
            hi = std::max(hi, a.base_[i1] + static_cast<PExp>(a.data_[i1].size()) - 1 + b.base_[i2] +
                                  static_cast<PExp>(b.data_[i2].size()) - 1);
        }
        lo = std::max(lo, r.plo_[io]);
        hi = std::min(hi, r.phi_[io]);
        if (lo > hi) continue;
        r.base_[io] = lo;
        r.data_[io].assign(static_cast<std::size_t>(hi - lo + 1), GaussQ());
    }
    for (LExp d1 = a.lmin_; d1 <= a.lmax_; ++d1) {
        std::size_t i1 = static_cast<std::size_t>(d1 - a.lmin_);
        const auto& rowa = a.data_[i1];
        if (rowa.empty()) continue;
        for (LExp d2 = b.lmin_; d2 <= b.lmax_; ++d2) {
            LExp D = d1 + d2;
            if (D < r.lmin_ || D > r.lmax_) continue;
            std::size_t i2 = static_cast<std::size_t>(d2 - b.lmin_);
            const auto& rowb = b.data_[i2];
            if (rowb.empty()) continue;
            std::size_t io = static_cast<std::size_t>(D - r.lmin_);
            auto& rowo = r.data_[io];
            if (rowo.empty()) continue;
            const PExp obase = r.base_[io];
            const PExp olast = obase + static_cast<PExp>(rowo.size()) - 1;
            for (std::size_t ja = 0; ja < rowa.size(); ++ja) {
                if (rowa[ja].is_zero()) continue;
                PExp ka = a.base_[i1] + static_cast<PExp>(ja) + b.base_[i2];
                // output exponent kk = ka + jb, restricted to the row span
                if (ka > olast) continue;
                PExp jb0p = std::max<PExp>(0, obase - ka);
                PExp jb1p = std::min<PExp>(static_cast<PExp>(rowb.size()), olast - ka + 1);
                for (PExp jb = jb0p; jb < jb1p; ++jb) {
                    const GaussQ& vb = rowb[static_cast<std::size_t>(jb)];
                    if (vb.is_zero()) continue;
                    rowo[static_cast<std::size_t>(ka - obase + jb)].add_mul(rowa[ja], vb);
                }
            }
        }
    }
    r.trim();
    r.tighten_lambda();
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const GaussQ& c) const {
    TruncatedSeries r = *this;
    if (c.is_zero()) {
        for (auto& row : r.data_) row.clear();
        std::fill(r.base_.begin(), r.base_.end(), 0);
        return r;
    }
    for (auto& row : r.data_)
        for (auto& x : row) x = x * c;
    return r;
}

TruncatedSeries TruncatedSeries::shifted(LExp d, PExp k) const {
    TruncatedSeries r = *this;
    r.lmin_ += d;
    r.lmax_ += d;
    for (std::size_t i = 0; i < r.plo_.size(); ++i) {
        r.plo_[i] = sat_add(r.plo_[i], k);
        r.phi_[i] = sat_add(r.phi_[i], k);
        r.base_[i] += k;
    }
    return r;
}

TruncatedSeries TruncatedSeries::clamped(LExp lmin, LExp lmax, PExp plo, PExp phi) const {
    lmin = std::max(lmin, lmin_);
    lmax = std::min(lmax, lmax_);
    TruncatedSeries r = zero(lmin, lmax);
    for (LExp d = lmin; d <= lmax; ++d) {
        std::size_t i = static_cast<std::size_t>(d - lmin);
        r.plo_[i] = std::max(p_lo(d), plo);
        r.phi_[i] = std::min(p_hi(d), phi);
        if (r.plo_[i] > r.phi_[i]) continue;
        std::size_t is = idx(d);
        for (std::size_t j = 0; j < data_[is].size(); ++j) {
            PExp k = base_[is] + static_cast<PExp>(j);
            if (data_[is][j].is_zero()) continue;
            if (k < r.plo_[i])
                throw std::invalid_argument(
                    "TruncatedSeries::clamped: low clamp would discard known support");
            if (k <= r.phi_[i]) r.set_coeff(d, k, data_[is][j]);
        }
    }
    r.trim();
    return r;
}

// drop leading Lambda slices that are provably zero in full
void TruncatedSeries::tighten_lambda() {
    std::size_t drop = 0;
    while (drop < data_.size()) {
        std::size_t i = drop;
        bool provable_zero = data_[i].empty() && phi_[i] >= kPUnbounded;
        if (!provable_zero) break;
        ++drop;
    }
    if (drop == 0) return;
    lmin_ += static_cast<LExp>(drop);
    plo_.erase(plo_.begin(), plo_.begin() + static_cast<std::ptrdiff_t>(drop));
    phi_.erase(phi_.begin(), phi_.begin() + static_cast<std::ptrdiff_t>(drop));
    data_.erase(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(drop));
    base_.erase(base_.begin(), base_.begin() + static_cast<std::ptrdiff_t>(drop));
}

TruncatedSeries TruncatedSeries::inverse(PExp exact_width) const {
    if (window_empty()) throw std::domain_error("inverse of series with empty window");
    LExp v;
    try {
        v = lambda_valuation();
    } catch (const std::domain_error&) {
        throw std::domain_error("non-unit leading term");
    }
    TruncatedSeries u = shifted(-v, 0);
    PExp k0 = u.p_valuation(0);
    GaussQ c0 = u.at(0, k0);
    TruncatedSeries u0 = u.clamped(0, 0, -kPUnbounded, kPUnbounded);
    TruncatedSeries rho = u0.shifted(0, -k0).scaled(c0.inv()) - one(0);  // p-valuation >= 1
    // knowledge width of the slice above its valuation
    PExp w;
    if (u.p_hi(0) >= kPUnbounded) {
        // exactly known slice: if it is a monomial the inverse is exact,
        // otherwise the geometric series must be cut somewhere; keep as many
        // steps as requested (default: the stored width of the slice)
        if (rho.is_zero())
            w = kPUnbounded;
        else
            w = (exact_width >= 0) ? exact_width : static_cast<PExp>(u0.data_[0].size()) - 1;
    } else {
        w = u.p_hi(0) - k0;
    }
    TruncatedSeries inv0 = one(0);
    if (!rho.is_zero()) {
        PExp rv = rho.p_valuation(0);
        if (rv <= 0) throw std::domain_error("non-unit leading term");
        TruncatedSeries acc = one(0);
        TruncatedSeries sum = one(0);
        for (PExp j = 1; j * rv <= w; ++j) {
            acc = acc * rho;
            if (acc.is_zero()) break;
            sum = sum + ((j % 2) ? -acc : acc);
        }
        inv0 = sum.clamped(0, 0, -kPUnbounded, w);
    } else if (w < kPUnbounded) {
        inv0 = inv0.clamped(0, 0, -kPUnbounded, w);
    }
    inv0 = inv0.shifted(0, -k0).scaled(c0.inv());
    // widen the Lambda window of inv0 (higher slices of a Lambda^0-supported
    // series are exactly zero)
    LExp lout = std::max(u.lambda_max(), 0);
    TruncatedSeries inv0w = zero(0, lout);
    inv0w.plo_[0] = inv0.plo_[0];
    inv0w.phi_[0] = inv0.phi_[0];
    for (const auto& [dk, c] : inv0.terms()) inv0w.set_coeff(0, dk.second, c);
    TruncatedSeries result = inv0w;
    if (u.lambda_max() >= 1) {
        TruncatedSeries uplus = u.clamped(1, u.lambda_max(), -kPUnbounded, kPUnbounded);
        // re-anchor the window so the zero slices 0..0 are declared known
        TruncatedSeries up = zero(0, u.lambda_max());
        for (LExp d = 1; d <= u.lambda_max(); ++d) {
            up.plo_[static_cast<std::size_t>(d)] = uplus.p_lo(d);
            up.phi_[static_cast<std::size_t>(d)] = uplus.p_hi(d);
            if (up.plo_[static_cast<std::size_t>(d)] > up.phi_[static_cast<std::size_t>(d)]) continue;
        }
        for (const auto& [dk, c] : uplus.terms()) up.set_coeff(dk.first, dk.second, c);
        if (!up.is_zero()) {
            TruncatedSeries core = up * inv0w;
            TruncatedSeries t = inv0w;
            for (LExp j = 1; j <= u.lambda_max(); ++j) {
                t = t * core;
                if (t.window_empty()) break;
                result = result + ((j % 2) ? -t : t);
                if (t.is_zero()) break;
            }
        }
    }
    return result.shifted(-v, 0);
}

TruncatedSeries TruncatedSeries::pow_int(long n) const {
    if (n < 0) return inverse().pow_int(-n);
    TruncatedSeries acc = one(std::max(lmax_, 0));
    if (n == 0) return acc;
    TruncatedSeries base = *this;
    unsigned long e = static_cast<unsigned long>(n);
    bool first = true;
    while (e) {
        if (e & 1) {
            acc = first ? base : acc * base;
            first = false;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

TruncatedSeries TruncatedSeries::exp() const {
    for (LExp d = lmin_; d <= std::min(lmax_, 0); ++d) {
        if (!slice_zero(d)) {
            std::ostringstream os;
            os << "series_exp: nonzero constant term in Lambda degree " << d;
            throw std::domain_error(os.str());
        }
    }
    TruncatedSeries sum = one(lmax_);
    TruncatedSeries term = one(lmax_);
    mpq_class fact(1);
    for (LExp j = 1; j <= lmax_; ++j) {
        term = term * *this;
        if (term.window_empty()) break;
        fact *= j;
        sum = sum + term.scaled(GaussQ(mpq_class(1) / fact, mpq_class(0)));
        if (term.is_zero()) break;
    }
    return sum;
}

TruncatedSeries TruncatedSeries::log() const {
    if (lmin_ > 0 || lmax_ < 0) throw std::domain_error("series_log: window does not contain Lambda^0");
    TruncatedSeries dev = clamped(0, 0, -kPUnbounded, kPUnbounded) - one(0);
    if (!dev.is_zero()) throw std::domain_error("series_log: Lambda^0 slice is not 1");
    for (LExp d = lmin_; d < 0; ++d)
        if (!slice_zero(d)) throw std::domain_error("series_log: nonzero negative Lambda part");
    TruncatedSeries r = *this - one(lmax_);
    TruncatedSeries sum = zero(0, lmax_);
    TruncatedSeries term = one(lmax_);
    for (LExp j = 1; j <= lmax_; ++j) {
        term = term * r;
        if (term.window_empty()) break;
        GaussQ c(mpq_class((j % 2) ? 1 : -1, j), mpq_class(0));
        sum = sum + term.scaled(c);
        if (term.is_zero()) break;
    }
    return sum;
}

TruncatedSeries TruncatedSeries::binomial_pow(long num, long den, const GaussQ* leading_root) const {
    if (den != 1 && den != 2) throw std::invalid_argument("binomial_pow: denominator must be 1 or 2");
    if (den == 1) return pow_int(num);
    LExp v = lambda_valuation();
    PExp k0 = shifted(-v, 0).p_valuation(0);
    GaussQ c0 = at(v, k0);
    if ((static_cast<long>(v) * num) % den != 0 || (k0 * num) % den != 0)
        throw std::domain_error("binomial_pow: leading monomial is not a square");
    LExp vout = static_cast<LExp>(static_cast<long>(v) * num / den);
    PExp kout = k0 * num / den;
    GaussQ lead;
    if (leading_root) {
        if (*leading_root * *leading_root != c0)
            throw std::domain_error("binomial_pow: supplied root does not square to the leading coefficient");
        lead = leading_root->pow(num);
    } else {
        GaussQ root;
        try {
            root = c0.sqrt();
        } catch (const std::domain_error&) {
            throw std::domain_error(
                "binomial_pow: leading coefficient is not a perfect square and no root was supplied");
        }
        lead = root.pow(num);
    }
    TruncatedSeries unit = shifted(-v, -k0).scaled(c0.inv());
    TruncatedSeries r = unit - one(unit.lambda_max());
    if (!r.window_empty() && r.lambda_min() <= 0 && r.lambda_max() >= 0 && !r.slice_zero(0) &&
        r.p_hi(0) >= kPUnbounded)
        throw std::domain_error(
            "binomial_pow: leading slice has an exactly-known infinite tail; clamp the p window first");
    mpq_class alpha(num, den);
    alpha.canonicalize();
    TruncatedSeries sum = one(unit.lambda_max());
    TruncatedSeries term = one(unit.lambda_max());
    PExp pw = (p_hi(v) >= kPUnbounded) ? 0 : (p_hi(v) - k0);
    long maxj = (static_cast<long>(unit.lambda_max()) + 1) * (static_cast<long>(pw) + 2);
    for (long j = 1; j <= maxj; ++j) {
        term = term * r;
        if (term.window_empty() || term.is_zero()) break;
        sum = sum + term.scaled(GaussQ(binomial_rational(alpha, static_cast<unsigned long>(j)), mpq_class(0)));
    }
    return sum.scaled(lead).shifted(vout, kout);
}

TruncatedSeries TruncatedSeries::derivative_p() const {
    TruncatedSeries r = zero(lmin_, lmax_);
    for (LExp d = lmin_; d <= lmax_; ++d) {
        std::size_t i = static_cast<std::size_t>(d - lmin_);
        r.plo_[i] = sat_add(plo_[i], -1);
        r.phi_[i] = sat_add(phi_[i], -1);
        for (std::size_t j = 0; j < data_[i].size(); ++j) {
            PExp k = base_[i] + static_cast<PExp>(j);
            if (k == 0 || data_[i][j].is_zero()) continue;
            r.set_coeff(d, k - 1, data_[i][j] * GaussQ(k));
        }
    }
    r.trim();
    return r;
}

TruncatedSeries TruncatedSeries::lambda_ddlambda() const {
    TruncatedSeries r = *this;
    for (LExp d = lmin_; d <= lmax_; ++d) {
        std::size_t i = static_cast<std::size_t>(d - lmin_);
        for (auto& c : r.data_[i]) c = c * GaussQ(d);
    }
    r.trim();
    return r;
}

TruncatedSeries TruncatedSeries::substitute_p(const TruncatedSeries& g, PExp ginv_width) const {
    if (g.lambda_min() > 0) throw std::domain_error("substitute: g window misses Lambda^0");
    if (!g.slice_zero(0)) {
        if (g.p_valuation(0) < 1)
            throw std::domain_error("substitute: valuation profile violated (g0 must vanish at p=0)");
    }
    LExp lmax = g.lambda_max();
    TruncatedSeries result = zero(0, lmax);
    bool need_inverse = false;
    PExp kmin = 0, kmax = 0;
    auto f_terms = terms();
    for (const auto& [dk, c] : f_terms) {
        if (dk.second < 0) need_inverse = true;
        kmin = std::min(kmin, dk.second);
        kmax = std::max(kmax, dk.second);
    }
    TruncatedSeries ginv;
    if (need_inverse) {
        if (ginv_width < 0) ginv_width = (-kmin + kmax + 1) * (static_cast<PExp>(lmax) + 2) + 8;
        ginv = g.inverse(ginv_width);
    }
    std::map<PExp, TruncatedSeries> powers;
    powers[0] = one(lmax);
    std::function<const TruncatedSeries&(PExp)> gpow = [&](PExp k) -> const TruncatedSeries& {
        auto it = powers.find(k);
        if (it != powers.end()) return it->second;
        if (k > 0) {
            const TruncatedSeries& prev = gpow(k - 1);
            return powers.emplace(k, prev * g).first->second;
        }
        const TruncatedSeries& prev = gpow(k + 1);
        return powers.emplace(k, prev * ginv).first->second;
    };
    for (const auto& [dk, c] : f_terms) {
        LExp d = dk.first;
        PExp k = dk.second;
        if (d > lmax) continue;
        TruncatedSeries t = gpow(k).shifted(d, 0).scaled(c);
        result = result + t.clamped(0, lmax, -kPUnbounded, kPUnbounded);
    }
    return result;
}

TruncatedSeries change_var_residue(const TruncatedSeries& f, const TruncatedSeries& y_of_x) {
    if (y_of_x.lambda_min() > 0) throw std::domain_error("change_var_residue: y window misses Lambda^0");
    if (y_of_x.slice_zero(0) || y_of_x.p_valuation(0) != 1 || !y_of_x.coeff(0, 1).is_one())
        throw std::domain_error("change_var_residue: y0 must have leading coefficient 1 at x^1");
    TruncatedSeries comp = f.substitute_p(y_of_x);
    TruncatedSeries integrand = comp * y_of_x.derivative_p();
    TruncatedSeries out = TruncatedSeries::zero(0, integrand.lambda_max());
    for (LExp d = 0; d <= integrand.lambda_max(); ++d) {
        const GaussQ& c = integrand.coeff_or_zero(d, -1);
        if (!c.is_zero()) out.set_coeff(d, 0, c);
    }
    return out;
}

// ---------------------------------------------------------------------------

GaussQ UniSeries::coeff(long k) const {
    if (k > order_) throw std::out_of_range("UniSeries: coefficient beyond truncation order");
    auto it = c_.find(k);
    return it == c_.end() ? GaussQ() : it->second;
}

void UniSeries::add(long k, const GaussQ& v) {
    if (k > order_) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
        if (!v.is_zero()) c_[k] = v;
    } else {
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

UniSeries UniSeries::geometric(At tag, long order, const GaussQ& c, long m) {
    if (m == 0) throw std::invalid_argument("UniSeries::geometric: zero exponent");
    UniSeries r(tag, order);
    // exponents counted in the tag direction: toward T = 0 for Zero,
    // toward T = infinity (powers of 1/T) for Infinity
    long step = (tag == At::Zero) ? m : -m;
    if (step > 0) {
        GaussQ acc(1);
        for (long j = 0; j * step <= order; ++j) {
            r.add(j * step, acc);
            acc *= c;
        }
    } else {
        // 1/(1 - c T^m) = -c^{-1} T^{-m} (1 + c^{-1} T^{-m} + ...)
        GaussQ cinv = c.inv();
        GaussQ acc = -cinv;
        for (long j = 1; j * (-step) <= order; ++j) {
            r.add(j * (-step), acc);
            acc *= cinv;
        }
    }
    return r;
}

UniSeries operator*(const UniSeries& a, const UniSeries& b) {
    if (a.tag_ != b.tag_) throw std::invalid_argument("UniSeries: mixed expansion points");
    UniSeries r(a.tag_, std::min(a.order_, b.order_));
    for (const auto& [ka, va] : a.c_)
        for (const auto& [kb, vb] : b.c_) {
            if (ka + kb > r.order_) continue;
            r.add(ka + kb, va * vb);
        }
    return r;
}

UniSeries operator+(const UniSeries& a, const UniSeries& b) {
    if (a.tag_ != b.tag_) throw std::invalid_argument("UniSeries: mixed expansion points");
    UniSeries r(a.tag_, std::min(a.order_, b.order_));
    for (const auto& [k, v] : a.c_) r.add(k, v);
    for (const auto& [k, v] : b.c_) r.add(k, v);
    return r;
}

}  // namespace ktdi
