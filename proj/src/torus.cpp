#include "ktdi/torus.hpp"

#include <algorithm>
#include <stdexcept>

namespace ktdi {

SparsePoly SparsePoly::constant(const GaussQ& c) {
    SparsePoly p;
    if (!c.is_zero()) p.terms_.emplace(Mono3{}, c);
    return p;
}

SparsePoly SparsePoly::monomial(const GaussQ& c, const Mono3& m) {
    SparsePoly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

void SparsePoly::add_term(const Mono3& m, const GaussQ& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussQ SparsePoly::coeff(const Mono3& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussQ() : it->second;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    r += b;
    return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    r -= b;
    return r;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    const SparsePoly& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const SparsePoly& big = a.terms_.size() <= b.terms_.size() ? b : a;
    for (const auto& [ma, ca] : small.terms_)
        for (const auto& [mb, cb] : big.terms_) r.add_term(ma + mb, ca * cb);
    return r;
}

SparsePoly SparsePoly::scaled(const GaussQ& c) const {
    SparsePoly r;
    if (c.is_zero()) return r;
    r = *this;
    for (auto& [m, x] : r.terms_) x = x * c;
    return r;
}

SparsePoly SparsePoly::shifted(const Mono3& m) const {
    SparsePoly r;
    for (const auto& [mm, c] : terms_) r.terms_.emplace(mm + m, c);
    return r;
}

SparsePoly SparsePoly::times_binomial(const Mono3& w) const {
    SparsePoly r = *this;
    for (const auto& [m, c] : terms_) r.add_term(m + w, -c);
    return r;
}

SparsePoly SparsePoly::div_binomial(const Mono3& w) const {
    if (w.is_zero()) throw std::invalid_argument("div_binomial: zero weight");
    if (is_zero()) return SparsePoly();
    // Order terms by key <g, m> with g chosen so <g, w> != 0. Division by
    // (1 - e^w): the quotient's minimal term equals the remainder's minimal
    // term when <g, w> > 0.
    Mono3 dir = w;
    // key(m) = <w, m> works: <w, w> > 0
    auto key = [&](const Mono3& m) {
        return static_cast<__int128>(dir.e1) * m.e1 + static_cast<__int128>(dir.e2) * m.e2 +
               static_cast<__int128>(dir.e3) * m.e3;
    };
    __int128 maxkey = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        (void)c;
        __int128 k = key(m);
        if (first || k > maxkey) maxkey = k;
        first = false;
    }
    SparsePoly rem = *this;
    SparsePoly quot;
    while (!rem.is_zero()) {
        // find term with minimal key (ties broken lexicographically for
        // determinism)
        const Mono3* best = nullptr;
        const GaussQ* bc = nullptr;
        __int128 bestk = 0;
        for (const auto& [m, c] : rem.terms_) {
            __int128 k = key(m);
            if (!best || k < bestk || (k == bestk && m < *best)) {
                best = &m;
                bc = &c;
                bestk = k;
            }
        }
        if (bestk > maxkey) throw std::domain_error("div_binomial: not divisible");
        Mono3 m0 = *best;
        GaussQ c0 = *bc;
        quot.add_term(m0, c0);
        rem.add_term(m0, -c0);
        rem.add_term(m0 + w, c0);
    }
    return quot;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [m, c] : terms_) {
        auto it = o.terms_.find(m);
        if (it == o.terms_.end() || it->second != c) return false;
    }
    return true;
}

SparsePoly SparsePoly::mapped(const Mono3& L1, const Mono3& L2, const Mono3& L3) const {
    SparsePoly r;
    for (const auto& [m, c] : terms_)
        r.add_term(L1.scaled(m.e1) + L2.scaled(m.e2) + L3.scaled(m.e3), c);
    return r;
}

GaussQ SparsePoly::evaluate(const GaussQ& t1, const GaussQ& t2, const GaussQ& t3) const {
    GaussQ acc;
    for (const auto& [m, c] : terms_)
        acc += c * t1.pow(m.e1) * t2.pow(m.e2) * t3.pow(m.e3);
    return acc;
}

std::vector<std::pair<Mono3, GaussQ>> SparsePoly::sorted_terms() const {
    std::vector<std::pair<Mono3, GaussQ>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

// ---------------------------------------------------------------------------

void TorusFunction::push_den(const Mono3& w, int mult) {
    if (w.is_zero()) throw std::invalid_argument("TorusFunction: zero binomial weight");
    if (mult == 0) return;
    Mono3 cw = w;
    if (!cw.positive()) {
        // (1 - e^{-v}) = -e^{-v} (1 - e^{v}); dividing by it multiplies the
        // numerator by -e^{v}
        cw = -w;
        // 1/(1-e^{-v})^mult = (-1)^mult e^{mult v} / (1-e^v)^mult
        GaussQ sign((mult % 2 == 0) ? 1 : -1);
        num_ = num_.shifted(cw.scaled(mult)).scaled(sign);
    }
    int& m = den_[cw];
    m += mult;
    if (m == 0) den_.erase(cw);
    if (m < 0) {
        // negative multiplicity: move to numerator
        int k = -m;
        den_.erase(cw);
        for (int i = 0; i < k; ++i) num_ = num_.times_binomial(cw);
    }
}

TorusFunction TorusFunction::binomial(const Mono3& w, int power) {
    TorusFunction f = constant(GaussQ(1));
    f = f.times_binomial_pow(w, power);
    return f;
}

TorusFunction TorusFunction::times_binomial_pow(const Mono3& w, int power) const {
    TorusFunction r = *this;
    if (power == 0 || r.num_.is_zero()) return r;
    if (power > 0) {
        Mono3 cw = w;
        GaussQ pref(1);
        Mono3 shift{};
        if (!cw.positive()) {
            cw = -w;
            // (1 - e^{-v}) = -e^{-v}(1 - e^v)
            pref = GaussQ((power % 2 == 0) ? 1 : -1);
            shift = (-cw).scaled(power);
        }
        // cancel against existing denominator factors first
        auto it = r.den_.find(cw);
        int cancel = 0;
        if (it != r.den_.end()) {
            cancel = std::min(power, it->second);
            it->second -= cancel;
            if (it->second == 0) r.den_.erase(it);
        }
        for (int i = 0; i < power - cancel; ++i) r.num_ = r.num_.times_binomial(cw);
        r.num_ = r.num_.shifted(shift).scaled(pref);
    } else {
        r.push_den(w, -power);
    }
    return r;
}

TorusFunction TorusFunction::operator-() const {
    TorusFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

TorusFunction operator*(const TorusFunction& a, const TorusFunction& b) {
    TorusFunction r;
    r.num_ = a.num_ * b.num_;
    if (r.num_.is_zero()) return TorusFunction();
    r.den_ = a.den_;
    for (const auto& [w, m] : b.den_) {
        int& mm = r.den_[w];
        mm += m;
    }
    return r;
}

TorusFunction& TorusFunction::operator*=(const TorusFunction& o) {
    *this = *this * o;
    return *this;
}

TorusFunction operator+(const TorusFunction& a, const TorusFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // common denominator: multiset max
    TorusFunction r;
    r.den_.clear();
    std::map<Mono3, int> common = a.den_;
    for (const auto& [w, m] : b.den_) {
        auto it = common.find(w);
        if (it == common.end())
            common[w] = m;
        else
            it->second = std::max(it->second, m);
    }
    SparsePoly na = a.num_;
    for (const auto& [w, m] : common) {
        auto it = a.den_.find(w);
        int have = (it == a.den_.end()) ? 0 : it->second;
        for (int i = 0; i < m - have; ++i) na = na.times_binomial(w);
    }
    SparsePoly nb = b.num_;
    for (const auto& [w, m] : common) {
        auto it = b.den_.find(w);
        int have = (it == b.den_.end()) ? 0 : it->second;
        for (int i = 0; i < m - have; ++i) nb = nb.times_binomial(w);
    }
    r.num_ = na + nb;
    if (r.num_.is_zero()) return TorusFunction();
    r.den_ = std::move(common);
    return r;
}

TorusFunction& TorusFunction::operator+=(const TorusFunction& o) {
    *this = *this + o;
    return *this;
}

TorusFunction operator-(const TorusFunction& a, const TorusFunction& b) { return a + (-b); }

TorusFunction TorusFunction::inverse() const {
    // only valid when the numerator is a single monomial times a product of
    // binomials it can be peeled into; general inversion is done by callers
    // that know the factor structure. Here: numerator must be monomial.
    auto ts = num_.sorted_terms();
    if (ts.size() != 1)
        throw std::domain_error("TorusFunction::inverse: non-monomial numerator (factor it explicitly)");
    TorusFunction r = constant(ts[0].second.inv());
    r.num_ = r.num_.shifted(-ts[0].first);
    for (const auto& [w, m] : den_)
        for (int i = 0; i < m; ++i) r.num_ = r.num_.times_binomial(w);
    return r;
}

TorusFunction TorusFunction::scaled(const GaussQ& c) const {
    TorusFunction r = *this;
    r.num_ = r.num_.scaled(c);
    if (r.num_.is_zero()) return TorusFunction();
    return r;
}

TorusFunction TorusFunction::shifted(const Mono3& m) const {
    TorusFunction r = *this;
    r.num_ = r.num_.shifted(m);
    return r;
}

bool TorusFunction::equals(const TorusFunction& o) const {
    return (*this - o).is_zero();
}

TorusFunction TorusFunction::mapped(const Mono3& L1, const Mono3& L2, const Mono3& L3) const {
    TorusFunction r;
    r.num_ = num_.mapped(L1, L2, L3);
    for (const auto& [w, m] : den_) {
        Mono3 wm = L1.scaled(w.e1) + L2.scaled(w.e2) + L3.scaled(w.e3);
        if (wm.is_zero())
            throw std::domain_error("TorusFunction::mapped: denominator factor collapses to zero weight");
        r.push_den(wm, m);
    }
    return r;
}

GaussQ TorusFunction::evaluate(const GaussQ& t1, const GaussQ& t2, const GaussQ& t3) const {
    GaussQ n = num_.evaluate(t1, t2, t3);
    for (const auto& [w, m] : den_) {
        GaussQ d = GaussQ(1) - t1.pow(w.e1) * t2.pow(w.e2) * t3.pow(w.e3);
        if (d.is_zero()) throw std::domain_error("TorusFunction::evaluate: denominator vanishes at point");
        n = n / d.pow(m);
    }
    return n;
}

void TorusFunction::reduce() {
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = den_.begin(); it != den_.end(); ++it) {
            try {
                SparsePoly q = num_.div_binomial(it->first);
                num_ = std::move(q);
                if (--it->second == 0) den_.erase(it);
                progress = true;
                break;
            } catch (const std::domain_error&) {
            }
        }
    }
}

SparsePoly TorusFunction::as_polynomial() const {
    SparsePoly n = num_;
    for (const auto& [w, m] : den_)
        for (int i = 0; i < m; ++i) n = n.div_binomial(w);
    return n;
}

// ---------------------------------------------------------------------------

UniFieldElem UniFieldElem::constant(const GaussQ& c) {
    UniFieldElem e;
    if (!c.is_zero()) e.num_[0] = c;
    return e;
}

UniFieldElem UniFieldElem::monomial(const GaussQ& c, std::int64_t e3) {
    UniFieldElem e;
    if (!c.is_zero()) e.num_[e3] = c;
    return e;
}

UniFieldElem UniFieldElem::binomial_inv(const GaussQ& c, std::int64_t e3) {
    UniFieldElem e;
    e.num_[0] = GaussQ(1);
    e.den_.clear();
    e.den_[0] = GaussQ(1);
    if (!c.is_zero()) {
        auto it = e.den_.find(e3);
        if (it == e.den_.end())
            e.den_[e3] = -c;
        else {
            it->second += -c;
            if (it->second.is_zero()) e.den_.erase(it);
        }
    }
    return e;
}

std::map<std::int64_t, GaussQ> UniFieldElem::mul(const std::map<std::int64_t, GaussQ>& a,
                                                 const std::map<std::int64_t, GaussQ>& b) {
    std::map<std::int64_t, GaussQ> r;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) {
            GaussQ v = va * vb;
            if (v.is_zero()) continue;
            auto it = r.find(ka + kb);
            if (it == r.end()) {
                r[ka + kb] = v;
            } else {
                it->second += v;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

UniFieldElem operator+(const UniFieldElem& a, const UniFieldElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    UniFieldElem r;
    auto n1 = UniFieldElem::mul(a.num_, b.den_);
    auto n2 = UniFieldElem::mul(b.num_, a.den_);
    for (const auto& [k, v] : n2) {
        auto it = n1.find(k);
        if (it == n1.end()) {
            n1[k] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) n1.erase(it);
        }
    }
    if (n1.empty()) return UniFieldElem();
    r.num_ = std::move(n1);
    r.den_ = UniFieldElem::mul(a.den_, b.den_);
    return r;
}

UniFieldElem operator-(const UniFieldElem& a, const UniFieldElem& b) { return a + b.scaled(GaussQ(-1)); }

UniFieldElem operator*(const UniFieldElem& a, const UniFieldElem& b) {
    if (a.is_zero() || b.is_zero()) return UniFieldElem();
    UniFieldElem r;
    r.num_ = UniFieldElem::mul(a.num_, b.num_);
    r.den_ = UniFieldElem::mul(a.den_, b.den_);
    return r;
}

UniFieldElem UniFieldElem::inverse() const {
    if (is_zero()) throw std::domain_error("UniFieldElem: inverse of zero");
    UniFieldElem r;
    r.num_ = den_;
    r.den_ = num_;
    return r;
}

UniFieldElem UniFieldElem::scaled(const GaussQ& c) const {
    if (c.is_zero() || is_zero()) return UniFieldElem();
    UniFieldElem r = *this;
    for (auto& [k, v] : r.num_) v = v * c;
    return r;
}

bool UniFieldElem::equals(const UniFieldElem& o) const {
    auto l = mul(num_, o.den_);
    auto r = mul(o.num_, den_);
    return l == r;
}

GaussQ UniFieldElem::evaluate(const GaussQ& t3) const {
    GaussQ n, d;
    for (const auto& [k, v] : num_) n += v * t3.pow(k);
    for (const auto& [k, v] : den_) d += v * t3.pow(k);
    if (d.is_zero()) throw std::domain_error("UniFieldElem::evaluate: denominator vanishes");
    return n / d;
}

// ---------------------------------------------------------------------------

UniFieldElem EpsLaurent::coeff(int k) const {
    if (k < lo_ || k > hi_) throw std::out_of_range("EpsLaurent: exponent outside window");
    auto it = c_.find(k);
    return it == c_.end() ? UniFieldElem() : it->second;
}

void EpsLaurent::add(int k, const UniFieldElem& v) {
    if (k < lo_ || k > hi_ || v.is_zero()) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_[k] = v;
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

EpsLaurent operator+(const EpsLaurent& a, const EpsLaurent& b) {
    EpsLaurent r(std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
    for (const auto& [k, v] : a.c_)
        if (k <= r.hi_) r.add(k, v);
    for (const auto& [k, v] : b.c_)
        if (k <= r.hi_) r.add(k, v);
    return r;
}

EpsLaurent operator*(const EpsLaurent& a, const EpsLaurent& b) {
    EpsLaurent r(a.lo_ + b.lo_, std::min(a.hi_ + b.lo_, a.lo_ + b.hi_));
    for (const auto& [ka, va] : a.c_)
        for (const auto& [kb, vb] : b.c_) {
            int k = ka + kb;
            if (k >= r.lo_ && k <= r.hi_) r.add(k, va * vb);
        }
    return r;
}

EpsLaurent EpsLaurent::scaled(const GaussQ& c) const {
    EpsLaurent r(lo_, hi_);
    for (const auto& [k, v] : c_) r.add(k, v.scaled(c));
    return r;
}

EpsLaurent EpsLaurent::operator-() const { return scaled(GaussQ(-1)); }

EpsLaurent EpsLaurent::inverse() const {
    // find the lowest nonzero order
    int v = lo_;
    const UniFieldElem* lead = nullptr;
    for (int k = lo_; k <= hi_; ++k) {
        auto it = c_.find(k);
        if (it != c_.end() && !it->second.is_zero()) {
            v = k;
            lead = &it->second;
            break;
        }
    }
    if (!lead) throw std::domain_error("EpsLaurent::inverse: zero series");
    UniFieldElem li = lead->inverse();
    int n = hi_ - v;  // orders of knowledge above the valuation
    EpsLaurent r(-v, -v + n);
    // Neumann series: 1/(L(1+u)) with u of positive valuation
    EpsLaurent u(1, n);
    for (const auto& [k, c] : c_) {
        if (k > v && k - v <= n) u.add(k - v, c * li);
    }
    EpsLaurent acc(0, n);
    acc.add(0, UniFieldElem::constant(GaussQ(1)));
    EpsLaurent sum = acc;
    for (int j = 1; j <= n; ++j) {
        acc = acc * u;
        sum = sum + ((j % 2) ? -acc : acc);
    }
    for (const auto& [k, c] : sum.c_) r.add(k - v, c * li);
    return r;
}

// ---------------------------------------------------------------------------

namespace {
// e^{c eps/D} along the ray with eps coefficient cc (already contracted):
// here we expand exp(cc * eps) formally where one unit of eps carries 1/D.
EpsLaurent exp_ray(const mpq_class& cc, int order) {
    EpsLaurent r(0, order);
    mpq_class term(1);
    for (int j = 0; j <= order; ++j) {
        r.add(j, UniFieldElem::constant(GaussQ(term, mpq_class(0))));
        term = term * cc / (j + 1);
    }
    return r;
}
}  // namespace

EpsLaurent eps_expand(const TorusFunction& f, std::int64_t c1, std::int64_t c2, int order, long lattice_den) {
    if (c1 == 0 && c2 == 0) throw std::invalid_argument("eps_expand: zero ray");
    // eps valuation is bounded below by minus the number of x-free
    // denominator factors (each has a simple zero on the ray)
    int poles = 0;
    for (const auto& [w, m] : f.den()) {
        std::int64_t c = w.e1 * c1 + w.e2 * c2;
        if (w.e3 == 0) {
            if (c == 0)
                throw std::domain_error("eps_expand: denominator factor vanishes identically on the ray");
            poles += m;
        }
    }
    // every inversion of a valuation-1 factor costs two orders of knowledge
    int work = order + 2 * poles;
    auto ray_coeff = [&](const Mono3& m) {
        mpq_class cc = mpq_class(static_cast<long>(m.e1)) * static_cast<long>(c1) +
                       mpq_class(static_cast<long>(m.e2)) * static_cast<long>(c2);
        cc /= lattice_den;
        return cc;
    };
    EpsLaurent acc(0, work);
    acc.add(0, UniFieldElem::constant(GaussQ(1)));
    {
        EpsLaurent numexp(0, work);
        bool any = false;
        f.num().for_each([&](const Mono3& m, const GaussQ& c) {
            EpsLaurent e = exp_ray(ray_coeff(m), work);
            EpsLaurent t(0, work);
            for (int k = 0; k <= work; ++k) {
                UniFieldElem u = e.coeff(k);
                if (!u.is_zero()) t.add(k, u * UniFieldElem::monomial(c, m.e3));
            }
            numexp = numexp + t;
            any = true;
        });
        if (!any) return EpsLaurent(-poles, order);
        acc = acc * numexp;
    }
    for (const auto& [w, m] : f.den()) {
        EpsLaurent fac(0, work);
        EpsLaurent e = exp_ray(ray_coeff(w), work);
        fac.add(0, UniFieldElem::constant(GaussQ(1)));
        for (int k = 0; k <= work; ++k) {
            UniFieldElem u = e.coeff(k);
            if (u.is_zero()) continue;
            if (w.e3 != 0)
                fac.add(k, -(u * UniFieldElem::monomial(GaussQ(1), w.e3)));
            else
                fac.add(k, -u);
        }
        EpsLaurent inv = fac.inverse();
        for (int i = 0; i < m; ++i) acc = acc * inv;
    }
    EpsLaurent out(-poles, order);
    for (int k = std::max(acc.lo(), -poles); k <= std::min(acc.hi(), order); ++k) out.add(k, acc.coeff(k));
    return out;
}

}  // namespace ktdi
