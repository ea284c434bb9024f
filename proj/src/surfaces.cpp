#include "ktdi/surfaces.hpp"

#include <sstream>
#include <stdexcept>

namespace ktdi {

BlownUpPlane::BlownUpPlane(long lattice_den) : D_(lattice_den) {
    // fan rays: u1 = e1, u2 = e2, u3 = -e1-e2, u0 = e1+e2 (exceptional);
    // maximal cones (u1,u0), (u0,u2), (u2,u3), (u3,u1); tangent weights at
    // the fixed point of a cone are its dual basis
    const long D = D_;
    // cone (e1, e1+e2): duals eps1-eps2, eps2
    // cone (e1+e2, e2): duals eps1, eps2-eps1
    // cone (e2, -e1-e2): duals eps2-eps1, -eps1
    // cone (-e1-e2, e1): duals -eps2, eps1-eps2
    wx_ = {Mono3{D, -D, 0}, Mono3{D, 0, 0}, Mono3{-D, D, 0}, Mono3{0, -D, 0}};
    wy_ = {Mono3{0, D, 0}, Mono3{-D, D, 0}, Mono3{-D, 0, 0}, Mono3{D, -D, 0}};
    // lift of D = sum a_rho D_rho at cone (v1, v2): a_{v1} m1 + a_{v2} m2
    // H = pullback of the hyperplane class: coefficient 1 on u3 only;
    // E: coefficient 1 on u0 only
    // per cone, (a_{v1}, a_{v2}) for H: (0,0),(0,0),(0,1),(1,0);
    // for E: (0,1),(1,0),(0,0),(0,0)
    auto comb = [&](int i, long a1, long a2) { return wx_[static_cast<std::size_t>(i)].scaled(a1) +
                                                      wy_[static_cast<std::size_t>(i)].scaled(a2); };
    liftH_ = {comb(0, 0, 0), comb(1, 0, 0), comb(2, 0, 1), comb(3, 1, 0)};
    liftE_ = {comb(0, 0, 1), comb(1, 1, 0), comb(2, 0, 0), comb(3, 0, 0)};
}

Mono3 BlownUpPlane::lift(const ClassHE& c, int i) const {
    return liftH_[static_cast<std::size_t>(i)].scaled(c.nH) +
           liftE_[static_cast<std::size_t>(i)].scaled(c.nE);
}

ToricWallData BlownUpPlane::wall_data(const ClassHE& xi, const ClassHE& L, const ClassHE& c1) const {
    ToricWallData td;
    td.lattice_den = D_;
    ClassHE K = canonical_Y();
    for (int i = 0; i < 4; ++i) {
        ToricFixedPoint pt;
        pt.wx = wx_[static_cast<std::size_t>(i)];
        pt.wy = wy_[static_cast<std::size_t>(i)];
        pt.xi = lift(xi, i);
        pt.KX = lift(K, i);
        pt.c1v = lift(L, i).scaled(-1);  // c1(v(L)) = -c1(L)
        pt.c1 = lift(c1, i);
        td.points.push_back(pt);
    }
    td.validate();
    return td;
}

std::vector<WallLM> wall_sets_p2(C1Type t, int d) {
    std::vector<WallLM> out;
    // wall term valuation: Lambda^{-xi^2-3}; contributes iff -xi^2-3 <= d
    for (long m = 1;; ++m) {
        bool any_m = false;
        for (long l = m;; ++l) {
            WallLM w{l, m};
            ClassHE xi = w.xi(t);
            long xi2 = xi.dot(xi);
            if (-xi2 - 3 > d) {
                if (l == m) break;
                break;
            }
            any_m = true;
            out.push_back(w);
        }
        if (!any_m) break;
    }
    return out;
}

WallInput p2_wall_input(C1Type t, const WallLM& w, long n) {
    WallInput wi;
    ClassHE xi = w.xi(t);
    ClassHE K = canonical_Y();
    // v = v(L): c1(v) = -c1(L); L = H^n for type E, H^{2n} for type H
    long npow = (t == C1Type::ZeroViaE) ? n : 2 * n;
    ClassHE c1v{-npow, 0};
    ClassHE vK = c1v + K;
    wi.xi_sq = xi.dot(xi);
    wi.xi_K = xi.dot(K);
    wi.xi_w = xi.dot(vK);
    wi.w_sq = vK.dot(vK);
    wi.chi_O = 1;
    wi.euler = 4;
    wi.sigma = 0;
    wi.rk_v = 0;
    return wi;
}

std::vector<mpz_class> chi_series(C1Type t, long n, int d_max, const SWSeries& sw) {
    // P2 moduli at Lambda^d correspond to Lambda^{d+1} on the blowup for
    // type E (the blowup transfer shifts d by one) and to Lambda^d for type H
    int dY = (t == C1Type::ZeroViaE) ? d_max + 1 : d_max;
    std::vector<GaussQ> acc(static_cast<std::size_t>(d_max) + 1);
    auto walls = wall_sets_p2(t, dY);
    for (const auto& w : walls) {
        WallInput wi = p2_wall_input(t, w, n);
        DeltaModular dm = delta_modular(wi, dY, sw);
        auto rep = vanishing_and_degree_check(wi, dm);
        if (!rep.polynomial_window_ok || !rep.parity_ok || !rep.real_ok)
            throw std::domain_error("chi_series: wall term fails structural checks: " + rep.detail);
        for (const auto& [dd, c] : dm.coeffs) {
            int dP2 = (t == C1Type::ZeroViaE) ? dd - 1 : dd;
            if (dP2 < 0 || dP2 > d_max) continue;
            acc[static_cast<std::size_t>(dP2)] += c;
        }
    }
    std::vector<mpz_class> out;
    out.reserve(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const GaussQ& c = acc[i];
        if (!c.is_integer()) {
            std::ostringstream os;
            os << "chi_series: non-integer coefficient " << c << " at Lambda^" << i
               << " (convention or branch bug)";
            throw std::domain_error(os.str());
        }
        out.push_back(c.re().get_num());
    }
    return out;
}

HilbertSeriesResult hilbert_numerator(C1Type t, int d, const SWSeries& sw) {
    HilbertSeriesResult res;
    res.d = d;
    int expected_deg = std::max((t == C1Type::ZeroViaE) ? d - 5 : d - 2, 0);
    int samples = expected_deg + 3;  // two redundant samples on top
    std::vector<mpz_class> chi;
    for (long n = 0; n < samples; ++n) {
        auto col = chi_series(t, n, d, sw);
        chi.push_back(col[static_cast<std::size_t>(d)]);
    }
    // numerator = (1-t)^{d+1} * sum chi t^n truncated to the sample window
    std::vector<mpz_class> num(static_cast<std::size_t>(samples), 0);
    mpz_class binom(1);
    for (int i = 0; i <= d + 1 && i < samples; ++i) {
        if (i > 0) {
            binom *= (d + 2 - i);
            binom /= i;
        }
        mpz_class c = ((i % 2) ? -binom : binom);
        for (int j = 0; i + j < samples; ++j) num[static_cast<std::size_t>(i + j)] += c * chi[static_cast<std::size_t>(j)];
    }
    // the two redundant samples must vanish beyond the numerator degree
    for (int j = expected_deg + 1; j < samples; ++j) {
        if (num[static_cast<std::size_t>(j)] != 0)
            throw std::domain_error("hilbert_numerator: remainder does not vanish (degree overflow)");
    }
    num.resize(static_cast<std::size_t>(expected_deg) + 1);
    while (num.size() > 1 && num.back() == 0) num.pop_back();
    res.numerator = num;
    res.palindromic = true;
    res.nonnegative = true;
    for (std::size_t j = 0; j < num.size(); ++j) {
        if (num[j] != num[num.size() - 1 - j]) res.palindromic = false;
        if (num[j] < 0) res.nonnegative = false;
    }
    return res;
}

// ---------------------------------------------------------------------------

namespace {
mpz_class binom_nonneg(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}
}  // namespace

mpz_class k3_chi(long rk_c, long delta_c, long rk_v, long delta_v) {
    if (delta_c % 2 || delta_v % 2) throw std::invalid_argument("k3_chi: discriminants must be even");
    long x = delta_c / 2 - rk_c * rk_c;
    long y = delta_v / 2 - rk_v * rk_v;
    return binom_nonneg(x + y + 2, x + 1);
}

bool k3_duality_check(long rk_c, long delta_c, long rk_v, long delta_v) {
    // lambda(-v) has the same discriminant data; the duality is the swap
    return k3_chi(rk_c, delta_c, rk_v, delta_v) == k3_chi(rk_v, delta_v, rk_c, delta_c);
}

mpz_class hilb_points_chi(long n, long q_form_value) {
    if (q_form_value % 2) throw std::invalid_argument("hilb_points_chi: q must be even");
    return binom_nonneg(q_form_value / 2 + 2 + n - 1, n);
}

mpz_class abelian_chi(long delta_c, long rk_v, long delta_v) {
    if (delta_c % 2 || delta_v % 2) throw std::invalid_argument("abelian_chi: discriminants must be even");
    if (delta_v + delta_c == 0) return 1;  // moduli and linear system both trivial
    mpz_class b = binom_nonneg(delta_v / 2 + delta_c / 2, delta_c / 2);
    mpq_class r = mpq_class(delta_v + rk_v * rk_v * delta_c, delta_v + delta_c) * mpq_class(b);
    r.canonicalize();
    if (r.get_den() != 1) throw std::domain_error("abelian_chi: result is not an integer");
    return r.get_num();
}

}  // namespace ktdi
