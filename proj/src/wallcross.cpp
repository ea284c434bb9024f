#include "ktdi/wallcross.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ktdi {

DeltaModular delta_modular(const WallInput& w, int d_max, const SWSeries& sw) {
    if (w.rk_v != 0)
        throw std::invalid_argument(
            "delta_modular: only rk(v) = 0 has an explicit modular evaluation; rk(v) = +-1 is not "
            "supported");
    int need_L = d_max + static_cast<int>(w.chi_O);
    if (sw.lambda_order() < need_L) {
        std::ostringstream os;
        os << "delta_modular: SWSeries lambda_order " << sw.lambda_order() << " < required " << need_L;
        throw std::invalid_argument(os.str());
    }
    // 2 Delta^X_{xi, e^{-2a}} dadq as an exact (Lambda, p) series
    TruncatedSeries S = sw.dadq().scaled(GaussQ(2));
    S = S * sw.exp_ch(-w.xi_w);
    if (w.w_sq >= 0)
        S = S * sw.exp_d2f().pow_int(w.w_sq);
    else
        S = S * sw.exp_d2f().inverse().pow_int(-w.w_sq);
    S = S * sw.genus1_factors(w.euler, w.sigma, 0);
    S = S.shifted(static_cast<LExp>(-w.chi_O), static_cast<PExp>(-w.xi_sq));
    S = S.scaled(GaussQ::i_pow(w.xi_K));

    DeltaModular out;
    out.d_min = static_cast<int>(-w.xi_sq - 3 * w.chi_O);
    for (int d = out.d_min; d <= d_max; d += 4) {
        const GaussQ& c = S.coeff_or_zero(d, 0);  // truncation still errors loudly
        if (!c.is_zero()) out.coeffs[d] = c;
    }
    return out;
}

WindowReport vanishing_and_degree_check(const WallInput& w, const DeltaModular& dm) {
    WindowReport rep;
    std::ostringstream os;
    if (w.chi_O == 1) {
        long lo = -w.xi_sq - 3;
        long hi = w.xi_sq + 2 * std::abs(w.xi_w) + 1;
        for (const auto& [d, c] : dm.coeffs) {
            if (!c.is_zero() && (d < lo || d > hi)) {
                rep.polynomial_window_ok = false;
                os << "coefficient at Lambda^" << d << " outside [" << lo << ", " << hi << "]; ";
            }
        }
    }
    if (w.parity_class() == 1) {
        for (const auto& [d, c] : dm.coeffs) {
            if (!c.is_zero()) {
                rep.parity_ok = false;
                os << "odd parity class but nonzero coefficient at Lambda^" << d << "; ";
            }
        }
    }
    for (const auto& [d, c] : dm.coeffs) {
        if (!c.is_real()) {
            rep.real_ok = false;
            os << "non-real coefficient at Lambda^" << d << "; ";
        }
    }
    rep.detail = os.str();
    return rep;
}

// ---------------------------------------------------------------------------

void ToricWallData::validate() const {
    for (const auto& pt : points) {
        Mono3 s = pt.wx + pt.wy + pt.KX;
        if (!s.is_zero())
            throw std::invalid_argument("ToricWallData: iota*K_X != -w(x)-w(y) at a fixed point");
    }
}

namespace {

struct Ray {
    long c1, c2;
};
constexpr Ray kRays[3] = {{1, 7}, {2, -5}, {3, 11}};

mpq_class lin_at(const Mono3& m, const Ray& r) {
    return mpq_class(static_cast<long>(m.e1)) * r.c1 + mpq_class(static_cast<long>(m.e2)) * r.c2;
}

// pushforward of a per-point cubic numerator: returns the linear form
// x eps1 + y eps2 (lattice units), solved from two rays and checked on a
// third
std::pair<mpq_class, mpq_class> linear_pushforward(
    const ToricWallData& td, const std::function<mpq_class(std::size_t, const Ray&)>& numer) {
    auto eval = [&](const Ray& r) {
        mpq_class acc(0);
        for (std::size_t i = 0; i < td.points.size(); ++i) {
            mpq_class den = lin_at(td.points[i].wx, r) * lin_at(td.points[i].wy, r);
            if (den == 0) throw std::domain_error("pushforward: ray lies on a weight wall");
            acc += numer(i, r) / den;
        }
        return acc;
    };
    mpq_class vA = eval(kRays[0]), vB = eval(kRays[1]), vC = eval(kRays[2]);
    // solve x c1 + y c2 over the first two rays
    mpq_class det = mpq_class(kRays[0].c1) * kRays[1].c2 - mpq_class(kRays[0].c2) * kRays[1].c1;
    mpq_class x = (vA * kRays[1].c2 - vB * kRays[0].c2) / det;
    mpq_class y = (mpq_class(kRays[0].c1) * vB - mpq_class(kRays[1].c1) * vA) / det;
    if (x * kRays[2].c1 + y * kRays[2].c2 != vC)
        throw std::domain_error("pushforward: localization sum is not a linear form");
    return {x, y};
}

// equivariant character chi~(X, M) of a line bundle with fixed-point weights
// mu_i: sum_i e^{mu_i} / ((1-e^{-wx})(1-e^{-wy})), reduced to a Laurent
// polynomial
SparsePoly toric_character(const ToricWallData& td, const std::vector<Mono3>& mu) {
    TorusFunction acc;
    for (std::size_t i = 0; i < td.points.size(); ++i) {
        TorusFunction t = TorusFunction::monomial(GaussQ(1), mu[i]);
        t = t.times_binomial_pow(-td.points[i].wx, -1);
        t = t.times_binomial_pow(-td.points[i].wy, -1);
        acc += t;
    }
    return acc.as_polynomial();
}

// constant-term extraction in the auxiliary variable: expansion toward
// T^{1/2} = e^{-t/2} -> 0 (side +1) or T^{1/2} -> infinity (side -1); the
// t-free denominator factors ride along
TorusFunction extract_T_constant(const TorusFunction& f, int side) {
    SparsePoly P = f.num();
    std::map<Mono3, int> tfree;
    struct Oriented {
        Mono3 w;
        int mult;
    };
    std::vector<Oriented> factors;
    for (const auto& [w, m] : f.den()) {
        if (w.e3 == 0) {
            tfree[w] += m;
            continue;
        }
        // orient so the geometric series runs in the vanishing direction:
        // e^{w} -> 0 iff side * w.e3 < 0
        Mono3 ww = w;
        if (side * ww.e3 > 0) {
            // 1/(1 - e^{w})^m = (-1)^m e^{-m w} / (1 - e^{-w})^m
            GaussQ sgn((m % 2 == 0) ? 1 : -1);
            P = P.shifted(ww.scaled(-m)).scaled(sgn);
            ww = -ww;
        }
        factors.push_back({ww, m});
    }
    // drop rule: multiplying by e^{ww} moves e3 strictly toward the cut;
    // terms already past the cut can never come back to e3 = 0
    auto prune = [&](SparsePoly& Q) {
        SparsePoly out;
        Q.for_each([&](const Mono3& m, const GaussQ& c) {
            if (side * m.e3 >= 0) out.add_term(m, c);
        });
        Q = std::move(out);
    };
    prune(P);
    for (const auto& fac : factors) {
        for (int rep = 0; rep < fac.mult; ++rep) {
            // P <- P * (1 + f + f^2 + ...), truncated when e3 passes 0
            SparsePoly acc = P;
            SparsePoly cur = P;
            while (true) {
                cur = cur.shifted(fac.w);
                prune(cur);
                if (cur.is_zero()) break;
                acc += cur;
            }
            P = std::move(acc);
        }
    }
    // slice e3 == 0
    SparsePoly P0;
    P.for_each([&](const Mono3& m, const GaussQ& c) {
        if (m.e3 == 0) P0.add_term(m, c);
    });
    TorusFunction out(P0);
    for (const auto& [w, m] : tfree) out = out.times_binomial_pow(w, -m);
    return out;
}

}  // namespace

long ToricWallData::intersection(const std::vector<Mono3>& A, const std::vector<Mono3>& B) const {
    auto eval = [&](const Ray& r) {
        mpq_class acc(0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            mpq_class den = lin_at(points[i].wx, r) * lin_at(points[i].wy, r);
            if (den == 0) throw std::domain_error("intersection: ray lies on a weight wall");
            acc += lin_at(A[i], r) * lin_at(B[i], r) / den;
        }
        return acc;
    };
    mpq_class v0 = eval(kRays[0]), v1 = eval(kRays[1]);
    if (v0 != v1 || v0.get_den() != 1)
        throw std::domain_error("intersection: localization sum is not a constant integer");
    return static_cast<long>(v0.get_num().get_si());
}

std::vector<Mono3> ToricWallData::lifts_xi() const {
    std::vector<Mono3> v;
    for (const auto& p : points) v.push_back(p.xi);
    return v;
}
std::vector<Mono3> ToricWallData::lifts_K() const {
    std::vector<Mono3> v;
    for (const auto& p : points) v.push_back(p.KX);
    return v;
}
std::vector<Mono3> ToricWallData::lifts_c1v() const {
    std::vector<Mono3> v;
    for (const auto& p : points) v.push_back(p.c1v);
    return v;
}

WallInput ToricWallData::to_wall_input() const {
    WallInput w;
    auto xs = lifts_xi();
    auto ks = lifts_K();
    auto vs = lifts_c1v();
    std::vector<Mono3> vK(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) vK[i] = vs[i] + ks[i];
    w.xi_sq = intersection(xs, xs);
    w.xi_K = intersection(xs, ks);
    w.xi_w = intersection(xs, vK);
    w.w_sq = intersection(vK, vK);
    long K_sq = intersection(ks, ks);
    long e = static_cast<long>(points.size());
    if ((K_sq + e) % 12 != 0) throw std::domain_error("to_wall_input: Noether fails");
    w.chi_O = (K_sq + e) / 12;
    w.euler = e;
    if ((K_sq - 2 * e) % 3 != 0) throw std::domain_error("to_wall_input: signature not integral");
    w.sigma = (K_sq - 2 * e) / 3;
    w.rk_v = 0;
    return w;
}

DeltaLocalization delta_localization(const ToricWallData& td, int l_max) {
    td.validate();
    const long D = td.lattice_den;
    const std::size_t NP = td.points.size();
    if (NP == 0) throw std::invalid_argument("delta_localization: no fixed points");
    WallInput wi = td.to_wall_input();
    if (wi.chi_O != 1)
        throw std::invalid_argument("delta_localization: toric surfaces have chi(O) = 1");
    const long xi_sq = wi.xi_sq;

    Mono3 tvec{0, 0, D};

    // characters of M = O(xi) and its dual
    std::vector<Mono3> mu_plus, mu_minus;
    for (const auto& pt : td.points) {
        mu_plus.push_back(pt.xi);
        mu_minus.push_back(-pt.xi);
    }
    SparsePoly chiM = toric_character(td, mu_plus);
    SparsePoly chiMd = toric_character(td, mu_minus);

    // exp(sum_i tau_i a_i^2/(wx_i wy_i)) with tau_i = iota* c1(v),
    // a_i = (t - iota*xi)/2: a monomial e^{x eps1 + y eps2 + z t}
    Mono3 quad{};
    {
        // t^2 coefficient: pushforward of c1(v)/4 — must vanish
        auto t2 = linear_pushforward(td, [&](std::size_t, const Ray&) { return mpq_class(0); });
        (void)t2;
        {
            // explicit vanishing check of sum c1v/(4 wx wy) on two rays
            for (const Ray& r : {kRays[0], kRays[1]}) {
                mpq_class acc(0);
                for (std::size_t i = 0; i < NP; ++i)
                    acc += lin_at(td.points[i].c1v, r) /
                           (4 * lin_at(td.points[i].wx, r) * lin_at(td.points[i].wy, r));
                if (acc != 0)
                    throw std::domain_error("delta_localization: degree-1 pushforward does not vanish");
            }
        }
        long c1v_xi = td.intersection(td.lifts_c1v(), td.lifts_xi());
        auto [x, y] = linear_pushforward(td, [&](std::size_t i, const Ray& r) {
            return lin_at(td.points[i].c1v, r) * lin_at(td.points[i].xi, r) *
                   lin_at(td.points[i].xi, r) / 4;
        });
        mpq_class e1 = x * D, e2 = y * D;
        mpq_class e3 = mpq_class(-c1v_xi, 2) * D;
        if (e1.get_den() != 1 || e2.get_den() != 1 || e3.get_den() != 1)
            throw std::domain_error("delta_localization: quadratic prefactor leaves the lattice");
        quad = Mono3{e1.get_num().get_si(), e2.get_num().get_si(), e3.get_num().get_si()};
    }

    // exp(2 <v^(3)>): v^(3) = [ch(v) e^{c1/2} Todd]_3 for the line-bundle
    // part of v (the point-class part only shifts the equivariant answer by
    // a monomial that dies in the limit)
    Mono3 v3{};
    {
        auto [x, y] = linear_pushforward(td, [&](std::size_t i, const Ray& r) {
            mpq_class l = lin_at(td.points[i].c1v, r);
            mpq_class K = lin_at(td.points[i].KX, r);
            mpq_class c1 = lin_at(td.points[i].c1, r);
            mpq_class wxy = lin_at(td.points[i].wx, r) * lin_at(td.points[i].wy, r);
            mpq_class ch1 = l, ch2 = l * l / 2, ch3 = l * l * l / 6;
            mpq_class half = c1 / 2;
            mpq_class td1 = -K / 2;
            mpq_class td2 = (K * K + wxy) / 12;
            return ch3 + ch2 * (half + td1) + ch1 * (half * half / 2 + half * td1 + td2);
        });
        mpq_class e1 = 2 * x * D, e2 = 2 * y * D;
        if (e1.get_den() != 1 || e2.get_den() != 1)
            throw std::domain_error("delta_localization: v^(3) prefactor leaves the lattice");
        v3 = Mono3{e1.get_num().get_si(), e2.get_num().get_si(), 0};
    }

    // per fixed point: Z^inst_0(w(x), w(y), (t - iota*xi)/2;
    //   Lambda e^{-iota*(K + c1(v))/4})
    std::vector<std::vector<TorusFunction>> Zs;
    for (std::size_t i = 0; i < NP; ++i) {
        const auto& pt = td.points[i];
        Mono3 num = tvec - pt.xi;
        if (num.e1 % 2 || num.e2 % 2 || num.e3 % 2)
            throw std::domain_error("delta_localization: (t - xi)/2 leaves the lattice");
        Mono3 a2{num.e1 / 2, num.e2 / 2, num.e3 / 2};
        std::vector<Mono3> avec{-a2, a2};
        auto Z = zinst_framed(2, 0, l_max, pt.wx, pt.wy, avec, D);
        Mono3 shift = pt.KX + pt.c1v;
        if (shift.e1 % 4 || shift.e2 % 4 || shift.e3 % 4)
            throw std::domain_error("delta_localization: Lambda shift leaves the lattice");
        Zs.push_back(rescale_lambda(Z, 2, Mono3{-shift.e1 / 4, -shift.e2 / 4, -shift.e3 / 4}));
    }

    DeltaLocalization out;
    for (int l = 0; l <= l_max; ++l) {
        TorusFunction total;
        std::vector<int> comp(NP, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int rest) {
            if (slot + 1 == NP) {
                comp[slot] = rest;
                TorusFunction prod = Zs[0][static_cast<std::size_t>(comp[0])];
                for (std::size_t i = 1; i < NP; ++i)
                    prod = prod * Zs[i][static_cast<std::size_t>(comp[i])];
                total += prod;
                return;
            }
            for (int k = 0; k <= rest; ++k) {
                comp[slot] = k;
                rec(slot + 1, rest - k);
            }
        };
        rec(0, l);
        if (total.is_zero()) continue;
        TorusFunction term = total.shifted(quad + v3);
        for (const auto& [mu, c] : chiMd.sorted_terms()) {
            if (!c.is_integer())
                throw std::domain_error("delta_localization: non-integer character multiplicity");
            term = term.times_binomial_pow(-tvec - mu, static_cast<int>(c.re().get_num().get_si()));
        }
        for (const auto& [mu, c] : chiM.sorted_terms()) {
            if (!c.is_integer())
                throw std::domain_error("delta_localization: non-integer character multiplicity");
            term = term.times_binomial_pow(tvec - mu, static_cast<int>(c.re().get_num().get_si()));
        }
        TorusFunction at0 = extract_T_constant(term, +1);
        TorusFunction atinf = extract_T_constant(term, -1);
        TorusFunction delta = at0 - atinf;
        int d = 4 * l - static_cast<int>(xi_sq) - 3;
        SparsePoly poly = delta.as_polynomial();
        // nonequivariant limit three ways: polynomial sum and two rays
        GaussQ lim_poly;
        poly.for_each([&](const Mono3& m, const GaussQ& c) {
            if (m.e3 != 0) throw std::domain_error("delta_localization: t survives the extraction");
            lim_poly += c;
        });
        for (const Ray& r : {kRays[0], kRays[1]}) {
            EpsLaurent e = eps_expand(delta, r.c1, r.c2, 0, D);
            for (int k = e.lo(); k < 0; ++k)
                if (!e.coeff(k).is_zero())
                    throw std::domain_error(
                        "delta_localization: surviving eps pole in the nonequivariant limit");
            GaussQ v = e.coeff(0).evaluate(GaussQ(1));
            if (v != lim_poly)
                throw std::domain_error("delta_localization: ray limits disagree");
        }
        out.equivariant[d] = std::move(poly);
        out.limit[d] = lim_poly;
    }
    return out;
}

}  // namespace ktdi
