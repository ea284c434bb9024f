#include "ktdi/theta.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace ktdi {

namespace {
// phase e^{pi i (n + a/2) b} for the characteristic (a, b)
GaussQ theta_phase(int a, int b, long n) {
    if (b == 0) return GaussQ(1);
    GaussQ ph((n % 2 == 0) ? 1 : -1);
    if (a == 1) ph *= GaussQ::i();
    return ph;
}
}  // namespace

TruncatedSeries theta_constant(ThetaChar c, int lambda_order, PExp p_cap) {
    if (c.a == 1 && c.b == 1)
        throw std::invalid_argument("theta_constant: theta_11 vanishes at z = 0; use jacobi_theta");
    TruncatedSeries s = TruncatedSeries::zero(0, lambda_order).clamped(0, lambda_order, -kPUnbounded, p_cap);
    for (long n = -p_cap - 2; n <= p_cap + 2; ++n) {
        long e = (2 * n + c.a) * (2 * n + c.a);
        if (e > p_cap) continue;
        GaussQ cur = s.coeff(0, e);
        s.set_coeff(0, e, cur + theta_phase(c.a, c.b, n));
    }
    return s;
}

TruncatedSeries jacobi_theta(ThetaChar c, int z_order, PExp p_cap) {
    TruncatedSeries s = TruncatedSeries::zero(0, z_order).clamped(0, z_order, -kPUnbounded, p_cap);
    for (long n = -p_cap - 2; n <= p_cap + 2; ++n) {
        long e = (2 * n + c.a) * (2 * n + c.a);
        if (e > p_cap) continue;
        GaussQ ph = theta_phase(c.a, c.b, n);
        // e^{(n + a/2) zeta} expanded in zeta
        mpq_class base(2 * n + c.a, 2);
        base.canonicalize();
        mpq_class pw(1), fact(1);
        for (int k = 0; k <= z_order; ++k) {
            if (k > 0) {
                pw *= base;
                fact *= k;
            }
            GaussQ coef = ph * GaussQ(pw / fact, mpq_class(0));
            if (!coef.is_zero()) {
                GaussQ cur = s.coeff(k, e);
                s.set_coeff(k, e, cur + coef);
            }
        }
    }
    return s;
}

TruncatedSeries theta_at(ThetaChar c, const TruncatedSeries& half_h_exp, int lambda_order, PExp p_cap) {
    TruncatedSeries acc =
        TruncatedSeries::zero(0, lambda_order).clamped(0, lambda_order, -kPUnbounded, p_cap);
    // every power of exp(h/2) has p-valuation >= -(Lambda order) per slice,
    // so lattice points beyond the window cannot contribute
    PExp reach = p_cap + lambda_order + 1;
    TruncatedSeries Einv;
    bool have_inv = false;
    for (long n = -(lambda_order + 4) - p_cap; n <= p_cap + lambda_order + 4; ++n) {
        long w = 2 * n + c.a;
        long e = w * w;
        if (e > reach) continue;
        GaussQ ph = theta_phase(c.a, c.b, n);
        TruncatedSeries term;
        if (w >= 0) {
            term = half_h_exp.pow_int(w);
        } else {
            if (!have_inv) {
                Einv = half_h_exp.inverse();
                have_inv = true;
            }
            term = Einv.pow_int(-w);
        }
        acc = acc + term.scaled(ph).shifted(0, e);
    }
    return acc;
}

TruncatedSeries eisenstein_E(int two_k, int lambda_order, PExp p_cap) {
    if (two_k < 2 || two_k % 2) throw std::invalid_argument("eisenstein_E: weight must be even >= 2");
    TruncatedSeries s = TruncatedSeries::monomial(GaussQ(1), 0, 0, 0, lambda_order)
                            .clamped(0, lambda_order, -kPUnbounded, p_cap);
    unsigned k = static_cast<unsigned>(two_k / 2);
    mpq_class pref = mpq_class(-4) * static_cast<long>(k) / bernoulli_2k(k);
    for (long n = 1; 8 * n <= p_cap; ++n) {
        mpz_class sig(0);
        for (long dd = 1; dd <= n; ++dd) {
            if (n % dd) continue;
            mpz_class acc(1);
            for (int j = 0; j < two_k - 1; ++j) acc *= dd;
            sig += acc;
        }
        s.set_coeff(0, 8 * n, GaussQ(pref * mpq_class(sig), mpq_class(0)));
    }
    return s;
}

SWSeries::SWSeries(int lambda_order, PExp p_cap) : L_(lambda_order), P_(p_cap) {
    const PExp PC = P_ + 2 * static_cast<PExp>(L_) + 16;  // headroom for divisions and shifts
    th00_ = theta_constant({0, 0}, L_, PC);
    th01_ = theta_constant({0, 1}, L_, PC);
    th10_ = theta_constant({1, 0}, L_, PC);
    TruncatedSeries L2 = TruncatedSeries::monomial(GaussQ(1), 2, 0, 0, L_);
    TruncatedSeries L4 = TruncatedSeries::monomial(GaussQ(1), 4, 0, 0, L_);
    TruncatedSeries t004 = th00_.pow_int(4), t104 = th10_.pow_int(4);
    TruncatedSeries t2 = th00_ * th00_ * th10_ * th10_;
    u_ = (t004 + t104).scaled(GaussQ(-1)) * t2.inverse() * L2;
    {
        TruncatedSeries acc = TruncatedSeries::zero(0, L_);
        std::vector<TruncatedSeries> upow{TruncatedSeries::one(L_)};
        for (int k = 1; 2 * k <= L_ + 2; ++k) upow.push_back(upow.back() * u_);
        for (long n = 0; n <= L_; ++n) {
            for (long k = 0; k <= n; ++k) {
                long lam = 4 * (n - k) + 1 + 2 * k;
                if (lam > L_) continue;
                mpq_class coef = binomial_rational(mpq_class(-1, 2), static_cast<unsigned long>(n)) *
                                 binomial_rational(mpq_class(n), static_cast<unsigned long>(k)) /
                                 (4 * n - 2 * k + 1);
                acc = acc + upow[static_cast<std::size_t>(k)]
                                .shifted(static_cast<LExp>(4 * (n - k) + 1), 0)
                                .scaled(GaussQ(coef, mpq_class(0)));
            }
        }
        h_ = (th00_ * th10_).inverse() * acc.scaled(GaussQ(mpq_class(0), mpq_class(2)));
    }
    exp_half_h_ = h_.scaled(GaussQ(1, 2)).exp();
    exp_half_h_inv_ = h_.scaled(GaussQ(-1, 2)).exp();
    {
        // log[th00 th10 h / (2 i Lambda)]: 1/(2i) = -i/2
        TruncatedSeries arg =
            (th00_ * th10_ * h_).shifted(-1, 0).scaled(GaussQ(mpq_class(0), mpq_class(-1, 2)));
        TruncatedSeries acc = arg.log();
        TruncatedSeries h2 = h_ * h_;
        TruncatedSeries h2k = TruncatedSeries::one(L_);
        mpq_class fact(1);
        for (int k = 1; 2 * k <= L_; ++k) {
            h2k = h2k * h2;
            fact = fact * (2 * k) * (2 * k - 1);
            mpq_class coef = bernoulli_2k(static_cast<unsigned>(k)) / (2 * k) / fact;
            acc = acc + (h2k * eisenstein_E(2 * k, L_, PC)).scaled(GaussQ(coef, mpq_class(0)));
        }
        d2f_ = acc;
    }
    exp_d2f_ = d2f_.exp();
    inv_sqrt_ = (TruncatedSeries::one(L_) + u_ + L4).binomial_pow(-1, 2);
    dadq_ = th01_.pow_int(8) * (th00_ * th10_).inverse() * inv_sqrt_;
    dadq_ = dadq_.shifted(1, 0).scaled(GaussQ::i());
}

TruncatedSeries SWSeries::exp_ch(long c2) const {
    if (c2 >= 0) return exp_half_h_.pow_int(c2);
    return exp_half_h_inv_.pow_int(-c2);
}

TruncatedSeries SWSeries::genus1_factors(long chi, long sigma, int cs_level) const {
    if (cs_level != 0) {
        throw std::domain_error(
            "genus1_factors: cs_level +-1 needs the m = +-1 prepotential q-expansion, which has no known "
            "closed form");
    }
    if ((chi + sigma) % 2 != 0)
        throw std::domain_error("genus1_factors: chi + sigma must be even for an integral p-power");
    long half = (chi + sigma) / 2;
    TruncatedSeries twoinv = (th00_ * th10_).scaled(GaussQ(1, 2));  // (th00 th10)/2
    TruncatedSeries out;
    if (half >= 0)
        out = twoinv.inverse().pow_int(half);
    else
        out = twoinv.pow_int(-half);
    if (sigma >= 0)
        out = out * th01_.pow_int(sigma);
    else
        out = out * th01_.inverse().pow_int(-sigma);
    return out;
}

SWSeries::ContactReport SWSeries::contact_check() const {
    ContactReport rep;
    TruncatedSeries t11h = theta_at({1, 1}, exp_half_h_, L_, P_);
    TruncatedSeries t01h = theta_at({0, 1}, exp_half_h_, L_, P_);
    TruncatedSeries sn_res = t11h + t01h.shifted(1, 0);
    rep.sn_ok = sn_res.is_zero();
    TruncatedSeries ct_res = t01h - th01_ * exp_d2f_;
    rep.contact_ok = ct_res.is_zero();
    std::ostringstream os;
    os << "sn residual " << (rep.sn_ok ? "0" : "nonzero") << "; contact residual "
       << (rep.contact_ok ? "0" : "nonzero");
    rep.detail = os.str();
    return rep;
}

bool SWSeries::check_U1() const {
    TruncatedSeries one_uL4 =
        TruncatedSeries::one(L_) + u_ + TruncatedSeries::monomial(GaussQ(1), 4, 0, 0, L_);
    TruncatedSeries U1 = one_uL4.binomial_pow(1, 2).scaled(GaussQ(-2));
    TruncatedSeries lhs = (U1 * U1).scaled(GaussQ(1, 16));
    TruncatedSeries t004 = th00_.pow_int(4), t104 = th10_.pow_int(4);
    TruncatedSeries frac = (t004 + t104) * (th00_ * th00_ * th10_ * th10_).inverse();
    TruncatedSeries rhs = (TruncatedSeries::one(L_) - frac.shifted(2, 0) +
                           TruncatedSeries::monomial(GaussQ(1), 4, 0, 0, L_))
                              .scaled(GaussQ(1, 4));
    return (lhs - rhs).is_zero();
}

bool SWSeries::check_dtauda() const {
    TruncatedSeries one_uL4 =
        TruncatedSeries::one(L_) + u_ + TruncatedSeries::monomial(GaussQ(1), 4, 0, 0, L_);
    TruncatedSeries lhs = dadq_ * dadq_ * th00_ * th00_ * th10_ * th10_ * one_uL4;
    TruncatedSeries rhs = th01_.pow_int(16).shifted(2, 0).scaled(GaussQ(-1));
    return (lhs - rhs).is_zero();
}

}  // namespace ktdi
