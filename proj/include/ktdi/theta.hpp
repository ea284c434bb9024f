#ifndef KTDI_THETA_HPP
#define KTDI_THETA_HPP

#include <string>

#include "ktdi/series.hpp"

namespace ktdi {

/// Characteristic (a,b) of theta_{ab}. Conventions: q = e^{2 pi i tau},
/// theta_00 = sum q^{n^2/2}, theta_01 = sum (-1)^n q^{n^2/2},
/// theta_10 = sum q^{(n+1/2)^2/2}, theta_11 odd. q^{1/8} is the atomic
/// variable p, so theta constants are integer p-series.
struct ThetaChar {
    int a = 0, b = 0;
};

/// theta_{ab}(0, tau) as an exact p-series up to p^{p_cap}, embedded with
/// Lambda window [0, lambda_order]. Throws for (1,1) (identically zero at
/// z = 0; use jacobi_theta for the z-dependence).
TruncatedSeries theta_constant(ThetaChar c, int lambda_order, PExp p_cap);

/// Two-variable expansion of theta_{ab}(z, tau) in the scaled variable
/// zeta = 2 pi i z (so all coefficients stay Gaussian rational). The
/// Lambda-slot of the returned series carries the zeta-grading: the
/// coefficient of zeta^k is a p-series.
TruncatedSeries jacobi_theta(ThetaChar c, int z_order, PExp p_cap);

/// theta_{ab} evaluated at zeta = c2/2 * h for an h-type series (Lambda
/// valuation >= 1): sum over the lattice of p^{(2n+a)^2} phase e^{(n+a/2)
/// c2/2 h}. Used with c2 = 2 for the contact identities.
TruncatedSeries theta_at(ThetaChar c, const TruncatedSeries& half_h_exp, int lambda_order,
                         PExp p_cap);

/// Normalized Eisenstein series E_{2k}(q) as a p-series (q = p^8).
TruncatedSeries eisenstein_E(int two_k, int lambda_order, PExp p_cap);

/// All the Seiberg-Witten side q-expansions at a fixed truncation, computed
/// once and reused. beta = 1 throughout.
class SWSeries {
public:
    SWSeries(int lambda_order, PExp p_cap);

    int lambda_order() const { return L_; }
    PExp p_cap() const { return P_; }

    const TruncatedSeries& th00() const { return th00_; }
    const TruncatedSeries& th01() const { return th01_; }
    const TruncatedSeries& th10() const { return th10_; }

    /// u = -(th00^4 + th10^4)/(th00^2 th10^2) Lambda^2
    const TruncatedSeries& u() const { return u_; }
    /// h = -(1/4) d^2F0/(da dlogLambda)
    const TruncatedSeries& h() const { return h_; }
    /// exp(h/2)
    const TruncatedSeries& exp_half_h() const { return exp_half_h_; }
    /// (1/32) d^2F0/(dlogLambda)^2
    const TruncatedSeries& d2f() const { return d2f_; }
    /// exp of the above = -theta11(h-arg)/(Lambda theta01(0))
    const TruncatedSeries& exp_d2f() const { return exp_d2f_; }
    /// (a^2/Lambda) q^{1/8} d(Lambda/a)/d(q^{1/8})
    const TruncatedSeries& dadq() const { return dadq_; }
    /// (1 + u + Lambda^4)^{-1/2}
    const TruncatedSeries& inv_sqrt_1uL4() const { return inv_sqrt_; }

    /// exp(c2/2 * h) by integer powers of exp(h/2)
    TruncatedSeries exp_ch(long c2) const;

    /// exp(chi A + sigma B); for cs_level 0 this is
    /// (2/(th00 th10))^{(chi+sigma)/2} th01^sigma, requiring chi+sigma even.
    /// cs_level +-1 requires the unavailable m = +-1 prepotential expansion
    /// and throws.
    TruncatedSeries genus1_factors(long chi, long sigma, int cs_level) const;

    /// residual of eq-sn: theta11(h-arg) + Lambda theta01(h-arg); and of the
    /// rank-2 contact equation: theta01(h-arg) - theta01(0) exp(d2f).
    struct ContactReport {
        bool sn_ok = false;
        bool contact_ok = false;
        std::string detail;
    };
    ContactReport contact_check() const;

    /// U1 consistency: (U1/2)^2 with U1 = -2 sqrt(1+u+Lambda^4) against the
    /// direct theta-side expression (1 - (th00^4+th10^4)/(th00^2 th10^2)
    /// Lambda^2 + Lambda^4)/... both sides expanded independently.
    bool check_U1() const;

    /// tau-derivative chain: dadq^2 th00^2 th10^2 (1+u+Lambda^4) =
    /// -Lambda^2 th01^16 (the square of eq-dadq against eq-dtauda).
    bool check_dtauda() const;

private:
    int L_;
    PExp P_;
    TruncatedSeries th00_, th01_, th10_, u_, h_, exp_half_h_, exp_half_h_inv_, d2f_, exp_d2f_, dadq_,
        inv_sqrt_;
};

}  // namespace ktdi

#endif
