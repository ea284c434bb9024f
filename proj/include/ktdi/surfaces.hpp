#ifndef KTDI_SURFACES_HPP
#define KTDI_SURFACES_HPP

#include <string>
#include <vector>

#include "ktdi/wallcross.hpp"

namespace ktdi {

/// Divisor class on the blown-up plane, n_H H + n_E E.
struct ClassHE {
    long nH = 0, nE = 0;

    long dot(const ClassHE& o) const { return nH * o.nH - nE * o.nE; }  // H^2=1, E^2=-1, HE=0
    ClassHE operator+(const ClassHE& o) const { return {nH + o.nH, nE + o.nE}; }
    ClassHE operator-(const ClassHE& o) const { return {nH - o.nH, nE - o.nE}; }
    ClassHE scaled(long c) const { return {c * nH, c * nE}; }
};

inline ClassHE canonical_Y() { return {-3, 1}; }

/// Toric model of the blow-up of P^2 at a torus-fixed point: 4 fixed
/// points with tangent weights and equivariant lifts of H and E (a concrete
/// choice; the nonequivariant limit does not depend on it).
class BlownUpPlane {
public:
    BlownUpPlane(long lattice_den = kLatticeDen);

    int fixed_point_count() const { return 4; }
    const std::vector<Mono3>& weights_x() const { return wx_; }
    const std::vector<Mono3>& weights_y() const { return wy_; }

    /// lift of n_H H + n_E E at fixed point i
    Mono3 lift(const ClassHE& c, int i) const;

    /// assemble the wall data for the wall class xi with v = v(L) of rank 0,
    /// c1(v) = -c1(L), on moduli with first Chern class c1
    ToricWallData wall_data(const ClassHE& xi, const ClassHE& L, const ClassHE& c1) const;

    long lattice_den() const { return D_; }

private:
    long D_;
    std::vector<Mono3> wx_, wy_;
    std::vector<Mono3> liftH_, liftE_;
};

/// The Sec.-style wall catalogs on the blown-up plane: type E walls
/// {2mH - (2l+1)E : l >= m > 0} and type H walls {(2m-1)H - 2lE : l >= m > 0}.
enum class C1Type { ZeroViaE, HViaH };

struct WallLM {
    long l = 0, m = 0;
    ClassHE xi(C1Type t) const {
        if (t == C1Type::ZeroViaE) return {2 * m, -(2 * l + 1)};
        return {2 * m - 1, -2 * l};
    }
};

/// Walls contributing to Lambda powers <= d on the blown-up plane (the wall
/// term has Lambda valuation -xi^2 - 3, a hard cutoff).
std::vector<WallLM> wall_sets_p2(C1Type t, int d);

/// WallInput of a catalog wall for mu(H^{otimes n}) (type E pipeline) or
/// mu(H^{otimes 2n}) (type H pipeline).
WallInput p2_wall_input(C1Type t, const WallLM& w, long n);

/// chi(M^{P2}_H(c1, d), mu-power n) for d = 0..d_max via the blowup-transfer
/// wall sum; exact integers.
std::vector<mpz_class> chi_series(C1Type t, long n, int d_max, const SWSeries& sw);

struct HilbertSeriesResult {
    int d = 0;
    std::vector<mpz_class> numerator;  // coefficients of P_d(t) or Q_d(t)
    bool palindromic = false;
    bool nonnegative = false;
};

/// Numerator of sum_n chi t^n = P(t)/(1-t)^{d+1}, with two redundant
/// samples verified; throws if the tail does not vanish.
HilbertSeriesResult hilbert_numerator(C1Type t, int d, const SWSeries& sw);

// ---------------------------------------------------------------------------
// closed-form Euler characteristics

/// K3: chi(M_H(c), lambda(v)) = C(dc/2 - rc^2 + dv/2 - rv^2 + 2,
///                                dc/2 - rc^2 + 1)
mpz_class k3_chi(long rk_c, long delta_c, long rk_v, long delta_v);

/// swap symmetry chi(c; -v) = chi(v; -c) under chi(v x c) = 0
bool k3_duality_check(long rk_c, long delta_c, long rk_v, long delta_v);

/// Hilbert scheme of points: chi(X^[n], lambda(v)) = C(q/2 + 2 + n - 1, n)
mpz_class hilb_points_chi(long n, long q_form_value);

/// abelian surface, rk(c) = 1:
/// (dv + rv^2 dc)/(dv + dc) C(dv/2 + dc/2, dc/2); asserted integral
mpz_class abelian_chi(long delta_c, long rk_v, long delta_v);

}  // namespace ktdi

#endif
