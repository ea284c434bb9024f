#ifndef KTDI_WALLCROSS_HPP
#define KTDI_WALLCROSS_HPP

#include <map>
#include <string>
#include <vector>

#include "ktdi/instanton.hpp"
#include "ktdi/theta.hpp"

namespace ktdi {

/// Topological data of a wall, as seen by the modular-side evaluator.
struct WallInput {
    long xi_sq = 0;   // <xi^2>
    long xi_K = 0;    // <xi, K_X>
    long xi_w = 0;    // <xi, v^(1) + K_X>
    long w_sq = 0;    // <(v^(1) + K_X)^2>
    long chi_O = 1;   // chi(O_X)
    long sigma = 0;   // signature
    long euler = 0;   // Euler number
    int rk_v = 0;     // modular pipeline supports rank 0 only

    /// <xi, v^(1)> mod 2 drives the parity vanishing
    int parity_class() const { return static_cast<int>(((xi_w - xi_K) % 2 + 2) % 2); }
    /// wall condition: <xi, c1 - K> even <=> xi_w - xi_K + xi_sq even by
    /// Riemann-Roch; checked at use sites where the data is available
};

struct DeltaModular {
    std::map<int, GaussQ> coeffs;  // Lambda power -> coefficient
    int d_min = 0;                  // -xi^2 - 3 chi(O)
};

/// Modular-side wallcrossing: the q^0-extraction of the explicit
/// modular-form expression for Delta_xi, coefficient by coefficient in
/// Lambda through d_max. Throws if the SWSeries truncation cannot support
/// the request, or if rk_v != 0.
DeltaModular delta_modular(const WallInput& w, int d_max, const SWSeries& sw);

struct WindowReport {
    bool polynomial_window_ok = true;
    bool parity_ok = true;
    bool real_ok = true;
    std::string detail;
};

/// Degree-window and parity checks on a computed wall polynomial.
WindowReport vanishing_and_degree_check(const WallInput& w, const DeltaModular& dm);

// ---------------------------------------------------------------------------
// localization side (toric)

/// A torus-fixed point of a toric surface with its tangent weights and the
/// equivariant restrictions of the relevant divisor classes, all integer
/// linear forms in (eps1, eps2) stored in lattice units. The lifts are the
/// caller's choice; the nonequivariant limit is lift-independent and the
/// two-ray agreement check is the correctness arbiter.
struct ToricFixedPoint {
    Mono3 wx, wy;           // tangent weights w(x_i), w(y_i)
    Mono3 xi, KX, c1v, c1;  // restrictions of the wall class, K_X, c1(v), c1
};

struct ToricWallData {
    std::vector<ToricFixedPoint> points;
    long lattice_den = kLatticeDen;

    /// invariant of the toric data: iota* K_X = -w(x) - w(y) at every point
    void validate() const;

    /// equivariant intersection pairing of two per-point restriction lists
    long intersection(const std::vector<Mono3>& A, const std::vector<Mono3>& B) const;
    std::vector<Mono3> lifts_xi() const;
    std::vector<Mono3> lifts_K() const;
    std::vector<Mono3> lifts_c1v() const;

    /// WallInput of the same wall for the modular pipeline (rank 0)
    WallInput to_wall_input() const;
};

struct DeltaLocalization {
    /// exact equivariant wall term: Lambda power -> Laurent polynomial in
    /// (t1, t2) (the third lattice slot is zero after extraction)
    std::map<int, SparsePoly> equivariant;
    /// nonequivariant limit: Lambda power -> rational number
    std::map<int, GaussQ> limit;
};

/// Localization-side wallcrossing for a rank-0 class v: the product of
/// instanton partition functions over the fixed points divided by the
/// lambda_{-T}-characters, with the [T^0] - [(T^{-1})^0] extraction, per
/// Lambda power d = 4l - xi^2 - 3 chi(O), l = 0..l_max. The nonequivariant
/// limit is computed three ways (polynomial evaluation and two independent
/// rational rays) which must agree; disagreement is a hard error.
DeltaLocalization delta_localization(const ToricWallData& td, int l_max);

}  // namespace ktdi

#endif
