#ifndef KTDI_INSTANTON_HPP
#define KTDI_INSTANTON_HPP

#include <optional>
#include <string>
#include <vector>

#include "ktdi/partitions.hpp"
#include "ktdi/torus.hpp"

namespace ktdi {

/// Common exponent denominator of the weight lattice. 24 covers the Todd
/// denominators and every (r+m)/2, /4, /8 shift used by the shipped
/// surfaces; configurable at call sites that need more.
constexpr long kLatticeDen = 24;

struct InstantonParams {
    int rank = 2;
    int cs_level = 0;          // |cs_level| <= rank
    int max_instanton = 2;     // series computed through Lambda^{2 rank max}
    long lattice_den = kLatticeDen;

    void validate() const;
};

/// Canonical Coulomb parameters: rank 2 uses a_1 = -a, a_2 = a; general rank
/// exposes the vector explicitly (sum must vanish).
std::vector<Mono3> default_avec(int rank, long lattice_den);

/// Weights w of the binomial factors (1 - e^w) making up
/// n^{Y}_{alpha,beta}(eps1, eps2, avec) — the equivariant character of the
/// dual of Ext^1 between the two fixed-point sheaves.
std::vector<Mono3> pair_factor_weights(const YoungTuple& Y, int alpha, int beta,
                                       const std::vector<Mono3>& avec, long lattice_den);

/// The factor itself, as an expanded Laurent polynomial.
TorusFunction pair_factor(const YoungTuple& Y, int alpha, int beta, const std::vector<Mono3>& avec,
                          long lattice_den);

/// Chern-Simons weight exp(m sum_alpha sum_{s in Y_alpha} (a_alpha
/// - l'(s) eps1 - a'(s) eps2)) as a lattice monomial exponent.
Mono3 cs_weight(const YoungTuple& Y, int cs_level, const std::vector<Mono3>& avec, long lattice_den);

/// Framed variants: the torus weights eps1, eps2 are arbitrary lattice
/// vectors (used on the blowup where they become (eps1, eps2 - eps1) etc).
std::vector<Mono3> pair_factor_weights_framed(const YoungTuple& Y, int alpha, int beta,
                                              const Mono3& eps1, const Mono3& eps2,
                                              const std::vector<Mono3>& avec);
Mono3 cs_weight_framed(const YoungTuple& Y, int cs_level, const Mono3& eps1, const Mono3& eps2,
                       const std::vector<Mono3>& avec);

/// Instanton partition function with 5D Chern-Simons term: coefficient list
/// Z[n] of Lambda^{2 rank n}, n = 0..max_instanton, with the per-instanton
/// weight e^{-(r+m)(eps1+eps2)/2} folded into the coefficients.
std::vector<TorusFunction> zinst(const InstantonParams& p);

/// zinst with explicit Coulomb vector (entries in lattice units; used by the
/// blowup factors where the arguments are shifted).
std::vector<TorusFunction> zinst_general(int rank, int cs_level, int max_instanton,
                                         const std::vector<Mono3>& avec, long lattice_den);

/// zinst evaluated on substituted torus weights: eps1 and eps2 are replaced
/// by the given lattice vectors (e.g. (eps1, eps2-eps1) on the blowup), the
/// Coulomb entries are arbitrary lattice vectors.
std::vector<TorusFunction> zinst_framed(int rank, int cs_level, int max_instanton,
                                        const Mono3& eps1_img, const Mono3& eps2_img,
                                        const std::vector<Mono3>& avec, long lattice_den);

/// Lambda |-> Lambda e^{shift}: multiplies Z[n] by e^{2 r n shift}.
std::vector<TorusFunction> rescale_lambda(const std::vector<TorusFunction>& Z, int rank,
                                          const Mono3& shift);

/// Z^inst_m(...; Lambda e^{-sigma/4}, beta, tau) realized as the
/// Lambda-rescaling form exp(tau a^2/eps1 eps2) * Z^inst_m(...;
/// Lambda e^{-(tau+sigma)/4}): returns the rescaled coefficient list (the
/// exponential prefactor is the caller's, it is not a lattice monomial per
/// fixed point). sigma, tau are lattice vectors; throws if (tau+sigma)/4
/// leaves the lattice.
std::vector<TorusFunction> zinst_shifted(const InstantonParams& p, const Mono3& sigma, const Mono3& tau);

/// log of the Lambda-series with coefficients Z[n] at Lambda^{2rn}:
/// returns F[n], n >= 1, with log Z = sum F[n] Lambda^{2rn}.
std::vector<TorusFunction> log_series(const std::vector<TorusFunction>& Z);

struct RegularityReport {
    bool holds = true;
    int first_failing_order = -1;  // instanton number of the first failure
    std::string detail;
};

/// Prop-style check: Z^inst_m(eps1, -2eps1, a) = Z^inst_m(2eps1, -eps1, a)
/// through the computed order.
RegularityReport regularity_check(const InstantonParams& p);

/// Serre duality: Z^inst_{-m}(-eps1,-eps2,-a) = Z^inst_m(eps1,eps2,a),
/// exactly per coefficient.
RegularityReport serre_duality_check(const InstantonParams& p);

/// eps1 eps2 log Z along the ray (c1, c2): per instanton number n >= 1 the
/// Laurent expansion of eps^2 F[n]; pole-free means valuation >= 0.
struct PoleReport {
    bool pole_free = true;
    int first_failing_order = -1;
};
PoleReport log_pole_check(const InstantonParams& p, std::int64_t c1, std::int64_t c2, int eps_order);

}  // namespace ktdi

#endif
