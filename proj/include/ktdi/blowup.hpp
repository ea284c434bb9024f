#ifndef KTDI_BLOWUP_HPP
#define KTDI_BLOWUP_HPP

#include <map>
#include <string>
#include <vector>

#include "ktdi/instanton.hpp"

namespace ktdi {

struct BlowupParams {
    int rank = 2;
    int cs_level = 0;
    int c1_class = 0;   // k, taken mod r in 0..r-1 conventionally
    int line_power = 0; // d, the mu(C)^{otimes d} twist
    int order = 8;      // keep Lambda powers <= order
    long lattice_den = kLatticeDen;

    void validate() const;
};

/// Weights of the binomial factors of l^{k}_{(alpha,beta)}(eps1,eps2,a):
/// the blowup denominator factor attached to a root. Empty when
/// k_alpha - k_beta is 0 or -1 (the factor is 1).
std::vector<Mono3> l_factor_weights(const std::vector<long>& kvec, int alpha, int beta,
                                    const std::vector<Mono3>& avec, const Mono3& eps1_img,
                                    const Mono3& eps2_img, long lattice_den);

/// The factor itself as a Laurent polynomial (product of the binomials).
TorusFunction l_factor(const std::vector<long>& kvec, int alpha, int beta,
                       const std::vector<Mono3>& avec, long lattice_den);

/// Blowup correlation function: map Lambda-power -> exact coefficient.
/// Lattice sum over kvec with sum = c1_class; truncation is complete per
/// order because the shell at kvec contributes only at Lambda powers
/// >= r (kvec,kvec).
std::map<int, TorusFunction> zhat(const BlowupParams& p);

struct BlowupVerdict {
    bool holds = true;
    bool vanishes = false;       // for the 0 < k < r correlation functions
    int first_failing_order = -1;
    std::string detail;
};

/// Check Zhat_{m,k,d} = Z_m (k = 0) or Zhat_{m,k,d} = 0 (0 < k < r)
/// through the given Lambda order, exactly per coefficient.
BlowupVerdict blowup_identity_check(int rank, int cs_level, int k, int d, int order,
                                    long lattice_den = kLatticeDen);

}  // namespace ktdi

#endif
