#include "ktdi/instanton.hpp"

#include <sstream>
#include <stdexcept>

namespace ktdi {

void InstantonParams::validate() const {
    if (rank < 1) throw std::invalid_argument("InstantonParams: rank must be >= 1");
    if (std::abs(cs_level) > rank)
        throw std::invalid_argument("InstantonParams: |cs_level| <= rank required");
    if (max_instanton < 0) throw std::invalid_argument("InstantonParams: negative order");
    if (lattice_den <= 0 || lattice_den % 2 != 0)
        throw std::invalid_argument("InstantonParams: lattice denominator must be a positive even integer");
}

std::vector<Mono3> default_avec(int rank, long lattice_den) {
    if (rank == 2) {
        return {Mono3{0, 0, -lattice_den}, Mono3{0, 0, lattice_den}};
    }
    // no canonical listing convention beyond sum = 0 exists in general; for
    // r > 2 callers must pass the vector explicitly
    throw std::invalid_argument("default_avec: only rank 2 has a canonical Coulomb vector; pass avec");
}

std::vector<Mono3> pair_factor_weights_framed(const YoungTuple& Y, int alpha, int beta,
                                              const Mono3& eps1, const Mono3& eps2,
                                              const std::vector<Mono3>& avec) {
    const int r = Y.rank();
    if (alpha < 1 || alpha > r || beta < 1 || beta > r)
        throw std::out_of_range("pair_factor: index out of range");
    const YoungDiagram& Ya = Y.diagrams[static_cast<std::size_t>(alpha - 1)];
    const YoungDiagram& Yb = Y.diagrams[static_cast<std::size_t>(beta - 1)];
    Mono3 dab = avec[static_cast<std::size_t>(beta - 1)] - avec[static_cast<std::size_t>(alpha - 1)];
    std::vector<Mono3> ws;
    ws.reserve(static_cast<std::size_t>(Ya.size() + Yb.size()));
    // product over s in Y_alpha: factor (1 - e^{-W}),
    // W = -l_{Y_beta}(s) eps1 + (a_{Y_alpha}(s)+1) eps2 + a_beta - a_alpha
    for (auto [i, j] : Ya.cells()) {
        long le = Yb.leg(i, j);
        long ar = Ya.arm(i, j);
        ws.push_back(eps1.scaled(le) + eps2.scaled(-(ar + 1)) - dab);
    }
    // product over s in Y_beta: factor (1 - e^{-W'}),
    // W' = (l_{Y_alpha}(s)+1) eps1 - a_{Y_beta}(s) eps2 + a_beta - a_alpha
    for (auto [i, j] : Yb.cells()) {
        long le = Ya.leg(i, j);
        long ar = Yb.arm(i, j);
        ws.push_back(eps1.scaled(-(le + 1)) + eps2.scaled(ar) - dab);
    }
    return ws;
}

std::vector<Mono3> pair_factor_weights(const YoungTuple& Y, int alpha, int beta,
                                       const std::vector<Mono3>& avec, long lattice_den) {
    const long D = lattice_den;
    return pair_factor_weights_framed(Y, alpha, beta, Mono3{D, 0, 0}, Mono3{0, D, 0}, avec);
}

TorusFunction pair_factor(const YoungTuple& Y, int alpha, int beta, const std::vector<Mono3>& avec,
                          long lattice_den) {
    TorusFunction f = TorusFunction::constant(GaussQ(1));
    for (const Mono3& w : pair_factor_weights(Y, alpha, beta, avec, lattice_den))
        f = f.times_binomial_pow(w, 1);
    return f;
}

Mono3 cs_weight_framed(const YoungTuple& Y, int cs_level, const Mono3& eps1, const Mono3& eps2,
                       const std::vector<Mono3>& avec) {
    Mono3 acc{};
    for (int alpha = 1; alpha <= Y.rank(); ++alpha) {
        const YoungDiagram& Ya = Y.diagrams[static_cast<std::size_t>(alpha - 1)];
        for (auto [i, j] : Ya.cells()) {
            acc = acc + avec[static_cast<std::size_t>(alpha - 1)];
            acc = acc + eps1.scaled(-static_cast<long>(YoungDiagram::coleg(i, j))) +
                  eps2.scaled(-static_cast<long>(YoungDiagram::coarm(i, j)));
        }
    }
    return acc.scaled(cs_level);
}

Mono3 cs_weight(const YoungTuple& Y, int cs_level, const std::vector<Mono3>& avec, long lattice_den) {
    const long D = lattice_den;
    return cs_weight_framed(Y, cs_level, Mono3{D, 0, 0}, Mono3{0, D, 0}, avec);
}

std::vector<TorusFunction> zinst_framed(int rank, int cs_level, int max_instanton,
                                        const Mono3& eps1_img, const Mono3& eps2_img,
                                        const std::vector<Mono3>& avec, long lattice_den) {
    if (static_cast<int>(avec.size()) != rank)
        throw std::invalid_argument("zinst: Coulomb vector size != rank");
    (void)lattice_den;
    // per-instanton weight e^{-(r+m)(eps1+eps2)/2}
    Mono3 eps_sum = eps1_img + eps2_img;
    Mono3 scaled_sum = eps_sum.scaled(-(rank + cs_level));
    if (scaled_sum.e1 % 2 || scaled_sum.e2 % 2 || scaled_sum.e3 % 2)
        throw std::invalid_argument("zinst: lattice denominator too coarse for (r+m)/2 shift");
    Mono3 inst_shift{scaled_sum.e1 / 2, scaled_sum.e2 / 2, scaled_sum.e3 / 2};
    std::vector<TorusFunction> Z;
    Z.reserve(static_cast<std::size_t>(max_instanton) + 1);
    for (int n = 0; n <= max_instanton; ++n) {
        TorusFunction sum;  // zero
        for_each_tuple(rank, n, [&](const YoungTuple& Y) {
            TorusFunction term = TorusFunction::monomial(
                GaussQ(1), inst_shift.scaled(n) + cs_weight_framed(Y, cs_level, eps1_img, eps2_img, avec));
            for (int alpha = 1; alpha <= rank; ++alpha)
                for (int beta = 1; beta <= rank; ++beta)
                    for (const Mono3& w :
                         pair_factor_weights_framed(Y, alpha, beta, eps1_img, eps2_img, avec))
                        term = term.times_binomial_pow(w, -1);
            sum += term;
            return true;
        });
        Z.push_back(std::move(sum));
    }
    return Z;
}

std::vector<TorusFunction> zinst_general(int rank, int cs_level, int max_instanton,
                                         const std::vector<Mono3>& avec, long lattice_den) {
    const long D = lattice_den;
    return zinst_framed(rank, cs_level, max_instanton, Mono3{D, 0, 0}, Mono3{0, D, 0}, avec, D);
}

std::vector<TorusFunction> zinst(const InstantonParams& p) {
    p.validate();
    return zinst_general(p.rank, p.cs_level, p.max_instanton, default_avec(p.rank, p.lattice_den),
                         p.lattice_den);
}

std::vector<TorusFunction> rescale_lambda(const std::vector<TorusFunction>& Z, int rank,
                                          const Mono3& shift) {
    std::vector<TorusFunction> out;
    out.reserve(Z.size());
    for (std::size_t n = 0; n < Z.size(); ++n)
        out.push_back(Z[n].shifted(shift.scaled(2 * rank * static_cast<long>(n))));
    return out;
}

std::vector<TorusFunction> zinst_shifted(const InstantonParams& p, const Mono3& sigma, const Mono3& tau) {
    p.validate();
    Mono3 total = sigma + tau;
    if (total.e1 % 4 || total.e2 % 4 || total.e3 % 4) {
        std::ostringstream os;
        os << "zinst_shifted: (tau+sigma)/4 is not in the 1/" << p.lattice_den
           << " lattice; increase the lattice denominator";
        throw std::domain_error(os.str());
    }
    Mono3 quarter{-total.e1 / 4, -total.e2 / 4, -total.e3 / 4};
    return rescale_lambda(zinst(p), p.rank, quarter);
}

std::vector<TorusFunction> log_series(const std::vector<TorusFunction>& Z) {
    // log(1 + R) with R = sum_{n>=1} Z[n] L^n (L = Lambda^{2r})
    const std::size_t N = Z.size();
    std::vector<TorusFunction> F(N);  // F[0] unused (zero)
    // recursive: F = sum_{j>=1} (-1)^{j+1} R^j / j; compute by powers of R
    std::vector<std::vector<TorusFunction>> pw;  // pw[j][n] = coeff of L^n in R^{j+1}
    std::vector<TorusFunction> R(N);
    for (std::size_t n = 1; n < N; ++n) R[n] = Z[n];
    pw.push_back(R);
    for (std::size_t j = 2; j < N; ++j) {
        std::vector<TorusFunction> nxt(N);
        const auto& prev = pw.back();
        for (std::size_t n = static_cast<std::size_t>(j); n < N; ++n) {
            TorusFunction acc;
            for (std::size_t k = 1; k + (j - 1) <= n; ++k) {
                if (prev[n - k].is_zero() || R[k].is_zero()) continue;
                acc += prev[n - k] * R[k];
            }
            nxt[n] = std::move(acc);
        }
        pw.push_back(std::move(nxt));
    }
    for (std::size_t n = 1; n < N; ++n) {
        TorusFunction acc;
        for (std::size_t j = 1; j <= n; ++j) {
            const TorusFunction& c = pw[j - 1][n];
            if (c.is_zero()) continue;
            GaussQ coef(mpq_class((j % 2) ? 1 : -1, static_cast<long>(j)), mpq_class(0));
            acc += c.scaled(coef);
        }
        F[n] = std::move(acc);
    }
    return F;
}

RegularityReport regularity_check(const InstantonParams& p) {
    RegularityReport rep;
    auto Z = zinst(p);
    Mono3 e1{1, 0, 0}, e3{0, 0, 1};
    for (std::size_t n = 0; n < Z.size(); ++n) {
        TorusFunction lhs = Z[n].mapped(e1, Mono3{-2, 0, 0}, e3);
        TorusFunction rhs = Z[n].mapped(Mono3{2, 0, 0}, Mono3{-1, 0, 0}, e3);
        if (!lhs.equals(rhs)) {
            rep.holds = false;
            rep.first_failing_order = static_cast<int>(n);
            std::ostringstream os;
            os << "Z_" << n << "(eps,-2eps) != Z_" << n << "(2eps,-eps)";
            rep.detail = os.str();
            return rep;
        }
    }
    return rep;
}

RegularityReport serre_duality_check(const InstantonParams& p) {
    RegularityReport rep;
    InstantonParams q = p;
    q.cs_level = -p.cs_level;
    auto Zm = zinst(p);
    auto Zneg = zinst(q);
    Mono3 m1{-1, 0, 0}, m2{0, -1, 0}, m3{0, 0, -1};
    for (std::size_t n = 0; n < Zm.size(); ++n) {
        TorusFunction lhs = Zneg[n].mapped(m1, m2, m3);
        if (!lhs.equals(Zm[n])) {
            rep.holds = false;
            rep.first_failing_order = static_cast<int>(n);
            rep.detail = "Serre duality fails at instanton number " + std::to_string(n);
            return rep;
        }
    }
    return rep;
}

PoleReport log_pole_check(const InstantonParams& p, std::int64_t c1, std::int64_t c2, int eps_order) {
    PoleReport rep;
    auto Z = zinst(p);
    auto F = log_series(Z);
    for (std::size_t n = 1; n < F.size(); ++n) {
        if (F[n].is_zero()) continue;
        EpsLaurent e = eps_expand(F[n], c1, c2, eps_order, p.lattice_den);
        // eps1 eps2 log Z = c1 c2 eps^2 F; pole-free iff F has valuation >= -2
        for (int k = e.lo(); k <= std::min(e.hi(), -3); ++k) {
            if (!e.coeff(k).is_zero()) {
                rep.pole_free = false;
                rep.first_failing_order = static_cast<int>(n);
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace ktdi
