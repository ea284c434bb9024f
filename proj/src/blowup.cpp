#include "ktdi/blowup.hpp"

#include <sstream>
#include <stdexcept>

namespace ktdi {

void BlowupParams::validate() const {
    if (rank != 2) throw std::invalid_argument("blowup: only rank 2 is implemented");
    if (std::abs(cs_level) > rank) throw std::invalid_argument("blowup: |cs_level| <= rank required");
    if (order < 0) throw std::invalid_argument("blowup: negative order");
    if (lattice_den % 24 != 0)
        throw std::invalid_argument("blowup: lattice denominator must be a multiple of 24");
}

namespace {
// add c * v to acc, requiring exact lattice integrality
void add_scaled_exact(Mono3& acc, const Mono3& v, const mpq_class& c) {
    for (auto [get, set] : {std::pair{+[](const Mono3& m) { return m.e1; }, +[](Mono3& m, std::int64_t x) { m.e1 = x; }},
                            std::pair{+[](const Mono3& m) { return m.e2; }, +[](Mono3& m, std::int64_t x) { m.e2 = x; }},
                            std::pair{+[](const Mono3& m) { return m.e3; }, +[](Mono3& m, std::int64_t x) { m.e3 = x; }}}) {
        mpq_class t = c * static_cast<long>(get(v));
        if (t.get_den() != 1)
            throw std::domain_error(
                "blowup: weight exponent leaves the lattice; increase the lattice denominator");
        set(acc, get(acc) + t.get_num().get_si());
    }
}
}  // namespace

std::vector<Mono3> l_factor_weights(const std::vector<long>& kvec, int alpha, int beta,
                                    const std::vector<Mono3>& avec, const Mono3& eps1_img,
                                    const Mono3& eps2_img, long /*lattice_den*/) {
    if (alpha == beta) throw std::invalid_argument("l_factor: (alpha, beta) must be a root");
    long K = kvec[static_cast<std::size_t>(alpha - 1)] - kvec[static_cast<std::size_t>(beta - 1)];
    Mono3 A = avec[static_cast<std::size_t>(alpha - 1)] - avec[static_cast<std::size_t>(beta - 1)];
    std::vector<Mono3> ws;
    // transcribed from the companion construction and pinned against the
    // proven m = 0, d = 0..r blowup identity (which this family must satisfy
    // exactly at Lambda^{2r})
    if (K > 1) {
        // i, j >= 0, i + j <= K - 2: factor (1 - e^{-(i+1) eps1 - (j+1) eps2 - A})
        for (long i = 0; i + 2 <= K; ++i)
            for (long j = 0; i + j + 2 <= K; ++j)
                ws.push_back(eps1_img.scaled(-(i + 1)) + eps2_img.scaled(-(j + 1)) - A);
    } else if (K < 0) {
        // i, j >= 0, i + j <= -K - 1: factor (1 - e^{i eps1 + j eps2 - A})
        for (long i = 0; i + 1 <= -K; ++i)
            for (long j = 0; i + j + 1 <= -K; ++j)
                ws.push_back(eps1_img.scaled(i) + eps2_img.scaled(j) - A);
    }
    return ws;
}

TorusFunction l_factor(const std::vector<long>& kvec, int alpha, int beta,
                       const std::vector<Mono3>& avec, long lattice_den) {
    TorusFunction f = TorusFunction::constant(GaussQ(1));
    const long D = lattice_den;
    for (const Mono3& w :
         l_factor_weights(kvec, alpha, beta, avec, Mono3{D, 0, 0}, Mono3{0, D, 0}, lattice_den))
        f = f.times_binomial_pow(w, 1);
    return f;
}

std::map<int, TorusFunction> zhat(const BlowupParams& p) {
    p.validate();
    const long D = p.lattice_den;
    const int r = p.rank;
    const int m = p.cs_level;
    const int k = p.c1_class;
    const int d = p.line_power;
    std::vector<Mono3> avec = default_avec(r, D);
    Mono3 eps1{D, 0, 0}, eps2{0, D, 0};
    Mono3 eps_sum = eps1 + eps2;

    std::map<int, TorusFunction> out;
    for (int P = 0; P <= p.order; ++P) out[P] = TorusFunction();

    // rank 2: kvec = (k1, k - k1); shell Lambda power r (kvec,kvec) = (2k1-k)^2
    for (long k1 = -(p.order + std::abs(k) + 2); k1 <= p.order + std::abs(k) + 2; ++k1) {
        long k2 = k - k1;
        long diff = k1 - k2;
        long shell = diff * diff;  // = r (kvec,kvec) for r = 2
        if (shell > p.order) continue;
        std::vector<long> kvec{k1, k2};
        // (kvec,kvec) = diff^2/2, (kvec,avec) = (diff/2)(a1 - a2)
        mpq_class kk(diff * diff, 2);
        kk.canonicalize();
        Mono3 ka{};
        add_scaled_exact(ka, avec[0] - avec[1], mpq_class(diff, 2));
        // prefactor exponent
        Mono3 E{};
        add_scaled_exact(E, eps_sum, (mpq_class(d) - mpq_class(r + m, 2)) * kk / 2);
        add_scaled_exact(E, ka, mpq_class(d) - mpq_class(m, 2));
        // Chern-Simons cubic weight
        add_scaled_exact(E, eps_sum, mpq_class(m) * (k1 * k1 * k1 + k2 * k2 * k2) / 6);
        add_scaled_exact(E, avec[0], mpq_class(m * k1 * k1, 2));
        add_scaled_exact(E, avec[1], mpq_class(m * k2 * k2, 2));

        TorusFunction base = TorusFunction::monomial(GaussQ(1), E);
        for (auto [al, be] : {std::pair{1, 2}, std::pair{2, 1}})
            for (const Mono3& w : l_factor_weights(kvec, al, be, avec, eps1, eps2, D))
                base = base.times_binomial_pow(w, -1);

        int n_budget = (p.order - static_cast<int>(shell)) / (2 * r);
        // the two blowup patches
        std::vector<Mono3> avec1 = avec, avec2 = avec;
        for (int a = 0; a < r; ++a) {
            avec1[static_cast<std::size_t>(a)] =
                avec1[static_cast<std::size_t>(a)] + eps1.scaled(kvec[static_cast<std::size_t>(a)]);
            avec2[static_cast<std::size_t>(a)] =
                avec2[static_cast<std::size_t>(a)] + eps2.scaled(kvec[static_cast<std::size_t>(a)]);
        }
        auto Z1 = zinst_framed(r, m, n_budget, eps1, eps2 - eps1, avec1, D);
        auto Z2 = zinst_framed(r, m, n_budget, eps1 - eps2, eps2, avec2, D);
        // Lambda rescale e^{eps_i (d - (r+m)/2) / 2r} per patch
        Mono3 s1{}, s2{};
        add_scaled_exact(s1, eps1, (mpq_class(d) - mpq_class(r + m, 2)) / (2 * r));
        add_scaled_exact(s2, eps2, (mpq_class(d) - mpq_class(r + m, 2)) / (2 * r));
        Z1 = rescale_lambda(Z1, r, s1);
        Z2 = rescale_lambda(Z2, r, s2);

        for (int n1 = 0; n1 <= n_budget; ++n1) {
            if (Z1[static_cast<std::size_t>(n1)].is_zero()) continue;
            for (int n2 = 0; n1 + n2 <= n_budget; ++n2) {
                if (Z2[static_cast<std::size_t>(n2)].is_zero()) continue;
                int P = static_cast<int>(shell) + 2 * r * (n1 + n2);
                if (P > p.order) continue;
                out[P] += base * Z1[static_cast<std::size_t>(n1)] * Z2[static_cast<std::size_t>(n2)];
            }
        }
    }
    return out;
}

BlowupVerdict blowup_identity_check(int rank, int cs_level, int k, int d, int order, long lattice_den) {
    BlowupVerdict v;
    BlowupParams p;
    p.rank = rank;
    p.cs_level = cs_level;
    p.c1_class = k;
    p.line_power = d;
    p.order = order;
    p.lattice_den = lattice_den;
    auto zh = zhat(p);
    if (k % rank == 0 && k != 0)
        throw std::invalid_argument("blowup_identity_check: c1 class should be reduced mod rank");
    if (k == 0) {
        InstantonParams ip;
        ip.rank = rank;
        ip.cs_level = cs_level;
        ip.max_instanton = order / (2 * rank);
        ip.lattice_den = lattice_den;
        auto Z = zinst(ip);
        for (int P = 0; P <= order; ++P) {
            TorusFunction rhs;
            if (P % (2 * rank) == 0) rhs = Z[static_cast<std::size_t>(P / (2 * rank))];
            if (!zh[P].equals(rhs)) {
                v.holds = false;
                v.first_failing_order = P;
                std::ostringstream os;
                os << "Zhat_{m=" << cs_level << ",k=0,d=" << d << "} != Z_m first fails at Lambda^" << P;
                v.detail = os.str();
                return v;
            }
        }
    } else {
        v.vanishes = true;
        for (int P = 0; P <= order; ++P) {
            if (!zh[P].is_zero()) {
                v.holds = false;
                v.vanishes = false;
                v.first_failing_order = P;
                std::ostringstream os;
                os << "Zhat_{m=" << cs_level << ",k=" << k << ",d=" << d
                   << "} does not vanish at Lambda^" << P;
                v.detail = os.str();
                return v;
            }
        }
    }
    return v;
}

}  // namespace ktdi
