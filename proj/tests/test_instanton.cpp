#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ktdi/instanton.hpp"

using namespace ktdi;

namespace {
const long D = kLatticeDen;

TorusFunction full_pair_product(const YoungTuple& Y, const std::vector<Mono3>& avec) {
    TorusFunction f = TorusFunction::constant(GaussQ(1));
    for (int a = 1; a <= Y.rank(); ++a)
        for (int b = 1; b <= Y.rank(); ++b) f = f * pair_factor(Y, a, b, avec, D);
    return f;
}
}  // namespace

TEST_CASE("pair factor basics") {
    auto avec = default_avec(2, D);
    YoungTuple empty{{YoungDiagram(), YoungDiagram()}};
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            TorusFunction f = pair_factor(empty, a, b, avec, D);
            CHECK(f.equals(TorusFunction::constant(GaussQ(1))));
        }
    YoungTuple one_box{{YoungDiagram({1}), YoungDiagram()}};
    // (1 - e^{-eps2})(1 - e^{-eps1})
    TorusFunction expect = TorusFunction::constant(GaussQ(1))
                               .times_binomial_pow(Mono3{0, -D, 0}, 1)
                               .times_binomial_pow(Mono3{-D, 0, 0}, 1);
    CHECK(pair_factor(one_box, 1, 1, avec, D).equals(expect));
}

TEST_CASE("pair product conjugation identity") {
    auto avec = default_avec(2, D);
    Mono3 m1{-1, 0, 0}, m2{0, -1, 0}, m3{0, 0, -1};
    for (const auto& Y : enumerate_tuples(2, 2)) {
        TorusFunction P = full_pair_product(Y, avec);
        TorusFunction Pc = P.mapped(m1, m2, m3);
        // e^{r(eps1+eps2)|Y|} P
        TorusFunction rhs = P.shifted(Mono3{2 * D * Y.total_size(), 2 * D * Y.total_size(), 0});
        CHECK(Pc.equals(rhs));
    }
}

TEST_CASE("pair factor transpose covariance") {
    auto avec = default_avec(2, D);
    // transposing every diagram and swapping eps1 <-> eps2 fixes the product
    for (const auto& Y : enumerate_tuples(2, 2)) {
        YoungTuple Yt = Y;
        for (auto& d : Yt.diagrams) d = d.transpose();
        TorusFunction P = full_pair_product(Y, avec);
        TorusFunction Pt = full_pair_product(Yt, avec);
        Mono3 swap1{0, 1, 0}, swap2{1, 0, 0}, keep3{0, 0, 1};
        CHECK(Pt.mapped(swap1, swap2, keep3).equals(P));
    }
}

TEST_CASE("zinst leading coefficient is 1") {
    for (int m : {-2, -1, 0, 1, 2}) {
        InstantonParams p;
        p.cs_level = m;
        p.max_instanton = 0;
        auto Z = zinst(p);
        CHECK(Z[0].equals(TorusFunction::constant(GaussQ(1))));
    }
}

TEST_CASE("zinst n=1 equals the hand-built two-term sum") {
    InstantonParams p;
    p.max_instanton = 1;
    auto Z = zinst(p);
    auto avec = default_avec(2, D);
    // fixed point ((1), {}): weights eps2, eps1, eps1+eps2+2a, -2a
    // fixed point ({}, (1)): a -> -a
    TorusFunction t1 = TorusFunction::monomial(GaussQ(1), Mono3{-D, -D, 0})
                           .times_binomial_pow(Mono3{0, -D, 0}, -1)
                           .times_binomial_pow(Mono3{-D, 0, 0}, -1)
                           .times_binomial_pow(Mono3{-D, -D, -2 * D}, -1)
                           .times_binomial_pow(Mono3{0, 0, 2 * D}, -1);
    TorusFunction t2 = TorusFunction::monomial(GaussQ(1), Mono3{-D, -D, 0})
                           .times_binomial_pow(Mono3{0, -D, 0}, -1)
                           .times_binomial_pow(Mono3{-D, 0, 0}, -1)
                           .times_binomial_pow(Mono3{-D, -D, 2 * D}, -1)
                           .times_binomial_pow(Mono3{0, 0, -2 * D}, -1);
    CHECK(Z[1].equals(t1 + t2));
}

TEST_CASE("Weyl symmetry at m=0") {
    InstantonParams p;
    p.max_instanton = 2;
    auto Z = zinst(p);
    Mono3 e1{1, 0, 0}, e2{0, 1, 0}, negA{0, 0, -1};
    for (std::size_t n = 0; n < Z.size(); ++n) CHECK(Z[n].mapped(e1, e2, negA).equals(Z[n]));
}

TEST_CASE("Serre duality through n=2") {
    for (int m : {-2, -1, 0, 1, 2}) {
        InstantonParams p;
        p.cs_level = m;
        p.max_instanton = 2;
        auto rep = serre_duality_check(p);
        CHECK(rep.holds);
    }
}

TEST_CASE("regularity along the two rays") {
    for (int m : {0, 1}) {
        InstantonParams p;
        p.cs_level = m;
        p.max_instanton = 2;
        auto rep = regularity_check(p);
        CHECK(rep.holds);
    }
    // n = 0 is trivially regular
    InstantonParams p0;
    p0.max_instanton = 0;
    CHECK(regularity_check(p0).holds);
}

TEST_CASE("eps1 eps2 log Z is pole free at eps = 0") {
    for (int m : {0, 1}) {
        InstantonParams p;
        p.cs_level = m;
        p.max_instanton = 1;
        for (auto [c1, c2] : {std::pair<long, long>{1, -2}, {2, -1}, {1, 1}, {3, -2}}) {
            auto rep = log_pole_check(p, c1, c2, 0);
            CHECK(rep.pole_free);
        }
    }
}

TEST_CASE("randomized evaluation agrees with exact identities") {
    InstantonParams p;
    p.cs_level = 1;
    p.max_instanton = 1;
    auto Zp = zinst(p);
    InstantonParams q = p;
    q.cs_level = -1;
    auto Zm = zinst(q);
    Mono3 m1{-1, 0, 0}, m2{0, -1, 0}, m3{0, 0, -1};
    // three independent rational points
    std::vector<std::array<GaussQ, 3>> pts = {
        {GaussQ(2), GaussQ(3), GaussQ(5)},
        {GaussQ(3, 2), GaussQ(7, 5), GaussQ(11, 3)},
        {GaussQ(5, 3), GaussQ(9, 7), GaussQ(13, 2)},
    };
    for (const auto& pt : pts) {
        GaussQ lhs = Zm[1].mapped(m1, m2, m3).evaluate(pt[0], pt[1], pt[2]);
        GaussQ rhs = Zp[1].evaluate(pt[0], pt[1], pt[2]);
        CHECK(lhs == rhs);
    }
}
