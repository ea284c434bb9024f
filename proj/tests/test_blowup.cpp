#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ktdi/blowup.hpp"

using namespace ktdi;

namespace {
const long D = kLatticeDen;
}

TEST_CASE("l factor is 1 for k = 0") {
    auto avec = default_avec(2, D);
    std::vector<long> kvec{0, 0};
    CHECK(l_factor(kvec, 1, 2, avec, D).equals(TorusFunction::constant(GaussQ(1))));
    CHECK(l_factor(kvec, 2, 1, avec, D).equals(TorusFunction::constant(GaussQ(1))));
}

TEST_CASE("l factor conjugation identity") {
    auto avec = default_avec(2, D);
    Mono3 m1{-1, 0, 0}, m2{0, -1, 0}, m3{0, 0, -1};
    // prod l(-eps,-a) = (-1)^{(k1-k2)^2} e^{-r (kvec,avec)} prod l(eps,a);
    // the sign is forced by the odd factor count on odd shells and is +1 on
    // every shell of the k = 0 sum
    for (std::vector<long> kvec : {std::vector<long>{1, -1}, {-1, 1}, {2, -2}, {1, 0}, {0, 1}}) {
        TorusFunction P = l_factor(kvec, 1, 2, avec, D) * l_factor(kvec, 2, 1, avec, D);
        TorusFunction Pc = P.mapped(m1, m2, m3);
        long diff = kvec[0] - kvec[1];
        TorusFunction rhs = P.shifted(Mono3{0, 0, 2 * diff * D});
        if (diff % 2) rhs = -rhs;
        CHECK(Pc.equals(rhs));
    }
}

TEST_CASE("k = 1 Serre duality with the odd-shell sign") {
    Mono3 m1{-1, 0, 0}, m2{0, -1, 0}, m3{0, 0, -1};
    BlowupParams p;
    p.cs_level = 1;
    p.c1_class = 1;
    p.line_power = 0;
    p.order = 5;
    auto zh = zhat(p);
    BlowupParams q;
    q.cs_level = -1;
    q.c1_class = 1;
    q.line_power = 2;
    q.order = 5;
    auto zd = zhat(q);
    for (int P = 0; P <= 5; ++P) CHECK(zd[P].mapped(m1, m2, m3).equals(-zh[P]));
}

TEST_CASE("blowup equations at m = 0 (proven range)") {
    for (int d = 0; d <= 2; ++d) {
        auto v = blowup_identity_check(2, 0, 0, d, 8);
        CHECK(v.holds);
    }
}

TEST_CASE("blowup equation at m = 1 holds through d = 3") {
    for (int d = 0; d <= 3; ++d) {
        auto v = blowup_identity_check(2, 1, 0, d, 4);
        CHECK(v.holds);
    }
}

TEST_CASE("blowup equation fails at m = 2, d = 4") {
    auto v = blowup_identity_check(2, 2, 0, 4, 4);
    CHECK(!v.holds);
    CHECK(v.first_failing_order == 4);
}

TEST_CASE("k = 1 correlation functions vanish for 0 < d < r") {
    auto v = blowup_identity_check(2, 0, 1, 1, 8);
    CHECK(v.holds);
    CHECK(v.vanishes);
}

TEST_CASE("zhat Serre duality") {
    // Zhat_{m,k,d}(eps, a) = Zhat_{-m,k,r-d}(-eps, -a)
    Mono3 m1{-1, 0, 0}, m2{0, -1, 0}, m3{0, 0, -1};
    for (int m : {0, 1}) {
        for (int d : {0, 1}) {
            BlowupParams p;
            p.cs_level = m;
            p.line_power = d;
            p.order = 5;
            auto zh = zhat(p);
            BlowupParams q;
            q.cs_level = -m;
            q.line_power = 2 - d;
            q.order = 5;
            auto zd = zhat(q);
            for (int P = 0; P <= 5; ++P) CHECK(zd[P].mapped(m1, m2, m3).equals(zh[P]));
        }
    }
}

TEST_CASE("lattice truncation completeness") {
    // widening the order never changes a finalized coefficient
    BlowupParams p;
    p.cs_level = 1;
    p.line_power = 2;
    p.order = 4;
    auto a = zhat(p);
    p.order = 8;
    auto b = zhat(p);
    for (int P = 0; P <= 4; ++P) CHECK(a[P].equals(b[P]));
}

TEST_CASE("zhat leading coefficient") {
    BlowupParams p;
    p.order = 0;
    auto zh = zhat(p);
    CHECK(zh[0].equals(TorusFunction::constant(GaussQ(1))));
}
