#include <doctest.h>

#include "ktdi/partitions.hpp"

using namespace ktdi;

TEST_CASE("diagram statistics") {
    YoungDiagram Y({2, 1});
    CHECK(Y.size() == 3);
    CHECK(Y.arm(1, 1) == 1);
    CHECK(Y.leg(1, 1) == 1);
    CHECK(YoungDiagram::coarm(1, 1) == 0);
    CHECK(YoungDiagram::coleg(1, 1) == 0);
    // transpose of transpose
    CHECK(Y.transpose().transpose() == Y);
    // empty diagram: arm and leg are -1 at (1,1)
    YoungDiagram E;
    CHECK(E.arm(1, 1) == -1);
    CHECK(E.leg(1, 1) == -1);
    // co-arm/co-leg do not depend on the diagram
    CHECK(YoungDiagram::coarm(3, 5) == 4);
    CHECK(YoungDiagram::coleg(3, 5) == 2);
}

TEST_CASE("tuple enumeration counts") {
    CHECK(enumerate_tuples(2, 0).size() == 1);
    auto t1 = enumerate_tuples(2, 1);
    REQUIRE(t1.size() == 2);
    CHECK(t1[0].diagrams[0].size() + t1[0].diagrams[1].size() == 1);
    CHECK(enumerate_tuples(2, 2).size() == 5);
}

TEST_CASE("tuple counts match the generating function") {
    // |tuples(r,n)| = coefficient of x^n in prod (1-x^k)^{-r}
    for (int r = 1; r <= 3; ++r) {
        int N = 7;
        std::vector<long> gf(static_cast<std::size_t>(N) + 1, 0);
        gf[0] = 1;
        for (int copy = 0; copy < r; ++copy)
            for (int k = 1; k <= N; ++k)
                for (int m = k; m <= N; ++m) gf[static_cast<std::size_t>(m)] += gf[static_cast<std::size_t>(m - k)];
        for (int n = 0; n <= N; ++n) {
            CHECK(static_cast<long>(enumerate_tuples(r, n).size()) == gf[static_cast<std::size_t>(n)]);
        }
    }
}

TEST_CASE("enumeration is duplicate free and canonical") {
    auto ts = enumerate_tuples(2, 3);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        bool lt = false, eq = true;
        for (int a = 0; a < 2 && !lt; ++a) {
            if (ts[i].diagrams[static_cast<std::size_t>(a)] < ts[i + 1].diagrams[static_cast<std::size_t>(a)]) {
                lt = true;
                eq = false;
            } else if (!(ts[i].diagrams[static_cast<std::size_t>(a)] ==
                         ts[i + 1].diagrams[static_cast<std::size_t>(a)])) {
                eq = false;
                break;
            }
        }
        CHECK(!eq);
    }
}
