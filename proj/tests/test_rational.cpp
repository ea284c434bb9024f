#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ktdi/rational.hpp"

using namespace ktdi;

TEST_CASE("gaussian rational arithmetic") {
    GaussQ i = GaussQ::i();
    CHECK(i * i == GaussQ(-1));
    GaussQ z(mpq_class(1, 2), mpq_class(-3, 4));
    CHECK(z * z.inv() == GaussQ(1));
    CHECK((z + z.conj()).is_real());
    CHECK(GaussQ::i_pow(-6) == GaussQ(-1));
    CHECK(GaussQ::i_pow(7) == -GaussQ::i());
    CHECK(z.pow(3) == z * z * z);
}

TEST_CASE("gaussian sqrt") {
    CHECK(GaussQ(mpq_class(9, 4), mpq_class(0)).sqrt() == GaussQ(3, 2));
    CHECK(GaussQ(-4).sqrt() == GaussQ(mpq_class(0), mpq_class(2)));
    // (1+i)^2 = 2i
    CHECK(GaussQ(mpq_class(0), mpq_class(2)).sqrt() == GaussQ(mpq_class(1), mpq_class(1)));
    CHECK_THROWS_AS(GaussQ(2).sqrt(), std::domain_error);
}

TEST_CASE("rational binomial") {
    mpq_class half(-1, 2);
    CHECK(binomial_rational(half, 0) == 1);
    CHECK(binomial_rational(half, 1) == mpq_class(-1, 2));
    CHECK(binomial_rational(half, 2) == mpq_class(3, 8));
    CHECK(binomial_rational(half, 3) == mpq_class(-5, 16));
    CHECK(binomial_rational(mpq_class(5), 2) == 10);
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_2k(1) == mpq_class(1, 6));
    CHECK(bernoulli_2k(2) == mpq_class(-1, 30));
    CHECK(bernoulli_2k(3) == mpq_class(1, 42));
    CHECK(bernoulli_2k(4) == mpq_class(-1, 30));
    CHECK(bernoulli_2k(5) == mpq_class(5, 66));
    CHECK(bernoulli_2k(6) == mpq_class(-691, 2730));
}

TEST_CASE("string round trip") {
    GaussQ q = GaussQ::from_string("-7/3", "2/5");
    CHECK(q.re() == mpq_class(-7, 3));
    CHECK(q.im() == mpq_class(2, 5));
}
