#include "ktdi/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ktdi {

GaussQ GaussQ::from_string(const std::string& re, const std::string& im) {
    mpq_class r(re), i(im);
    r.canonicalize();
    i.canonicalize();
    return GaussQ(r, i);
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
    const bool ai = (im_ != 0), bi = (o.im_ != 0);
    if (!ai && !bi) {
        re_ *= o.re_;
        return *this;
    }
    if (!ai) {  // real * complex
        im_ = re_ * o.im_;
        re_ *= o.re_;
        return *this;
    }
    if (!bi) {  // complex * real
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

void GaussQ::add_mul(const GaussQ& a, const GaussQ& b) {
    const bool ai = (a.im_ != 0), bi = (b.im_ != 0);
    if (!ai && !bi) {
        re_ += a.re_ * b.re_;
        return;
    }
    *this += a * b;
}

GaussQ GaussQ::inv() const {
    mpq_class n = norm();
    if (n == 0) throw std::domain_error("GaussQ: division by zero");
    return GaussQ(re_ / n, -im_ / n);
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
    *this *= o.inv();
    return *this;
}

GaussQ GaussQ::i_pow(long n) {
    long m = ((n % 4) + 4) % 4;
    switch (m) {
        case 0: return GaussQ(1);
        case 1: return GaussQ::i();
        case 2: return GaussQ(-1);
        default: return -GaussQ::i();
    }
}

GaussQ GaussQ::pow(long n) const {
    if (n < 0) return inv().pow(-n);
    GaussQ acc(1), base(*this);
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

mpq_class sqrt_exact(const mpq_class& q) {
    if (q < 0) throw std::domain_error("sqrt_exact: negative rational");
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), 2) == 0 && num != rn * rn)
        throw std::domain_error("sqrt_exact: numerator not a perfect square");
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 2) == 0 && den != rd * rd)
        throw std::domain_error("sqrt_exact: denominator not a perfect square");
    if (rn * rn != num || rd * rd != den)
        throw std::domain_error("sqrt_exact: not a perfect square");
    return mpq_class(rn, rd);
}

GaussQ GaussQ::sqrt() const {
    if (is_zero()) return GaussQ();
    if (im_ == 0) {
        if (re_ > 0) return GaussQ(sqrt_exact(re_), mpq_class(0));
        return GaussQ(mpq_class(0), sqrt_exact(mpq_class(-re_)));
    }
    // (x+yi)^2 = a+bi: x^2 = (a + sqrt(a^2+b^2))/2, y = b/(2x)
    mpq_class n = sqrt_exact(norm());
    mpq_class x2 = (re_ + n) / 2;
    mpq_class x = sqrt_exact(x2);
    if (x == 0) throw std::domain_error("GaussQ::sqrt: not a square");
    mpq_class y = im_ / (2 * x);
    GaussQ r(x, y);
    if (r * r != *this) throw std::domain_error("GaussQ::sqrt: not a square");
    return r;
}

std::string GaussQ::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussQ& q) {
    if (q.im() == 0) return os << q.re();
    if (q.re() == 0) return os << q.im() << "*i";
    return os << q.re() << (q.im() > 0 ? "+" : "") << q.im() << "*i";
}

mpq_class binomial_rational(const mpq_class& a, unsigned long k) {
    mpq_class acc(1);
    for (unsigned long j = 0; j < k; ++j) {
        acc *= (a - static_cast<long>(j));
        acc /= static_cast<long>(j + 1);
    }
    return acc;
}

mpq_class bernoulli_2k(unsigned k) {
    // B_n via the recurrence sum_{j=0}^{n} C(n+1,j) B_j = 0, B_0 = 1.
    static std::vector<mpq_class> cache;  // cache[n] = B_n
    unsigned n = 2 * k;
    if (cache.empty()) cache.push_back(mpq_class(1));
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        mpq_class s(0);
        for (unsigned j = 0; j < m; ++j)
            s += binomial_rational(mpq_class(m + 1), j) * cache[j];
        cache.push_back(-s / mpq_class(m + 1));
    }
    return cache[n];
}

}  // namespace ktdi
