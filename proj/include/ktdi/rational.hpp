#ifndef KTDI_RATIONAL_HPP
#define KTDI_RATIONAL_HPP

#include <gmpxx.h>
#include <iosfwd>
#include <string>

namespace ktdi {

/// Exact Gaussian rational a + b*i. GMP keeps both parts canonical
/// (positive denominator, lowest terms).
class GaussQ {
public:
    GaussQ() : re_(0), im_(0) {}
    GaussQ(long n) : re_(n), im_(0) {}
    GaussQ(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
    explicit GaussQ(const mpq_class& re) : re_(re), im_(0) { re_.canonicalize(); }
    GaussQ(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussQ i() { return GaussQ(mpq_class(0), mpq_class(1)); }
    /// Parses "num/den" or "num".
    static GaussQ from_string(const std::string& re, const std::string& im = "0");

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    /// True if the value is a rational integer (im = 0, den = 1).
    bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

    GaussQ operator-() const { return GaussQ(-re_, -im_); }
    GaussQ conj() const { return GaussQ(re_, -im_); }

    GaussQ& operator+=(const GaussQ& o) {
        re_ += o.re_;
        if (o.im_ != 0) im_ += o.im_;
        return *this;
    }
    GaussQ& operator-=(const GaussQ& o) {
        re_ -= o.re_;
        if (o.im_ != 0) im_ -= o.im_;
        return *this;
    }
    GaussQ& operator*=(const GaussQ& o);
    GaussQ& operator/=(const GaussQ& o);
    /// this += a * b, with fast paths for real operands
    void add_mul(const GaussQ& a, const GaussQ& b);

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { a += b; return a; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { a -= b; return a; }
    friend GaussQ operator*(GaussQ a, const GaussQ& b) { a *= b; return a; }
    friend GaussQ operator/(GaussQ a, const GaussQ& b) { a /= b; return a; }
    friend bool operator==(const GaussQ& a, const GaussQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

    /// norm = a^2 + b^2 (rational, zero iff value is zero)
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussQ inv() const;
    /// i^n for n possibly negative
    static GaussQ i_pow(long n);
    GaussQ pow(long n) const;

    /// Square root when the value is a perfect square of a Gaussian rational;
    /// throws otherwise. Branch: prefers re > 0, then im > 0.
    GaussQ sqrt() const;

    std::string str() const;

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const GaussQ& q);

/// Exact rational sqrt; throws if q is not a square of a rational.
mpq_class sqrt_exact(const mpq_class& q);

/// C(a, k) for rational a, integer k >= 0: a(a-1)...(a-k+1)/k!
mpq_class binomial_rational(const mpq_class& a, unsigned long k);

/// Bernoulli number B_{2k} (B_2 = 1/6, B_4 = -1/30, ...)
mpq_class bernoulli_2k(unsigned k);

}  // namespace ktdi

#endif
