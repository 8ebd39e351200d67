#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace psido {

/// Complex number with exact rational real and imaginary parts.
/// Arithmetic is exact, so algebraic identities can be tested with equality.
class RatC {
public:
    RatC() : re_(0), im_(0) {}
    RatC(long num, long den = 1) : re_(num, den), im_(0) { re_.canonicalize(); }
    RatC(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static RatC integer(long v) { return RatC(v); }
    static RatC i() { return RatC(mpq_class(0), mpq_class(1)); }

    /// i^k for any integer k (negative allowed).
    static RatC i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return RatC(1);
            case 1: return RatC(mpq_class(0), mpq_class(1));
            case 2: return RatC(-1);
            default: return RatC(mpq_class(0), mpq_class(-1));
        }
    }

    /// Parse "p/q" or "p" (base 10).
    static mpq_class parse_rational(const std::string& s) {
        mpq_class q(s, 10);
        q.canonicalize();
        return q;
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    RatC conj() const { return RatC(re_, -im_); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    std::string re_str() const { return re_.get_str(); }
    std::string im_str() const { return im_.get_str(); }

    friend RatC operator+(const RatC& a, const RatC& b) {
        return RatC(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend RatC operator-(const RatC& a, const RatC& b) {
        return RatC(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend RatC operator-(const RatC& a) { return RatC(-a.re_, -a.im_); }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return RatC(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    RatC divided_by_int(std::int64_t d) const {
        mpq_class q(1, 1);
        q = mpq_class(mpz_class(1), mpz_class(static_cast<long>(d)));
        return RatC(re_ * q, im_ * q);
    }
    RatC times_int(std::int64_t m) const {
        mpz_class z(static_cast<long>(m));
        return RatC(re_ * z, im_ * z);
    }
    friend bool operator==(const RatC& a, const RatC& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }

    std::string str() const {
        if (im_ == 0) return re_.get_str();
        return re_.get_str() + (im_ > 0 ? "+" : "") + im_.get_str() + "*i";
    }

private:
    mpq_class re_, im_;
};

}  // namespace psido
