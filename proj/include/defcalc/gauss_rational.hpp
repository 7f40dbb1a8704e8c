#pragma once

#include <gmpxx.h>
#include <string>

namespace defcalc {

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
/// All arithmetic is exact; fractions are kept canonical (lowest terms,
/// positive denominator) by GMP.
class GaussRational {
public:
    GaussRational() : re_(0), im_(0) {}
    GaussRational(long v) : re_(v), im_(0) {}
    GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational zero() { return GaussRational(); }
    static GaussRational one() { return GaussRational(1); }
    static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }
    static GaussRational fraction(long num, long den);
    /// Parses a decimal integer literal of arbitrary length.
    static GaussRational integer(const std::string& digits);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }
    GaussRational operator+(const GaussRational& o) const { return {re_ + o.re_, im_ + o.im_}; }
    GaussRational operator-(const GaussRational& o) const { return {re_ - o.re_, im_ - o.im_}; }
    GaussRational operator*(const GaussRational& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    /// Division by zero throws std::domain_error.
    GaussRational operator/(const GaussRational& o) const;

    GaussRational& operator+=(const GaussRational& o) { *this = *this + o; return *this; }
    GaussRational& operator-=(const GaussRational& o) { *this = *this - o; return *this; }
    GaussRational& operator*=(const GaussRational& o) { *this = *this * o; return *this; }

    bool operator==(const GaussRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussRational& o) const { return !(*this == o); }

    GaussRational conj() const { return GaussRational(re_, -im_); }

    /// Printed in the expression grammar: "2", "-1/2", "i", "2*i", "(1+2*i)".
    std::string to_string() const;

private:
    mpq_class re_, im_;
};

} // namespace defcalc
