#include "defcalc/gauss_rational.hpp"

#include <stdexcept>

namespace defcalc {

GaussRational GaussRational::fraction(long num, long den) {
    if (den == 0)
        throw std::domain_error("GaussRational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussRational(q, mpq_class(0));
}

GaussRational GaussRational::integer(const std::string& digits) {
    return GaussRational(mpq_class(digits), mpq_class(0));
}

GaussRational GaussRational::operator/(const GaussRational& o) const {
    if (o.is_zero())
        throw std::domain_error("GaussRational: division by zero");
    mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
    return GaussRational((re_ * o.re_ + im_ * o.im_) / norm,
                         (im_ * o.re_ - re_ * o.im_) / norm);
}

namespace {

std::string rat_str(const mpq_class& q) {
    return q.get_str();
}

} // namespace

std::string GaussRational::to_string() const {
    if (im_ == 0)
        return rat_str(re_);
    std::string im_part;
    if (im_ == 1)
        im_part = "i";
    else if (im_ == -1)
        im_part = "-i";
    else
        im_part = rat_str(im_) + "*i";
    if (re_ == 0)
        return im_part;
    // Mixed value: parenthesize so the printed form stays parseable in products.
    std::string out = "(" + rat_str(re_);
    if (im_part[0] == '-')
        out += im_part;
    else
        out += "+" + im_part;
    return out + ")";
}

} // namespace defcalc
