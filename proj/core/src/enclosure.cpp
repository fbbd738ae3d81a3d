#include "nearcurve/enclosure.hpp"

#include "nearcurve/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace nearcurve {

Enclosure::Enclosure(mpfr_prec_t precision_bits) : prec_(precision_bits) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Enclosure& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Enclosure& Enclosure::operator=(const Enclosure& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }
    return *this;
}

Enclosure::~Enclosure() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Enclosure Enclosure::from_rational(const Rational& r, mpfr_prec_t precision_bits) {
    Enclosure e(precision_bits);
    mpfr_set_q(e.lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_, r.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::from_endpoints(const Rational& lo, const Rational& hi,
                                    mpfr_prec_t precision_bits) {
    if (lo > hi)
        throw DomainError("enclosure endpoints out of order");
    Enclosure e(precision_bits);
    mpfr_set_q(e.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return e;
}

Rational Enclosure::lo() const {
    Rational r;
    mpfr_get_q(r.get_mpq_t(), lo_);
    return r;
}

Rational Enclosure::hi() const {
    Rational r;
    mpfr_get_q(r.get_mpq_t(), hi_);
    return r;
}

double Enclosure::mid() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2.0;
}

bool Enclosure::contains(const Rational& r) const {
    return mpfr_cmp_q(lo_, r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, r.get_mpq_t()) >= 0;
}

Trichotomy Enclosure::compare(const Rational& r) const {
    if (mpfr_cmp_q(hi_, r.get_mpq_t()) < 0)
        return Trichotomy::Below;
    if (mpfr_cmp_q(lo_, r.get_mpq_t()) > 0)
        return Trichotomy::Above;
    return Trichotomy::Ambiguous;
}

Enclosure Enclosure::operator-() const {
    Enclosure e(prec_);
    mpfr_neg(e.lo_, hi_, MPFR_RNDD);
    mpfr_neg(e.hi_, lo_, MPFR_RNDU);
    return e;
}

Enclosure Enclosure::abs() const {
    Enclosure e(prec_);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_set(e.lo_, lo_, MPFR_RNDD);
        mpfr_set(e.hi_, hi_, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_neg(e.lo_, hi_, MPFR_RNDD);
        mpfr_neg(e.hi_, lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(e.lo_, 1);
        mpfr_neg(e.hi_, lo_, MPFR_RNDU);
        if (mpfr_cmp(e.hi_, hi_) < 0)
            mpfr_set(e.hi_, hi_, MPFR_RNDU);
    }
    return e;
}

mpfr_prec_t Enclosure::join_prec(const Enclosure& a, const Enclosure& b) {
    return std::max(a.prec_, b.prec_);
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Enclosure e(Enclosure::join_prec(a, b));
    mpfr_add(e.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(e.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return e;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    Enclosure e(Enclosure::join_prec(a, b));
    mpfr_sub(e.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(e.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return e;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    Enclosure e(Enclosure::join_prec(a, b));
    mpfr_t t;
    mpfr_init2(t, e.prec_);
    // lo: min of the four endpoint products rounded down
    mpfr_mul(e.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, e.lo_) < 0) mpfr_set(e.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(t, e.lo_) < 0) mpfr_set(e.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, e.lo_) < 0) mpfr_set(e.lo_, t, MPFR_RNDD);
    // hi: max rounded up
    mpfr_mul(e.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, e.hi_) > 0) mpfr_set(e.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_cmp(t, e.hi_) > 0) mpfr_set(e.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, e.hi_) > 0) mpfr_set(e.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return e;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
        throw DomainError("division by an enclosure containing zero");
    Enclosure e(Enclosure::join_prec(a, b));
    mpfr_t t;
    mpfr_init2(t, e.prec_);
    mpfr_div(e.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, e.lo_) < 0) mpfr_set(e.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(t, e.lo_) < 0) mpfr_set(e.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, e.lo_) < 0) mpfr_set(e.lo_, t, MPFR_RNDD);
    mpfr_div(e.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, e.hi_) > 0) mpfr_set(e.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_cmp(t, e.hi_) > 0) mpfr_set(e.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, e.hi_) > 0) mpfr_set(e.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return e;
}

Enclosure Enclosure::add(const Rational& r) const {
    Enclosure e(prec_);
    mpfr_add_q(e.lo_, lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(e.hi_, hi_, r.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::sub(const Rational& r) const {
    Enclosure e(prec_);
    mpfr_sub_q(e.lo_, lo_, r.get_mpq_t(), MPFR_RNDD);
    mpfr_sub_q(e.hi_, hi_, r.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::mul(const Rational& r) const {
    Enclosure e(prec_);
    if (sgn(r) >= 0) {
        mpfr_mul_q(e.lo_, lo_, r.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(e.hi_, hi_, r.get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(e.lo_, hi_, r.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(e.hi_, lo_, r.get_mpq_t(), MPFR_RNDU);
    }
    return e;
}

Enclosure sqrt(const Enclosure& a) {
    if (mpfr_sgn(a.lo_) < 0)
        throw DomainError("sqrt of an enclosure with negative lower endpoint");
    Enclosure e(a.prec_);
    mpfr_sqrt(e.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(e.hi_, a.hi_, MPFR_RNDU);
    return e;
}

Enclosure exp(const Enclosure& a) {
    Enclosure e(a.prec_);
    mpfr_exp(e.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(e.hi_, a.hi_, MPFR_RNDU);
    return e;
}

Enclosure log(const Enclosure& a) {
    if (mpfr_sgn(a.lo_) <= 0)
        throw DomainError("log of an enclosure with nonpositive lower endpoint");
    Enclosure e(a.prec_);
    mpfr_log(e.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(e.hi_, a.hi_, MPFR_RNDU);
    return e;
}

std::string Enclosure::to_string(int digits) const {
    char buf[128];
    std::string out = "[";
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, lo_);
    out += buf;
    out += ", ";
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, hi_);
    out += buf;
    out += "]";
    return out;
}

} // namespace nearcurve
