#ifndef NEARCURVE_ENCLOSURE_HPP
#define NEARCURVE_ENCLOSURE_HPP

#include "nearcurve/rational.hpp"

#include <mpfr.h>

#include <string>

namespace nearcurve {

enum class Trichotomy { Below, Above, Ambiguous };

/// Interval with dyadic (binary floating-point) endpoints, outward-rounded.
/// The real value an Enclosure describes always lies in [lo, hi]; every
/// operation rounds lo toward -inf and hi toward +inf at the working
/// precision, so soundness is preserved under composition.
class Enclosure {
public:
    explicit Enclosure(mpfr_prec_t precision_bits = 53);
    Enclosure(const Enclosure& other);
    Enclosure(Enclosure&& other) noexcept;
    Enclosure& operator=(const Enclosure& other);
    Enclosure& operator=(Enclosure&& other) noexcept;
    ~Enclosure();

    static Enclosure from_rational(const Rational& r, mpfr_prec_t precision_bits);
    static Enclosure from_endpoints(const Rational& lo, const Rational& hi,
                                    mpfr_prec_t precision_bits);

    mpfr_prec_t precision() const { return prec_; }

    /// Exact dyadic endpoints as rationals.
    Rational lo() const;
    Rational hi() const;
    Rational width() const { return hi() - lo(); }
    double mid() const;

    bool contains(const Rational& r) const;

    /// Below: hi < r.  Above: lo > r.  Ambiguous: r in [lo, hi].
    Trichotomy compare(const Rational& r) const;

    Enclosure operator-() const;
    Enclosure abs() const;

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

    Enclosure add(const Rational& r) const;
    Enclosure sub(const Rational& r) const;
    Enclosure mul(const Rational& r) const;

    /// Domain errors (negative sqrt argument, nonpositive log argument)
    /// throw DomainError.
    friend Enclosure sqrt(const Enclosure& a);
    friend Enclosure exp(const Enclosure& a);
    friend Enclosure log(const Enclosure& a);

    std::string to_string(int digits = 17) const;

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;

    static mpfr_prec_t join_prec(const Enclosure& a, const Enclosure& b);
};

} // namespace nearcurve

#endif
