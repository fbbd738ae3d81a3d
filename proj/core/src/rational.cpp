#include "nearcurve/rational.hpp"

#include "nearcurve/errors.hpp"

#include <cctype>

namespace nearcurve {

Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw UsageError("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw UsageError("invalid rational literal '" + text +
                             "' (expected \"p/q\" with integer p, q)");
    }
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text));
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0)
            throw UsageError("zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw UsageError("invalid rational literal '" + text + "'");
    }
}

std::string to_fraction_string(const Rational& r) {
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer rational_floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Integer rational_ceil(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Rational rational_pow(const Rational& r, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num().get_mpz_t(), r.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den().get_mpz_t(), r.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

} // namespace nearcurve
