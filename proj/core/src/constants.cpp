#include "nearcurve/constants.hpp"

#include "nearcurve/errors.hpp"

#include <map>
#include <mutex>

namespace nearcurve {

namespace {

Enclosure zeta3_uncached(int p) {
    // Integral sandwich for the tail:
    //   1/(2(N+1)^2) = int_{N+1}^inf x^-3 dx <= sum_{n>N} n^-3 <= int_N^inf = 1/(2N^2).
    // The sandwich gap is ~N^-3, so N ~ 2^((p+2)/3) suffices for width 2^(1-p).
    const int third = (p + 2) / 3 + 1;
    const unsigned long N = 1ul << third;
    const mpfr_prec_t wp = std::max(p + 32, 80);

    mpfr_t lo, hi, t;
    mpfr_init2(lo, wp);
    mpfr_init2(hi, wp);
    mpfr_init2(t, wp);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    for (unsigned long n = N; n >= 1; --n) {
        // n <= 2^24, so n^2 fits; n^3 assembled exactly at wp >= 80 bits
        mpfr_set_ui(t, n * n, MPFR_RNDN);
        mpfr_mul_ui(t, t, n, MPFR_RNDN);
        mpfr_ui_div(t, 1, t, MPFR_RNDD);
        mpfr_add(lo, lo, t, MPFR_RNDD);
        mpfr_set_ui(t, n * n, MPFR_RNDN);
        mpfr_mul_ui(t, t, n, MPFR_RNDN);
        mpfr_ui_div(t, 1, t, MPFR_RNDU);
        mpfr_add(hi, hi, t, MPFR_RNDU);
    }
    mpfr_set_ui(t, 2 * (N + 1) * (N + 1), MPFR_RNDN);
    mpfr_ui_div(t, 1, t, MPFR_RNDD);
    mpfr_add(lo, lo, t, MPFR_RNDD);
    mpfr_set_ui(t, 2 * N * N, MPFR_RNDN);
    mpfr_ui_div(t, 1, t, MPFR_RNDU);
    mpfr_add(hi, hi, t, MPFR_RNDU);

    Rational rlo, rhi;
    mpfr_get_q(rlo.get_mpq_t(), lo);
    mpfr_get_q(rhi.get_mpq_t(), hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(t);
    return Enclosure::from_endpoints(rlo, rhi, wp);
}

} // namespace

Enclosure zeta3(int precision_bits) {
    if (precision_bits < 8)
        throw DomainError("zeta3 requires precision_bits >= 8");
    static std::map<int, Enclosure> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(precision_bits);
    if (it == cache.end())
        it = cache.emplace(precision_bits, zeta3_uncached(precision_bits)).first;
    return it->second;
}

Enclosure constant(NamedConstant name, int precision_bits) {
    const int p = std::max(precision_bits, 40);
    const Enclosure z = zeta3(p + 8);
    const mpfr_prec_t wp = p + 16;
    switch (name) {
    case NamedConstant::Zeta3:
        return z;
    case NamedConstant::TwoThirdsOverZeta3:
        return Enclosure::from_rational(Rational(2, 3), wp) / z;
    case NamedConstant::InvZeta3:
        return Enclosure::from_rational(Rational(1), wp) / z;
    case NamedConstant::LowerHuang:
        return sqrt(Enclosure::from_rational(Rational(3), wp)).mul(Rational(2, 9)) / z;
    }
    throw DomainError("unknown named constant");
}

std::string constant_name(NamedConstant name) {
    switch (name) {
    case NamedConstant::Zeta3: return "zeta3";
    case NamedConstant::TwoThirdsOverZeta3: return "two_thirds_over_zeta3";
    case NamedConstant::InvZeta3: return "inv_zeta3";
    case NamedConstant::LowerHuang: return "lower_huang";
    }
    return "?";
}

} // namespace nearcurve
