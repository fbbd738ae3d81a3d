#ifndef NEARCURVE_CONSTANTS_HPP
#define NEARCURVE_CONSTANTS_HPP

#include "nearcurve/enclosure.hpp"

#include <string>

namespace nearcurve {

enum class NamedConstant {
    Zeta3,               // sum n^-3
    TwoThirdsOverZeta3,  // 2/(3 zeta(3)) ~ 0.5546049
    InvZeta3,            // 1/zeta(3)     ~ 0.8319074
    LowerHuang,          // 2 sqrt(3)/(9 zeta(3)) ~ 0.3202013
};

/// Enclosure of zeta(3) = sum_{n>=1} n^-3 from partial sums plus the
/// integral tail bound 0 <= sum_{n>N} n^-3 <= 1/(2N^2).
/// Width <= 2^(1 - precision_bits).  precision_bits >= 8.
Enclosure zeta3(int precision_bits);

Enclosure constant(NamedConstant name, int precision_bits = 40);

std::string constant_name(NamedConstant name);

} // namespace nearcurve

#endif
