#ifndef NEARCURVE_CURVE_HPP
#define NEARCURVE_CURVE_HPP

#include "nearcurve/enclosure.hpp"
#include "nearcurve/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nearcurve {

struct Interval {
    Rational rho, xi; // rho < xi
    Rational length() const { return xi - rho; }
    bool contains(const Rational& x) const { return rho <= x && x <= xi; }
};

enum class CurveKind { Polynomial, CircleArc, Exp, LogShifted };
enum class EvalMode { ExactRational, Enclosure };

/// A planar curve y = f(x) on a closed rational-endpoint interval, with the
/// user-declared curvature bounds c1 <= |f''| <= c2 and Lipschitz constant
/// for f''.  The bounds gate asymptotic claims only; counting never uses them.
struct CurveSpec {
    CurveKind kind = CurveKind::Polynomial;
    std::vector<Rational> coefficients; // Polynomial, ascending degree
    Rational radius;                    // CircleArc: f(x) = sqrt(r^2 - x^2)
    Rational offset;                    // LogShifted: f(x) = log(x + offset)
    Interval interval;
    Rational c1, c2, lipschitz;
    EvalMode eval_mode = EvalMode::Enclosure;
    std::string name; // optional label
};

/// Checks the structural invariants (c1 <= c2, rho < xi, exact mode only for
/// polynomials, circle interval strictly inside (-r, r), log argument positive).
/// Throws ValidationError on violation.
void check_spec(const CurveSpec& curve);

/// f(x) as an exact rational.  Polynomial curves only.
Rational eval_exact(const CurveSpec& curve, const Rational& x);

/// Enclosure of f(x) with relative width <= 2^(1 - precision_bits).
Enclosure eval_enclosure(const CurveSpec& curve, const Rational& x, int precision_bits);

/// Single-pass evaluation at the given working precision, no width contract.
/// This is the kernel the counter's precision ladder drives directly.
Enclosure eval_raw(const CurveSpec& curve, const Rational& x, mpfr_prec_t working_bits);

struct EvalResult {
    std::optional<Rational> exact;
    std::optional<Enclosure> enclosure;
};

/// f(a/q) per the curve's eval_mode; DomainError if a/q lies outside the
/// interval or the function's natural domain.
EvalResult eval_at_rational(const CurveSpec& curve, const Integer& a, const Integer& q,
                            int precision_bits);

/// Closed-form second derivative as an enclosure.
Enclosure second_derivative(const CurveSpec& curve, const Rational& x, int precision_bits);

/// Exact f''(x); Polynomial curves only.
Rational second_derivative_exact(const CurveSpec& curve, const Rational& x);

struct ValidationReport {
    bool passed = false;
    double min_abs_f2 = 0, max_abs_f2 = 0;
    double lipschitz_estimate = 0;
    std::vector<std::string> violations; // each names the bound and witnessing x
};

/// Samples f'' on grid_size interior points plus both endpoints and checks the
/// declared c1, c2, L.  Violations are certified (reported only when the
/// enclosure proves the bound broken).  grid_size >= 2.
ValidationReport validate_curve(const CurveSpec& curve, int grid_size);

CurveSpec builtin_curve(const std::string& name); // parabola, circle, exp, log

CurveSpec load_curve_json(std::istream& in);
void save_curve_json(const CurveSpec& curve, std::ostream& out);

std::string kind_name(CurveKind kind);

} // namespace nearcurve

#endif
