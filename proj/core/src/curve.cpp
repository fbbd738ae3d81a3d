#include "nearcurve/curve.hpp"

#include "nearcurve/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <istream>
#include <ostream>

namespace nearcurve {

using json = nlohmann::json;

void check_spec(const CurveSpec& curve) {
    std::vector<std::string> bad;
    if (!(curve.interval.rho < curve.interval.xi))
        bad.push_back("interval: rho must be < xi");
    if (!(curve.c1 > 0) || !(curve.c1 <= curve.c2))
        bad.push_back("curvature bounds: need 0 < c1 <= c2");
    if (curve.lipschitz < 0)
        bad.push_back("lipschitz constant must be nonnegative");
    if (curve.eval_mode == EvalMode::ExactRational && curve.kind != CurveKind::Polynomial)
        bad.push_back("exact_rational mode is only valid for polynomial curves");
    if (curve.kind == CurveKind::CircleArc) {
        if (!(curve.radius > 0))
            bad.push_back("circle_arc radius must be positive");
        if (!(-curve.radius < curve.interval.rho && curve.interval.xi < curve.radius))
            bad.push_back("circle_arc interval must lie strictly inside (-r, r)");
    }
    if (curve.kind == CurveKind::LogShifted && !(curve.interval.rho + curve.offset > 0))
        bad.push_back("log_shifted argument must stay positive on the interval");
    if (curve.kind == CurveKind::Polynomial && curve.coefficients.empty())
        bad.push_back("polynomial needs at least one coefficient");
    if (!bad.empty())
        throw ValidationError("invalid curve specification", bad);
}

Rational eval_exact(const CurveSpec& curve, const Rational& x) {
    if (curve.kind != CurveKind::Polynomial)
        throw DomainError("exact evaluation requires a polynomial curve");
    if (!curve.interval.contains(x))
        throw DomainError("abscissa " + to_fraction_string(x) + " outside the interval");
    Rational acc = 0;
    for (auto it = curve.coefficients.rbegin(); it != curve.coefficients.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Enclosure eval_raw(const CurveSpec& curve, const Rational& x, mpfr_prec_t wp) {
    switch (curve.kind) {
    case CurveKind::Polynomial: {
        Rational acc = 0;
        for (auto it = curve.coefficients.rbegin(); it != curve.coefficients.rend(); ++it)
            acc = acc * x + *it;
        return Enclosure::from_rational(acc, wp);
    }
    case CurveKind::CircleArc: {
        const Rational s = curve.radius * curve.radius - x * x;
        if (s <= 0)
            throw DomainError("circle_arc abscissa outside (-r, r)");
        return sqrt(Enclosure::from_rational(s, wp));
    }
    case CurveKind::Exp:
        return exp(Enclosure::from_rational(x, wp));
    case CurveKind::LogShifted: {
        const Rational arg = x + curve.offset;
        if (arg <= 0)
            throw DomainError("log_shifted abscissa outside the natural domain");
        return log(Enclosure::from_rational(arg, wp));
    }
    }
    throw DomainError("unknown curve kind");
}

Enclosure eval_enclosure(const CurveSpec& curve, const Rational& x, int precision_bits) {
    if (!curve.interval.contains(x))
        throw DomainError("abscissa " + to_fraction_string(x) + " outside the interval");
    mpfr_prec_t wp = precision_bits + 16;
    for (;;) {
        Enclosure e = eval_raw(curve, x, wp);
        Rational bound = rational_pow(Rational(1, 2), precision_bits - 1);
        Rational scale = ::abs(e.lo());
        if (scale > 1)
            bound *= scale;
        if (e.width() <= bound)
            return e;
        wp *= 2;
    }
}

EvalResult eval_at_rational(const CurveSpec& curve, const Integer& a, const Integer& q,
                            int precision_bits) {
    if (q <= 0)
        throw DomainError("denominator must be positive");
    Rational x(a, q);
    x.canonicalize();
    if (!curve.interval.contains(x))
        throw DomainError("abscissa " + to_fraction_string(x) + " outside the interval");
    EvalResult out;
    if (curve.eval_mode == EvalMode::ExactRational)
        out.exact = eval_exact(curve, x);
    else
        out.enclosure = eval_enclosure(curve, x, precision_bits);
    return out;
}

Rational second_derivative_exact(const CurveSpec& curve, const Rational& x) {
    if (curve.kind != CurveKind::Polynomial)
        throw DomainError("exact second derivative requires a polynomial curve");
    Rational acc = 0;
    const auto& c = curve.coefficients;
    for (std::size_t i = c.size(); i-- > 2;)
        acc = acc * x + c[i] * Rational(static_cast<unsigned long>(i) *
                                        static_cast<unsigned long>(i - 1));
    return acc;
}

Enclosure second_derivative(const CurveSpec& curve, const Rational& x, int precision_bits) {
    const mpfr_prec_t wp = precision_bits + 16;
    switch (curve.kind) {
    case CurveKind::Polynomial:
        return Enclosure::from_rational(second_derivative_exact(curve, x), wp);
    case CurveKind::CircleArc: {
        // f'' = -r^2 / (r^2 - x^2)^(3/2)
        const Rational r2 = curve.radius * curve.radius;
        const Rational s = r2 - x * x;
        if (s <= 0)
            throw DomainError("circle_arc abscissa outside (-r, r)");
        Enclosure se = Enclosure::from_rational(s, wp);
        Enclosure den = se * sqrt(se);
        return -(Enclosure::from_rational(r2, wp) / den);
    }
    case CurveKind::Exp:
        return exp(Enclosure::from_rational(x, wp));
    case CurveKind::LogShifted: {
        const Rational arg = x + curve.offset;
        if (arg <= 0)
            throw DomainError("log_shifted abscissa outside the natural domain");
        return -Enclosure::from_rational(Rational(1) / (arg * arg), wp);
    }
    }
    throw DomainError("unknown curve kind");
}

ValidationReport validate_curve(const CurveSpec& curve, int grid_size) {
    check_spec(curve);
    if (grid_size < 2)
        throw ValidationError("grid_size must be >= 2");
    const int prec = 64;
    ValidationReport rep;

    std::vector<Rational> xs;
    const Rational step = curve.interval.length() / Rational(grid_size + 1);
    for (int j = 0; j <= grid_size + 1; ++j)
        xs.push_back(curve.interval.rho + Rational(j) * step);

    std::vector<Enclosure> f2;
    f2.reserve(xs.size());
    bool first = true;
    Rational min_lo, max_hi;
    for (const auto& x : xs) {
        Enclosure d = second_derivative(curve, x, prec);
        Enclosure a = d.abs();
        if (first || a.lo() < min_lo) min_lo = a.lo();
        if (first || a.hi() > max_hi) max_hi = a.hi();
        first = false;
        if (a.hi() < curve.c1)
            rep.violations.push_back("|f''| < c1 at x=" + to_fraction_string(x) +
                                     " (|f''| <= " + std::to_string(to_double(a.hi())) + ")");
        if (a.lo() > curve.c2)
            rep.violations.push_back("|f''| > c2 at x=" + to_fraction_string(x) +
                                     " (|f''| >= " + std::to_string(to_double(a.lo())) + ")");
        // cross-check the closed form where an independent route exists
        if (curve.kind == CurveKind::Polynomial) {
            if (!d.contains(second_derivative_exact(curve, x)))
                rep.violations.push_back("closed-form f'' mismatch at x=" + to_fraction_string(x));
        } else if (curve.kind == CurveKind::CircleArc) {
            const Rational r2 = curve.radius * curve.radius;
            const Rational s = r2 - x * x;
            Enclosure se = Enclosure::from_rational(s, prec + 16);
            Enclosure cross = d * se * sqrt(se) + Enclosure::from_rational(r2, prec + 16);
            if (!cross.contains(Rational(0)))
                rep.violations.push_back("closed-form f'' identity fails at x=" +
                                         to_fraction_string(x));
        }
        f2.push_back(std::move(d));
    }
    rep.min_abs_f2 = to_double(min_lo);
    rep.max_abs_f2 = to_double(max_hi);

    double lip = 0;
    for (std::size_t j = 0; j + 1 < f2.size(); ++j) {
        Enclosure diff = (f2[j + 1] - f2[j]).abs().mul(Rational(1) / step);
        lip = std::max(lip, diff.mid());
        if (diff.lo() > curve.lipschitz)
            rep.violations.push_back("f'' Lipschitz bound exceeded between x=" +
                                     to_fraction_string(xs[j]) + " and x=" +
                                     to_fraction_string(xs[j + 1]));
    }
    rep.lipschitz_estimate = lip;
    rep.passed = rep.violations.empty();
    return rep;
}

CurveSpec builtin_curve(const std::string& name) {
    CurveSpec c;
    c.name = name;
    if (name == "parabola") {
        c.kind = CurveKind::Polynomial;
        c.coefficients = {Rational(0), Rational(0), Rational(1)};
        c.interval = {Rational(0), Rational(1)};
        c.c1 = c.c2 = 2;
        c.lipschitz = 0;
        c.eval_mode = EvalMode::ExactRational;
    } else if (name == "circle") {
        c.kind = CurveKind::CircleArc;
        c.radius = 1;
        c.interval = {Rational(-1, 2), Rational(1, 2)};
        c.c1 = 1;
        c.c2 = Rational(8, 5); // sup |f''| = (4/3)^(3/2) ~ 1.5396
        c.lipschitz = 4;       // sup |f'''| = (3/2)(3/4)^(-5/2) ~ 3.079
        c.eval_mode = EvalMode::Enclosure;
    } else if (name == "exp") {
        c.kind = CurveKind::Exp;
        c.interval = {Rational(0), Rational(1)};
        c.c1 = 1;
        c.c2 = 3;
        c.lipschitz = 3;
        c.eval_mode = EvalMode::Enclosure;
    } else if (name == "log") {
        c.kind = CurveKind::LogShifted;
        c.offset = 2;
        c.interval = {Rational(0), Rational(1)};
        c.c1 = Rational(1, 9);
        c.c2 = Rational(1, 4);
        c.lipschitz = Rational(1, 4);
        c.eval_mode = EvalMode::Enclosure;
    } else {
        throw UsageError("unknown builtin curve '" + name +
                         "' (expected parabola, circle, exp, or log)");
    }
    check_spec(c);
    return c;
}

std::string kind_name(CurveKind kind) {
    switch (kind) {
    case CurveKind::Polynomial: return "polynomial";
    case CurveKind::CircleArc: return "circle_arc";
    case CurveKind::Exp: return "exp";
    case CurveKind::LogShifted: return "log_shifted";
    }
    return "?";
}

static CurveKind kind_from_name(const std::string& s) {
    if (s == "polynomial") return CurveKind::Polynomial;
    if (s == "circle_arc") return CurveKind::CircleArc;
    if (s == "exp") return CurveKind::Exp;
    if (s == "log_shifted") return CurveKind::LogShifted;
    throw UsageError("unknown curve kind '" + s + "'");
}

CurveSpec load_curve_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("curve file is not valid JSON: ") + e.what());
    }
    CurveSpec c;
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    const json params = j.value("parameters", json::object());
    if (c.kind == CurveKind::Polynomial)
        for (const auto& s : params.at("coefficients"))
            c.coefficients.push_back(parse_rational(s.get<std::string>()));
    if (c.kind == CurveKind::CircleArc)
        c.radius = parse_rational(params.at("radius").get<std::string>());
    if (c.kind == CurveKind::LogShifted)
        c.offset = parse_rational(params.at("offset").get<std::string>());
    c.interval.rho = parse_rational(j.at("interval").at("rho").get<std::string>());
    c.interval.xi = parse_rational(j.at("interval").at("xi").get<std::string>());
    c.c1 = parse_rational(j.at("c1").get<std::string>());
    c.c2 = parse_rational(j.at("c2").get<std::string>());
    c.lipschitz = parse_rational(j.at("L").get<std::string>());
    const std::string mode = j.value("eval_mode", "enclosure");
    if (mode == "exact_rational")
        c.eval_mode = EvalMode::ExactRational;
    else if (mode == "enclosure")
        c.eval_mode = EvalMode::Enclosure;
    else
        throw UsageError("unknown eval_mode '" + mode + "'");
    c.name = j.value("name", "");
    check_spec(c);
    return c;
}

void save_curve_json(const CurveSpec& curve, std::ostream& out) {
    json params = json::object();
    if (curve.kind == CurveKind::Polynomial) {
        json coeffs = json::array();
        for (const auto& r : curve.coefficients)
            coeffs.push_back(to_fraction_string(r));
        params["coefficients"] = coeffs;
    }
    if (curve.kind == CurveKind::CircleArc)
        params["radius"] = to_fraction_string(curve.radius);
    if (curve.kind == CurveKind::LogShifted)
        params["offset"] = to_fraction_string(curve.offset);
    json j{
        {"kind", kind_name(curve.kind)},
        {"parameters", params},
        {"interval", {{"rho", to_fraction_string(curve.interval.rho)},
                      {"xi", to_fraction_string(curve.interval.xi)}}},
        {"c1", to_fraction_string(curve.c1)},
        {"c2", to_fraction_string(curve.c2)},
        {"L", to_fraction_string(curve.lipschitz)},
        {"eval_mode", curve.eval_mode == EvalMode::ExactRational ? "exact_rational" : "enclosure"},
    };
    if (!curve.name.empty())
        j["name"] = curve.name;
    out << j.dump(2) << "\n";
}

} // namespace nearcurve
