#include "nearcurve/harness.hpp"

#include "nearcurve/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace nearcurve {

using json = nlohmann::json;

namespace {

/// delta > Q^(e_num/e_den) decided exactly: delta^e_den vs Q^e_num
/// cross-multiplied so only nonnegative exponents appear.
bool exceeds_power(const Rational& delta, const Rational& Q, const Rational& exponent) {
    const Integer en = exponent.get_num();
    const unsigned long ed = exponent.get_den().get_ui();
    if (en >= 0)
        return rational_pow(delta, ed) > rational_pow(Q, en.get_ui());
    const Integer neg = -en;
    const Rational lhs = rational_pow(delta, ed) * rational_pow(Q, neg.get_ui());
    return lhs > 1;
}

} // namespace

HypothesisCheck check_hypothesis(const Rational& Q, const Rational& delta,
                                 const HypothesisParams& params) {
    HypothesisCheck out;
    if (!(Q >= 1))
        throw ValidationError("check_hypothesis requires Q >= 1");
    if (!(params.epsilon > 0) || !(params.epsilon < 1)) {
        out.detail = "epsilon outside (0,1)";
        return out;
    }
    if (!(delta <= Rational(1, 2))) {
        out.detail = "delta > 1/2";
        return out;
    }
    if (!(delta > 0)) {
        out.detail = "delta <= 0";
        return out;
    }
    if (!exceeds_power(delta, Q, params.epsilon - 1)) {
        out.detail = "delta <= Q^(epsilon-1)";
        return out;
    }
    out.ok = true;
    out.detail = "1/2 >= delta > Q^(epsilon-1)";
    return out;
}

RatioBand ratio(const CountResult& result, const CurveSpec& curve, const Rational& Q,
                const Rational& delta) {
    const Rational denom = curve.interval.length() * delta * Q * Q;
    return {Rational(static_cast<unsigned long>(result.count_lo)) / denom,
            Rational(static_cast<unsigned long>(result.count_hi)) / denom};
}

Rational power_delta(const Rational& Q, const Rational& epsilon) {
    const Rational exponent = epsilon - 1;
    // upper bound of Q^(epsilon-1) as a float, then round up on a 10^-6 grid
    mpfr_t q, e, p;
    mpfr_init2(q, 128);
    mpfr_init2(e, 128);
    mpfr_init2(p, 128);
    mpfr_set_q(q, Q.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(e, exponent.get_mpq_t(), MPFR_RNDU);
    mpfr_pow(p, q, e, MPFR_RNDU);
    mpfr_mul_ui(p, p, 1000000, MPFR_RNDU);
    Integer num;
    mpfr_get_z(num.get_mpz_t(), p, MPFR_RNDU);
    mpfr_clear(q);
    mpfr_clear(e);
    mpfr_clear(p);

    Rational delta(num, Integer(1000000));
    delta.canonicalize();
    while (!exceeds_power(delta, Q, exponent)) // strictness by construction
        delta += Rational(1, 1000000);
    if (delta > Rational(1, 2))
        delta = Rational(1, 2);
    return delta;
}

AsymptoticReport sweep(const CurveSpec& curve, const SweepConfig& config) {
    if (config.q_grid.empty())
        throw ValidationError("sweep requires a nonempty Q grid");

    AsymptoticReport rep;
    rep.target = config.variant == Variant::Tilde ? NamedConstant::TwoThirdsOverZeta3
                                                  : NamedConstant::InvZeta3;
    const Enclosure target_enc = constant(rep.target);
    rep.target_lo = target_enc.lo();
    rep.target_hi = target_enc.hi();
    rep.window_lo = constant(NamedConstant::LowerHuang).lo() - config.slack;
    rep.window_hi = constant(NamedConstant::InvZeta3).hi() + config.slack;

    // hypothesis gate fires before any counting
    std::vector<std::string> offending;
    std::vector<Rational> deltas;
    for (const Rational& Q : config.q_grid) {
        const Rational delta =
            config.rule == DeltaRule::Fixed ? config.fixed_delta : power_delta(Q, config.epsilon);
        deltas.push_back(delta);
        HypothesisCheck hc =
            check_hypothesis(Q, delta, HypothesisParams{config.epsilon, config.epsilon / 4});
        if (!hc.ok)
            offending.push_back("Q=" + to_fraction_string(Q) +
                                " delta=" + to_fraction_string(delta) + ": " + hc.detail);
    }
    if (!offending.empty())
        throw HypothesisViolation("hypothesis (1/2 >= delta > Q^(epsilon-1)) violated",
                                  offending);

    for (std::size_t i = 0; i < config.q_grid.size(); ++i) {
        SweepRow row;
        row.Q = config.q_grid[i];
        row.delta = deltas[i];
        row.variant = config.variant;
        CountQuery q;
        q.variant = config.variant;
        q.Q = row.Q;
        q.delta = row.delta;
        CountResult c = count(curve, q, config.opts);
        row.count_lo = c.count_lo;
        row.count_hi = c.count_hi;
        RatioBand rb = ratio(c, curve, row.Q, row.delta);
        row.ratio_lo = rb.lo;
        row.ratio_hi = rb.hi;
        row.verdict = (row.ratio_lo >= rep.window_lo && row.ratio_hi <= rep.window_hi)
                          ? "INSIDE_HUANG_WINDOW"
                          : "OUTSIDE_HUANG_WINDOW";
        rep.rows.push_back(std::move(row));
    }

    // trend: least-squares slope of log|mid - target| against log Q
    const double target_mid = (to_double(rep.target_lo) + to_double(rep.target_hi)) / 2;
    std::vector<double> xs, ys;
    for (const auto& row : rep.rows) {
        const double mid = (to_double(row.ratio_lo) + to_double(row.ratio_hi)) / 2;
        const double dev = std::fabs(mid - target_mid);
        if (dev > 0) {
            xs.push_back(std::log(to_double(row.Q)));
            ys.push_back(std::log(dev));
        }
    }
    if (!rep.rows.empty()) {
        const auto& last = rep.rows.back();
        rep.final_deviation =
            std::fabs((to_double(last.ratio_lo) + to_double(last.ratio_hi)) / 2 - target_mid);
    }
    if (xs.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        rep.trend_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rep.trend_defined = true;
    }
    return rep;
}

namespace {

json report_to_json(const AsymptoticReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({
            {"Q", to_fraction_string(r.Q)},
            {"delta", to_fraction_string(r.delta)},
            {"variant", variant_name(r.variant)},
            {"count_lo", r.count_lo},
            {"count_hi", r.count_hi},
            {"ratio_lo", to_fraction_string(r.ratio_lo)},
            {"ratio_hi", to_fraction_string(r.ratio_hi)},
            {"verdict", r.verdict},
        });
    }
    return json{
        {"rows", rows},
        {"target", constant_name(rep.target)},
        {"target_lo", to_fraction_string(rep.target_lo)},
        {"target_hi", to_fraction_string(rep.target_hi)},
        {"window_lo", to_fraction_string(rep.window_lo)},
        {"window_hi", to_fraction_string(rep.window_hi)},
        {"trend_defined", rep.trend_defined},
        {"trend_slope", rep.trend_slope},
        {"final_deviation", rep.final_deviation},
    };
}

void emit_svg(const AsymptoticReport& rep, std::ostream& out) {
    const double W = 720, H = 440, ml = 70, mr = 30, mt = 30, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = 1.0;
    for (const auto& r : rep.rows) {
        const double lq = std::log10(to_double(r.Q));
        xmin = std::min(xmin, lq);
        xmax = std::max(xmax, lq);
        ymax = std::max(ymax, to_double(r.ratio_hi) * 1.1);
    }
    if (xmax <= xmin)
        xmax = xmin + 1;
    const auto X = [&](double lq) { return ml + (lq - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto Y = [&](double v) { return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";

    const struct {
        NamedConstant c;
        const char* color;
    } refs[] = {{NamedConstant::LowerHuang, "#b22"},
                {NamedConstant::TwoThirdsOverZeta3, "#282"},
                {NamedConstant::InvZeta3, "#22b"}};
    for (const auto& ref : refs) {
        const double v = constant(ref.c).mid();
        out << "<line class=\"refline\" x1=\"" << ml << "\" y1=\"" << Y(v) << "\" x2=\""
            << W - mr << "\" y2=\"" << Y(v) << "\" stroke=\"" << ref.color
            << "\" stroke-dasharray=\"6,4\"/>\n";
        out << "<text x=\"" << W - mr - 4 << "\" y=\"" << Y(v) - 4
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << ref.color << "\">"
            << constant_name(ref.c) << "</text>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : rep.rows) {
        const double mid = (to_double(r.ratio_lo) + to_double(r.ratio_hi)) / 2;
        out << X(std::log10(to_double(r.Q))) << "," << Y(mid) << " ";
    }
    out << "\"/>\n";
    for (const auto& r : rep.rows) {
        const double mid = (to_double(r.ratio_lo) + to_double(r.ratio_hi)) / 2;
        out << "<circle cx=\"" << X(std::log10(to_double(r.Q))) << "\" cy=\"" << Y(mid)
            << "\" r=\"3\" fill=\"black\"/>\n";
    }
    out << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">log10 Q</text>\n";
    out << "<text x=\"16\" y=\"" << (H / 2)
        << "\" font-size=\"12\" transform=\"rotate(-90 16 " << (H / 2)
        << ")\" text-anchor=\"middle\">count / (|I| delta Q^2)</text>\n";
    out << "</svg>\n";
}

} // namespace

void emit(const AsymptoticReport& rep, Format format, std::ostream& out) {
    if (rep.rows.empty())
        throw ValidationError("refusing to emit an empty report");
    switch (format) {
    case Format::Csv:
        out << "Q,delta,variant,count_lo,count_hi,ratio_lo,ratio_hi,verdict\n";
        for (const auto& r : rep.rows)
            out << to_fraction_string(r.Q) << "," << to_fraction_string(r.delta) << ","
                << variant_name(r.variant) << "," << r.count_lo << "," << r.count_hi << ","
                << to_fraction_string(r.ratio_lo) << "," << to_fraction_string(r.ratio_hi)
                << "," << r.verdict << "\n";
        return;
    case Format::Json:
        out << report_to_json(rep).dump(2) << "\n";
        return;
    case Format::Svg:
        emit_svg(rep, out);
        return;
    }
    throw UnsupportedFormat("unknown report format");
}

AsymptoticReport parse_report_json(std::istream& in) {
    json j;
    in >> j;
    AsymptoticReport rep;
    for (const auto& rj : j.at("rows")) {
        SweepRow r;
        r.Q = parse_rational(rj.at("Q").get<std::string>());
        r.delta = parse_rational(rj.at("delta").get<std::string>());
        r.variant = variant_from_name(rj.at("variant").get<std::string>());
        r.count_lo = rj.at("count_lo").get<std::uint64_t>();
        r.count_hi = rj.at("count_hi").get<std::uint64_t>();
        r.ratio_lo = parse_rational(rj.at("ratio_lo").get<std::string>());
        r.ratio_hi = parse_rational(rj.at("ratio_hi").get<std::string>());
        r.verdict = rj.at("verdict").get<std::string>();
        rep.rows.push_back(std::move(r));
    }
    const std::string t = j.at("target").get<std::string>();
    rep.target = t == "inv_zeta3" ? NamedConstant::InvZeta3 : NamedConstant::TwoThirdsOverZeta3;
    rep.target_lo = parse_rational(j.at("target_lo").get<std::string>());
    rep.target_hi = parse_rational(j.at("target_hi").get<std::string>());
    rep.window_lo = parse_rational(j.at("window_lo").get<std::string>());
    rep.window_hi = parse_rational(j.at("window_hi").get<std::string>());
    rep.trend_defined = j.at("trend_defined").get<bool>();
    rep.trend_slope = j.at("trend_slope").get<double>();
    rep.final_deviation = j.at("final_deviation").get<double>();
    return rep;
}

} // namespace nearcurve
