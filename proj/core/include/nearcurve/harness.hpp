#ifndef NEARCURVE_HARNESS_HPP
#define NEARCURVE_HARNESS_HPP

#include "nearcurve/constants.hpp"
#include "nearcurve/counter.hpp"
#include "nearcurve/curve.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nearcurve {

struct HypothesisParams {
    Rational epsilon; // in (0, 1)
    Rational tau;     // 0 < tau < epsilon/2
};

struct HypothesisCheck {
    bool ok = false;
    std::string detail;
};

/// The admissible regime: delta <= 1/2 and delta > Q^(epsilon - 1),
/// the power comparison done exactly in rational arithmetic.
HypothesisCheck check_hypothesis(const Rational& Q, const Rational& delta,
                                 const HypothesisParams& params);

struct RatioBand {
    Rational lo, hi; // [count_lo, count_hi] / (|I| delta Q^2), exact
};

RatioBand ratio(const CountResult& result, const CurveSpec& curve, const Rational& Q,
                const Rational& delta);

enum class DeltaRule { Fixed, Power };
enum class Format { Csv, Json, Svg };

struct SweepConfig {
    std::vector<Rational> q_grid;
    DeltaRule rule = DeltaRule::Fixed;
    Rational fixed_delta = Rational(1, 4);
    Rational epsilon = Rational(1, 2);
    Variant variant = Variant::Tilde;
    Rational slack = Rational(1, 50); // window slack, default 0.02
    CountOptions opts;
};

struct SweepRow {
    Rational Q, delta;
    Variant variant = Variant::Tilde;
    std::uint64_t count_lo = 0, count_hi = 0;
    Rational ratio_lo, ratio_hi;
    std::string verdict;
    bool operator==(const SweepRow&) const = default;
};

struct AsymptoticReport {
    std::vector<SweepRow> rows;
    NamedConstant target = NamedConstant::TwoThirdsOverZeta3;
    Rational target_lo, target_hi; // enclosure endpoints of the target constant
    Rational window_lo, window_hi; // Huang window including slack
    bool trend_defined = false;
    double trend_slope = 0;     // least-squares slope of log|mid - target| vs log Q
    double final_deviation = 0; // |mid - target| at the largest Q
    bool operator==(const AsymptoticReport&) const = default;
};

/// One row per grid Q.  Every (Q, delta) must pass check_hypothesis for the
/// configured epsilon; otherwise HypothesisViolation lists the offending rows.
AsymptoticReport sweep(const CurveSpec& curve, const SweepConfig& config);

void emit(const AsymptoticReport& report, Format format, std::ostream& out);

AsymptoticReport parse_report_json(std::istream& in);

/// The Power delta schedule: smallest rational with denominator <= 10^6 that
/// exceeds Q^(epsilon-1), clipped to 1/2.
Rational power_delta(const Rational& Q, const Rational& epsilon);

} // namespace nearcurve

#endif
