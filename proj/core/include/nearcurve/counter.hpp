#ifndef NEARCURVE_COUNTER_HPP
#define NEARCURVE_COUNTER_HPP

#include "nearcurve/curve.hpp"
#include "nearcurve/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace nearcurve {

/// Tilde: |f(a/q) - b/q| < delta/Q.  Hat: |f(a/q) - b/q| < delta/q.
enum class Variant { Tilde, Hat };

struct RationalPoint {
    std::int64_t a, b, q;
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
    friend auto operator<=>(const RationalPoint&, const RationalPoint&) = default;
};

struct CountQuery {
    Variant variant = Variant::Tilde;
    Rational Q;                // threshold scale; >= 1
    Rational delta;            // 0 < delta <= 1/2
    Rational q_lo = 0;         // exclusive; defaults to 0
    Rational q_hi = -1;        // inclusive; negative means "use Q"
};

struct CountOptions {
    int workers = 0;            // 0: NEAR_CURVE_WORKERS env or hardware
    int precision_cap = 256;    // enclosure-mode escalation cap (bits)
    bool collect_points = false;
};

struct CountResult {
    std::uint64_t count_lo = 0;
    std::uint64_t count_hi = 0; // count_lo + ambiguous.size()
    std::vector<std::pair<std::int64_t, std::int64_t>> ambiguous; // (a, q)
    std::vector<RationalPoint> points; // filled when collect_points, (q, a) ascending
    int precision_bits_used = 0;
};

/// Counts coprime triples (a, b, q) with q in (q_lo, q_hi] (integers),
/// a/q in the curve interval, and the variant's distance predicate, strict
/// inequality.  Only b = nearest integer to q f(a/q) can qualify since the
/// scaled threshold never exceeds 1/2.  Enclosure-mode points that survive
/// the precision ladder up to the cap land in `ambiguous`, not in count_lo.
CountResult count(const CurveSpec& curve, const CountQuery& query,
                  const CountOptions& opts = {});

/// Same contract as count, maximally naive: scans a +/-2 window of b
/// candidates per (a, q) and asserts at most one satisfies the predicate.
/// Guarded to q_hi <= 5000.
CountResult oracle_count(const CurveSpec& curve, const CountQuery& query,
                         const CountOptions& opts = {});

/// The unambiguous points of count, ascending (q, a).
std::vector<RationalPoint> enumerate_points(const CurveSpec& curve, const CountQuery& query,
                                            CountOptions opts = {});

/// CSV with header "a,b,q,variant".
void write_points_csv(std::ostream& out, const std::vector<RationalPoint>& points,
                      Variant variant);

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);

/// Resolves worker count: explicit > env NEAR_CURVE_WORKERS > hardware.
int resolve_workers(int requested);

} // namespace nearcurve

#endif
