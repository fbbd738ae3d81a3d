#include "nearcurve/counter.hpp"

#include "nearcurve/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <thread>

namespace nearcurve {

namespace {

struct ResolvedQuery {
    Variant variant;
    Rational Q, delta;
    std::int64_t q_first, q_last; // inclusive integer range; empty if last < first
    Rational tilde_threshold;     // delta / Q
};

ResolvedQuery resolve_query(const CountQuery& query) {
    if (!(query.delta > 0) || !(query.delta <= Rational(1, 2)))
        throw ValidationError("delta must satisfy 0 < delta <= 1/2");
    if (!(query.Q >= 1))
        throw ValidationError("Q must be >= 1");
    Rational q_hi = query.q_hi < 0 ? query.Q : query.q_hi;
    if (!(query.q_lo >= 0) || !(query.q_lo <= q_hi) || !(q_hi <= query.Q))
        throw ValidationError("q range must satisfy 0 <= q_lo <= q_hi <= Q");
    ResolvedQuery r;
    r.variant = query.variant;
    r.Q = query.Q;
    r.delta = query.delta;
    Integer first = rational_floor(query.q_lo) + 1;
    Integer last = rational_floor(q_hi);
    if (first < 1)
        first = 1;
    if (!first.fits_slong_p() || !last.fits_slong_p())
        throw ValidationError("q range too large for this build");
    r.q_first = first.get_si();
    r.q_last = last.get_si();
    r.tilde_threshold = query.delta / query.Q;
    return r;
}

struct ChunkResult {
    std::uint64_t count = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> ambiguous;
    std::vector<RationalPoint> points;
    int precision_bits = 0;
};

std::int64_t ceil_div_i64(std::int64_t n, std::int64_t d) { // d > 0
    return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}
std::int64_t floor_div_i64(std::int64_t n, std::int64_t d) { // d > 0
    return n >= 0 ? n / d : -((-n + d - 1) / d);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// ---- fast kernel: f(x) = x^2, interval with 0 <= rho < xi, small bounds ----

bool kernel_applicable(const CurveSpec& curve, const ResolvedQuery& rq) {
    if (curve.kind != CurveKind::Polynomial || curve.eval_mode != EvalMode::ExactRational)
        return false;
    const auto& c = curve.coefficients;
    if (c.size() != 3 || c[0] != 0 || c[1] != 0 || c[2] != 1)
        return false;
    if (curve.interval.rho < 0 || curve.interval.xi > 8)
        return false;
    if (rq.q_last > (std::int64_t{1} << 20))
        return false;
    const auto small = [](const Integer& z) {
        return z.fits_slong_p() && std::abs(z.get_si()) < (std::int64_t{1} << 30);
    };
    return small(rq.delta.get_num()) && small(rq.delta.get_den()) &&
           small(rq.Q.get_num()) && small(rq.Q.get_den()) &&
           small(curve.interval.rho.get_num()) && small(curve.interval.rho.get_den()) &&
           small(curve.interval.xi.get_num()) && small(curve.interval.xi.get_den());
}

void kernel_chunk(const CurveSpec& curve, const ResolvedQuery& rq,
                  std::int64_t q_begin, std::int64_t q_end, bool collect,
                  ChunkResult& out) {
    const std::int64_t rho_n = curve.interval.rho.get_num().get_si();
    const std::int64_t rho_d = curve.interval.rho.get_den().get_si();
    const std::int64_t xi_n = curve.interval.xi.get_num().get_si();
    const std::int64_t xi_d = curve.interval.xi.get_den().get_si();
    const std::uint64_t dn = rq.delta.get_num().get_ui();
    const std::uint64_t dd = rq.delta.get_den().get_ui();
    const std::uint64_t Qn = rq.Q.get_num().get_ui();
    const std::uint64_t Qd = rq.Q.get_den().get_ui();
    const bool tilde = rq.variant == Variant::Tilde;
    const unsigned __int128 lhs_scale =
        tilde ? (unsigned __int128)dd * Qn : (unsigned __int128)dd;

    for (std::int64_t q = q_begin; q <= q_end; ++q) {
        const std::int64_t a0 = ceil_div_i64(rho_n * q, rho_d);
        const std::int64_t a1 = floor_div_i64(xi_n * q, xi_d);
        if (a1 < a0)
            continue;
        // tilde: dist * dd * Qn < dn * Qd * q^2;  hat: dist * dd < dn * q
        const unsigned __int128 rhs =
            tilde ? (unsigned __int128)dn * Qd * (unsigned __int128)q * (unsigned __int128)q
                  : (unsigned __int128)dn * (unsigned __int128)q;
        // |f(a/q) - b/q| = |a^2 - b q| / q^2; track a^2 mod q incrementally.
        std::uint64_t uq = static_cast<std::uint64_t>(q);
        std::uint64_t r = static_cast<std::uint64_t>((a0 * a0) % q);
        std::int64_t bq = (a0 * a0) / q;
        for (std::int64_t a = a0;; ++a) {
            const std::uint64_t dist = std::min(r, uq - r);
            if (lhs_scale * dist < rhs) {
                const std::int64_t b = (2 * r <= uq) ? bq : bq + 1;
                std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(a), uq);
                if (g != 1)
                    g = gcd_u64(g, static_cast<std::uint64_t>(b));
                if (g == 1) {
                    ++out.count;
                    if (collect)
                        out.points.push_back({a, b, q});
                }
            }
            if (a == a1)
                break;
            r += static_cast<std::uint64_t>(2 * a + 1);
            while (r >= uq) {
                r -= uq;
                ++bq;
            }
        }
    }
}

// ---- generic exact path: polynomial curves, full rational arithmetic ----

void exact_chunk(const CurveSpec& curve, const ResolvedQuery& rq,
                 std::int64_t q_begin, std::int64_t q_end, bool collect,
                 ChunkResult& out) {
    for (std::int64_t q = q_begin; q <= q_end; ++q) {
        const Rational rq_q(q);
        // scaled threshold t = q * theta, so the test is |q f - b| < t with t <= 1/2
        const Rational t = rq.variant == Variant::Tilde ? rq_q * rq.tilde_threshold : rq.delta;
        const Integer a_first = rational_ceil(curve.interval.rho * rq_q);
        const Integer a_last = rational_floor(curve.interval.xi * rq_q);
        for (Integer a = a_first; a <= a_last; ++a) {
            Rational x(a, q);
            x.canonicalize();
            Rational v = 0;
            for (auto it = curve.coefficients.rbegin(); it != curve.coefficients.rend(); ++it)
                v = v * x + *it;
            const Rational w = v * rq_q;
            const Integer b_floor = rational_floor(w);
            const Rational frac = w - Rational(b_floor);
            Integer b;
            bool hit = false;
            if (frac < t) {
                b = b_floor;
                hit = true;
            } else if (Rational(1) - frac < t) {
                b = b_floor + 1;
                hit = true;
            }
            if (!hit)
                continue;
            Integer g = gcd(gcd(a, Integer(q)), b);
            if (g != 1)
                continue;
            if (!a.fits_slong_p() || !b.fits_slong_p())
                throw DomainError("point coordinates exceed 64-bit storage");
            ++out.count;
            if (collect)
                out.points.push_back({a.get_si(), b.get_si(), q});
        }
    }
}

// ---- enclosure path: precision ladder 53 -> 128 -> 256 -> ... up to cap ----

std::vector<int> precision_ladder(int cap) {
    std::vector<int> ps{53, 128, 256};
    while (ps.back() < cap)
        ps.push_back(ps.back() * 2);
    while (ps.size() > 1 && ps[ps.size() - 2] >= cap)
        ps.pop_back();
    if (ps.back() > cap)
        ps.back() = cap;
    return ps;
}

void enclosure_chunk(const CurveSpec& curve, const ResolvedQuery& rq,
                     std::int64_t q_begin, std::int64_t q_end, bool collect, int cap,
                     ChunkResult& out) {
    const std::vector<int> ladder = precision_ladder(cap);
    for (std::int64_t q = q_begin; q <= q_end; ++q) {
        const Rational rq_q(q);
        const Rational theta =
            rq.variant == Variant::Tilde ? rq.tilde_threshold : rq.delta / rq_q;
        const Integer a_first = rational_ceil(curve.interval.rho * rq_q);
        const Integer a_last = rational_floor(curve.interval.xi * rq_q);
        for (Integer a = a_first; a <= a_last; ++a) {
            Rational x(a, q);
            x.canonicalize();
            bool decided = false;
            bool ambiguous_here = false;
            for (std::size_t step = 0; step < ladder.size() && !decided; ++step) {
                const int prec = ladder[step];
                out.precision_bits = std::max(out.precision_bits, prec);
                ambiguous_here = false;
                Enclosure v = eval_raw(curve, x, prec);
                Enclosure w = v.mul(rq_q);
                const Integer b_lo = rational_floor(w.lo());
                const Integer b_hi = rational_floor(w.hi()) + 1;
                if (b_hi - b_lo > 4) {
                    ambiguous_here = true; // enclosure too wide; escalate
                    continue;
                }
                for (Integer b = b_lo; b <= b_hi; ++b) {
                    Rational bq(b, q);
                    bq.canonicalize();
                    switch (v.sub(bq).abs().compare(theta)) {
                    case Trichotomy::Below: {
                        // the only b that can satisfy the strict predicate
                        decided = true;
                        if (gcd(gcd(a, Integer(q)), b) == 1) {
                            if (!a.fits_slong_p() || !b.fits_slong_p())
                                throw DomainError("point coordinates exceed 64-bit storage");
                            ++out.count;
                            if (collect)
                                out.points.push_back({a.get_si(), b.get_si(), q});
                        }
                        break;
                    }
                    case Trichotomy::Ambiguous:
                        if (gcd(gcd(a, Integer(q)), b) == 1)
                            ambiguous_here = true;
                        break;
                    case Trichotomy::Above:
                        break;
                    }
                    if (decided)
                        break;
                }
                if (!decided && !ambiguous_here)
                    decided = true; // certified rejection for every candidate
            }
            if (!decided && ambiguous_here) {
                if (curve.kind == CurveKind::Polynomial) {
                    // exact fallback: polynomial distances are rational, so ties
                    // (|f - b/q| == theta exactly) are decidable after all
                    Rational v = 0;
                    for (auto it = curve.coefficients.rbegin();
                         it != curve.coefficients.rend(); ++it)
                        v = v * x + *it;
                    const Rational w = v * rq_q;
                    const Rational t = theta * rq_q; // |q f - b| < q theta
                    const Integer b_floor = rational_floor(w);
                    const Rational frac = w - Rational(b_floor);
                    Integer b;
                    bool hit = false;
                    if (frac < t) {
                        b = b_floor;
                        hit = true;
                    } else if (Rational(1) - frac < t) {
                        b = b_floor + 1;
                        hit = true;
                    }
                    if (hit && gcd(gcd(a, Integer(q)), b) == 1) {
                        if (!a.fits_slong_p() || !b.fits_slong_p())
                            throw DomainError("point coordinates exceed 64-bit storage");
                        ++out.count;
                        if (collect)
                            out.points.push_back({a.get_si(), b.get_si(), q});
                    }
                } else {
                    out.ambiguous.emplace_back(a.get_si(), q);
                }
            }
        }
    }
}

CountResult run_parallel(const CurveSpec& curve, const ResolvedQuery& rq,
                         const CountOptions& opts) {
    CountResult result;
    if (rq.q_last < rq.q_first)
        return result;
    const bool kernel = kernel_applicable(curve, rq);

    const std::int64_t span = rq.q_last - rq.q_first + 1;
    const int workers = static_cast<int>(
        std::max<std::int64_t>(1, std::min<std::int64_t>(resolve_workers(opts.workers), span)));
    const std::int64_t chunk =
        std::max<std::int64_t>(1, span / std::max<std::int64_t>(1, workers * 16));
    const std::int64_t nchunks = (span + chunk - 1) / chunk;

    std::vector<ChunkResult> chunks(nchunks);
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= nchunks)
                return;
            const std::int64_t qb = rq.q_first + i * chunk;
            const std::int64_t qe = std::min(rq.q_last, qb + chunk - 1);
            if (kernel)
                kernel_chunk(curve, rq, qb, qe, opts.collect_points, chunks[i]);
            else if (curve.eval_mode == EvalMode::ExactRational)
                exact_chunk(curve, rq, qb, qe, opts.collect_points, chunks[i]);
            else
                enclosure_chunk(curve, rq, qb, qe, opts.collect_points, opts.precision_cap,
                                chunks[i]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }

    for (auto& c : chunks) {
        result.count_lo += c.count;
        result.ambiguous.insert(result.ambiguous.end(), c.ambiguous.begin(), c.ambiguous.end());
        result.points.insert(result.points.end(), c.points.begin(), c.points.end());
        result.precision_bits_used = std::max(result.precision_bits_used, c.precision_bits);
    }
    result.count_hi = result.count_lo + result.ambiguous.size();
    if (result.precision_bits_used == 0 && curve.eval_mode == EvalMode::ExactRational)
        result.precision_bits_used = 0; // exact path: no floating precision involved
    return result;
}

} // namespace

int resolve_workers(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("NEAR_CURVE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

CountResult count(const CurveSpec& curve, const CountQuery& query, const CountOptions& opts) {
    return run_parallel(curve, resolve_query(query), opts);
}

CountResult oracle_count(const CurveSpec& curve, const CountQuery& query,
                         const CountOptions& opts) {
    const ResolvedQuery rq = resolve_query(query);
    if (rq.q_last > 5000)
        throw ValidationError("oracle_count is guarded to q_hi <= 5000");
    const int prec = 192;
    CountResult result;
    result.precision_bits_used = curve.eval_mode == EvalMode::ExactRational ? 0 : prec;
    for (std::int64_t q = rq.q_first; q <= rq.q_last; ++q) {
        const Rational rq_q(q);
        const Rational theta =
            rq.variant == Variant::Tilde ? rq.tilde_threshold : rq.delta / rq_q;
        const Integer a_first = rational_ceil(curve.interval.rho * rq_q);
        const Integer a_last = rational_floor(curve.interval.xi * rq_q);
        for (Integer a = a_first; a <= a_last; ++a) {
            Rational x(a, q);
            x.canonicalize();
            int satisfied = 0;
            if (curve.eval_mode == EvalMode::ExactRational) {
                const Rational v = eval_exact(curve, x);
                const Integer center = rational_floor(v * rq_q + Rational(1, 2));
                for (Integer b = center - 2; b <= center + 2; ++b) {
                    Rational bq(b, q);
                    bq.canonicalize();
                    if (::abs(v - bq) < theta) {
                        ++satisfied;
                        if (gcd(gcd(a, Integer(q)), b) == 1) {
                            result.count_lo += 1;
                            result.points.push_back({a.get_si(), b.get_si(), q});
                        }
                    }
                }
            } else {
                const Enclosure v = eval_raw(curve, x, prec);
                const Integer center = rational_floor(v.mul(rq_q).lo() + Rational(1, 2));
                bool amb = false;
                for (Integer b = center - 2; b <= center + 2; ++b) {
                    Rational bq(b, q);
                    bq.canonicalize();
                    switch (v.sub(bq).abs().compare(theta)) {
                    case Trichotomy::Below:
                        ++satisfied;
                        if (gcd(gcd(a, Integer(q)), b) == 1) {
                            result.count_lo += 1;
                            result.points.push_back({a.get_si(), b.get_si(), q});
                        }
                        break;
                    case Trichotomy::Ambiguous:
                        if (gcd(gcd(a, Integer(q)), b) == 1)
                            amb = true;
                        break;
                    case Trichotomy::Above:
                        break;
                    }
                }
                if (amb && satisfied == 0)
                    result.ambiguous.emplace_back(a.get_si(), q);
            }
            if (satisfied > 1)
                throw ValidationError("window scan found two satisfying b for a=" +
                                      a.get_str() + ", q=" + std::to_string(q) +
                                      " (threshold > 1/2?)");
        }
    }
    result.count_hi = result.count_lo + result.ambiguous.size();
    if (!opts.collect_points)
        result.points.clear();
    return result;
}

std::vector<RationalPoint> enumerate_points(const CurveSpec& curve, const CountQuery& query,
                                            CountOptions opts) {
    opts.collect_points = true;
    return count(curve, query, opts).points;
}

void write_points_csv(std::ostream& out, const std::vector<RationalPoint>& points,
                      Variant variant) {
    out << "a,b,q,variant\n";
    const std::string v = variant_name(variant);
    for (const auto& p : points)
        out << p.a << "," << p.b << "," << p.q << "," << v << "\n";
}

std::string variant_name(Variant v) { return v == Variant::Tilde ? "tilde" : "hat"; }

Variant variant_from_name(const std::string& s) {
    if (s == "tilde")
        return Variant::Tilde;
    if (s == "hat")
        return Variant::Hat;
    throw UsageError("unknown variant '" + s + "' (expected tilde or hat)");
}

} // namespace nearcurve
