// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion re-derives its expected values independently of the
// unit tests (hand enumeration, the naive oracle, exact algebra).

#include "nearcurve/constants.hpp"
#include "nearcurve/counter.hpp"
#include "nearcurve/curve.hpp"
#include "nearcurve/decomp.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/harness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nearcurve;

namespace {

struct Check {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

std::uint64_t count_exact(const CurveSpec& curve, Variant v, const Rational& Q,
                          const Rational& delta, Check& c) {
    CountQuery q;
    q.variant = v;
    q.Q = Q;
    q.delta = delta;
    CountResult r = count(curve, q);
    c.require(r.ambiguous.empty(), "unexpected ambiguous points");
    return r.count_lo;
}

// 1. hand-enumerated exact counts
void criterion1(Check& c) {
    CurveSpec parabola = builtin_curve("parabola");
    c.require(count_exact(parabola, Variant::Tilde, 1, Rational(1, 4), c) == 2,
              "Tilde(Q=1, delta=1/4) != 2");
    c.require(count_exact(parabola, Variant::Tilde, 4, Rational(2, 5), c) == 5,
              "Tilde(Q=4, delta=2/5) != 5");
    c.require(count_exact(parabola, Variant::Hat, 4, Rational(2, 5), c) == 7,
              "Hat(Q=4, delta=2/5) != 7");
    CurveSpec shifted = parabola; // x^2 + 1/2
    shifted.coefficients[0] = Rational(1, 2);
    c.require(count_exact(shifted, Variant::Tilde, 1, Rational(1, 4), c) == 0,
              "shifted Tilde(Q=1, delta=1/4) != 0");
}

// 2. oracle equivalence over all builtins, Q <= 60, four deltas, both variants
void criterion2(Check& c) {
    const Rational deltas[] = {Rational(1, 10), Rational(1, 4), Rational(2, 5), Rational(1, 2)};
    for (const char* name : {"parabola", "circle", "exp", "log"}) {
        CurveSpec curve = builtin_curve(name);
        for (int Q = 1; Q <= 60; ++Q)
            for (const Rational& d : deltas)
                for (Variant v : {Variant::Tilde, Variant::Hat}) {
                    CountQuery q;
                    q.variant = v;
                    q.Q = Q;
                    q.delta = d;
                    CountOptions opts;
                    opts.collect_points = true;
                    CountResult fast = count(curve, q, opts);
                    CountResult naive = oracle_count(curve, q, opts);
                    if (fast.count_lo != naive.count_lo || fast.count_hi != naive.count_hi ||
                        fast.points != naive.points) {
                        std::ostringstream os;
                        os << "discrepancy: " << name << " Q=" << Q
                           << " delta=" << to_fraction_string(d) << " "
                           << variant_name(v);
                        c.require(false, os.str());
                        return;
                    }
                }
    }
}

// 3. proof audits at Q=500, delta=1/4, two schemes, parabola and circle
void criterion3(Check& c) {
    const ProofParams params = default_proof_params();
    for (const char* name : {"parabola", "circle"}) {
        CurveSpec curve = builtin_curve(name);
        for (const auto& [alpha, t] :
             {std::pair<Rational, int>{Rational(3, 4), 3}, {Rational(9, 10), 5}}) {
            ShellScheme scheme = ShellScheme::make(alpha, t);
            try {
                AuditReport lo = audit_lower(curve, 500, Rational(1, 4), scheme, params);
                AuditReport hi = audit_upper(curve, 500, Rational(1, 4), scheme, params);
                c.require(lo.passed && hi.passed, std::string("audit not passed for ") + name);
            } catch (const AuditFailure& e) {
                c.require(false, std::string("audit failure for ") + name + ": " + e.what());
                return;
            }
        }
    }
}

// 4. algebraic identities and certified parameter choice
void criterion4(Check& c) {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        int den = 100 + static_cast<int>(rng() % 100);
        std::uniform_int_distribution<int> nd(den / 2 + 1, den - 1);
        Rational alpha(nd(rng), den);
        alpha.canonicalize();
        ShellScheme s = ShellScheme::make(alpha, 1 + static_cast<int>(rng() % 40));
        c.require(X_direct(s) == X_closed(s), "X_direct != X_closed");
        c.require(Y_value(s).value == X_direct(s) / alpha, "Y != X/alpha");
    }
    const Rational z = zeta3(60).lo();
    for (const Rational& eta : {Rational(1), Rational(1, 10), Rational(1, 100)}) {
        ShellScheme s = choose_params(eta);
        c.require(X_closed(s) >= Rational(2, 3) - z * eta, "X floor fails");
        c.require(Y_value(s).value <= Rational(2, 3) + z * eta / 2, "Y cap fails");
        c.require(rational_pow(s.alpha, 3ul * static_cast<unsigned long>(s.t)) <= z * eta / 2,
                  "tail cap fails");
    }
}

// 5. Huang window with +/- 0.02 slack at Q in {1e3, 1e4, 1e5}
void criterion5(Check& c) {
    CurveSpec parabola = builtin_curve("parabola");
    const Rational lo(3002, 10000), hi(8519, 10000), delta(1, 4);
    for (long Q : {1000L, 10000L, 100000L}) {
        const std::uint64_t n = count_exact(parabola, Variant::Tilde, Q, delta, c);
        const Rational r = Rational(static_cast<unsigned long>(n)) / (delta * Q * Q);
        if (!(r >= lo && r <= hi)) {
            std::ostringstream os;
            os << "ratio " << to_fraction_string(r) << " outside window at Q=" << Q;
            c.require(false, os.str());
        }
    }
}

// 6. negative convergence slope toward the asymptotic constants, both variants
void criterion6(Check& c) {
    CurveSpec parabola = builtin_curve("parabola");
    SweepConfig cfg;
    for (long Q : {100L, 316L, 1000L, 3162L, 10000L, 31623L, 100000L})
        cfg.q_grid.push_back(Q);
    for (Variant v : {Variant::Tilde, Variant::Hat}) {
        cfg.variant = v;
        AsymptoticReport rep = sweep(parabola, cfg);
        c.require(rep.trend_defined, "trend undefined");
        c.require(rep.trend_slope < 0, std::string(variant_name(v)) + " slope not negative");
        std::printf("    %s: slope %.3f, final |ratio - target| = %.3e\n", variant_name(v).c_str(),
                    rep.trend_slope, rep.final_deviation);
    }
}

// 7. module invariants: domination, monotonicity, affine invariance, determinism
void criterion7(Check& c) {
    CurveSpec parabola = builtin_curve("parabola");
    CurveSpec circle = builtin_curve("circle");

    for (const CurveSpec* curve : {&parabola, &circle})
        for (int Q : {40, 120}) {
            const std::uint64_t tilde = count_exact(*curve, Variant::Tilde, Q, Rational(1, 4), c);
            const std::uint64_t hat = count_exact(*curve, Variant::Hat, Q, Rational(1, 4), c);
            c.require(tilde <= hat, "Tilde > Hat");
        }

    c.require(count_exact(parabola, Variant::Tilde, 150, Rational(1, 10), c) <=
                  count_exact(parabola, Variant::Tilde, 150, Rational(1, 3), c),
              "delta-monotonicity fails");

    std::uint64_t prev = 0;
    for (int Q : {25, 50, 100, 200}) {
        const std::uint64_t n = count_exact(circle, Variant::Hat, Q, Rational(1, 4), c);
        c.require(n >= prev, "Hat not monotone in Q");
        prev = n;
    }

    // affine invariance: x^2 + m x + n has the sheared point set of x^2
    CountOptions opts;
    opts.collect_points = true;
    CountQuery q;
    q.variant = Variant::Tilde;
    q.Q = 200;
    q.delta = Rational(1, 4);
    const auto base_pts = count(parabola, q, opts).points;
    for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) {
            CurveSpec sheared = parabola;
            sheared.coefficients = {Rational(n), Rational(m), Rational(1)};
            auto pts = count(sheared, q, opts).points;
            std::vector<RationalPoint> mapped;
            mapped.reserve(base_pts.size());
            for (const auto& p : base_pts)
                mapped.push_back({p.a, p.b + m * p.a + n * p.q, p.q});
            std::sort(mapped.begin(), mapped.end());
            std::sort(pts.begin(), pts.end());
            if (mapped != pts) {
                std::ostringstream os;
                os << "affine invariance fails at (m,n)=(" << m << "," << n << ")";
                c.require(false, os.str());
                return;
            }
        }

    // determinism across worker counts
    CountResult ref;
    bool first = true;
    for (int w : {1, 4, 8}) {
        CountOptions wopts;
        wopts.workers = w;
        wopts.collect_points = true;
        CountQuery cq;
        cq.variant = Variant::Tilde;
        cq.Q = 150;
        cq.delta = Rational(1, 4);
        CountResult r = count(circle, cq, wopts);
        if (first) {
            ref = r;
            first = false;
        } else {
            c.require(r.count_lo == ref.count_lo && r.count_hi == ref.count_hi &&
                          r.points == ref.points,
                      "worker counts disagree");
        }
    }
}

// 8. the zeta(3) enclosure and the derived constants
void criterion8(Check& c) {
    const Rational ref(Integer("12020569032"), Integer("10000000000"));
    const Rational nano(1, Integer("1000000000"));
    Enclosure z = zeta3(40);
    c.require(z.width() <= nano, "zeta3(40) width > 1e-9");
    c.require(z.lo() <= ref + nano && z.hi() >= ref - nano, "zeta3(40) misses 1.2020569032");

    const Rational micro(1, 1000000);
    struct {
        NamedConstant name;
        Rational ref;
    } derived[] = {
        {NamedConstant::TwoThirdsOverZeta3, Rational(5546049, 10000000)},
        {NamedConstant::InvZeta3, Rational(8319074, 10000000)},
        {NamedConstant::LowerHuang, Rational(3202013, 10000000)},
    };
    for (const auto& d : derived) {
        Enclosure e = constant(d.name);
        c.require(e.lo() >= d.ref - micro && e.hi() <= d.ref + micro,
                  constant_name(d.name) + " misses its reference value");
    }
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void(Check&)> fn;
    };
    const Criterion criteria[] = {
        {"1 hand-enumerated exact counts", criterion1},
        {"2 oracle equivalence (builtins, Q <= 60)", criterion2},
        {"3 shell-decomposition audits at Q=500", criterion3},
        {"4 algebraic identities and certified parameters", criterion4},
        {"5 Huang window at Q in {1e3, 1e4, 1e5}", criterion5},
        {"6 negative convergence slope, both variants", criterion6},
        {"7 invariants: domination, monotonicity, affinity, determinism", criterion7},
        {"8 zeta(3) enclosure and derived constants", criterion8},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", cr.label, secs,
                    c.ok ? "" : " -- ", c.note.c_str());
        std::fflush(stdout);
        if (!c.ok)
            ++failures;
    }
    return failures == 0 ? 0 : 1;
}
