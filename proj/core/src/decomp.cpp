#include "nearcurve/decomp.hpp"

#include "nearcurve/constants.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace nearcurve {

using json = nlohmann::json;

ShellScheme ShellScheme::make(const Rational& alpha, int t) {
    if (!(alpha > Rational(1, 2)) || !(alpha < 1))
        throw ValidationError("shell scheme requires 1/2 < alpha < 1");
    if (t < 1)
        throw ValidationError("shell scheme requires t >= 1");
    ShellScheme s;
    s.alpha = alpha;
    s.t = t;
    s.scales.reserve(t + 1);
    Rational v = 1;
    for (int i = 0; i <= t; ++i) {
        s.scales.push_back(v);
        v *= alpha;
    }
    return s;
}

Rational X_direct(const ShellScheme& scheme) {
    Rational sum = 0;
    for (int i = 1; i <= scheme.t; ++i) {
        const Rational& prev = scheme.scales[i - 1];
        const Rational& cur = scheme.scales[i];
        sum += prev * prev * cur - cur * cur * cur;
    }
    return sum;
}

Rational X_closed(const ShellScheme& scheme) {
    const Rational& a = scheme.alpha;
    const Rational a3t = rational_pow(a, 3ul * static_cast<unsigned long>(scheme.t));
    const Rational s = 1 + a + a * a;
    return (1 - a3t) * (1 - Rational(1) / s);
}

YResult Y_value(const ShellScheme& scheme) {
    const Rational& a = scheme.alpha;
    YResult y;
    y.value = X_closed(scheme) / a;
    y.bound = (1 + a) / (1 + a + a * a);
    if (y.value > y.bound)
        throw ValidationError("Y(alpha) exceeded its closed-form bound"); // unreachable
    return y;
}

ShellScheme choose_params(const Rational& eta) {
    if (!(eta > 0))
        throw ValidationError("choose_params requires eta > 0");
    const Rational z = zeta3(60).lo(); // certified rational lower bound for zeta(3)
    const Rational x_floor = Rational(2, 3) - z * eta;
    const Rational tail_cap = z * eta / 2;
    const Rational y_cap = Rational(2, 3) + z * eta / 2;

    for (int k = 2; k <= 64; ++k) {
        const Rational alpha = 1 - rational_pow(Rational(1, 2), k);
        const Rational s = 1 + alpha + alpha * alpha;
        if (!((1 + alpha) / s <= y_cap))
            continue;
        const Rational a3 = rational_pow(alpha, 3);
        Rational a3t = a3;
        for (int t = 1; t <= 1 << 20; ++t) {
            if (a3t <= tail_cap) {
                ShellScheme scheme = ShellScheme::make(alpha, t);
                if (X_closed(scheme) >= x_floor && Y_value(scheme).value <= y_cap)
                    return scheme;
            }
            a3t *= a3;
        }
    }
    throw ValidationError("choose_params search exhausted"); // unreachable for eta > 0
}

ProofParams default_proof_params() {
    return ProofParams{Rational(1, 10), Rational(1, 5), Rational(1, 2)};
}

namespace {

std::uint64_t nhat(const CurveSpec& curve, const Rational& Q, const Rational& delta,
                   const CountOptions& opts, const std::string& what) {
    if (Q < 1)
        return 0; // no positive integers q <= Q
    CountQuery q;
    q.variant = Variant::Hat;
    q.Q = Q;
    q.delta = delta;
    CountResult r = count(curve, q, opts);
    if (!r.ambiguous.empty())
        throw AuditFailure("ambiguous points while counting " + what,
                           "(a,q)=(" + std::to_string(r.ambiguous.front().first) + "," +
                               std::to_string(r.ambiguous.front().second) + ")");
    return r.count_lo;
}

std::vector<RationalPoint> shell_points(const CurveSpec& curve, const Rational& Q,
                                        const Rational& delta, const Rational& q_lo,
                                        const Rational& q_hi, const CountOptions& opts) {
    CountQuery q;
    q.variant = Variant::Hat;
    q.Q = Q;
    q.delta = delta;
    q.q_lo = q_lo;
    q.q_hi = q_hi;
    CountOptions o = opts;
    o.collect_points = true;
    CountResult r = count(curve, q, o);
    if (!r.ambiguous.empty())
        throw AuditFailure("ambiguous points in a shell set",
                           "(a,q)=(" + std::to_string(r.ambiguous.front().first) + "," +
                               std::to_string(r.ambiguous.front().second) + ")");
    return r.points;
}

std::string point_str(const RationalPoint& p) {
    std::ostringstream os;
    os << "(a,b,q)=(" << p.a << "," << p.b << "," << p.q << ")";
    return os.str();
}

void preflight(const Rational& Q, const Rational& delta, const ShellScheme& scheme) {
    if (!(Q >= 1))
        throw ValidationError("audit requires Q >= 1");
    for (const Rational& s : scheme.scales)
        if (!(s * delta > 0) || !(s * delta <= Rational(1, 2)))
            throw ValidationError("scaled delta " + to_fraction_string(s * delta) +
                                  " violates 0 < delta <= 1/2");
}

} // namespace

AuditReport audit_lower(const CurveSpec& curve, const Rational& Q, const Rational& delta,
                        const ShellScheme& scheme, const ProofParams& params,
                        const CountOptions& opts) {
    preflight(Q, delta, scheme);
    AuditReport rep;
    rep.side = "lower";
    rep.Q = Q;
    rep.delta = delta;
    rep.alpha = scheme.alpha;
    rep.t = scheme.t;

    CountQuery tq;
    tq.variant = Variant::Tilde;
    tq.Q = Q;
    tq.delta = delta;
    CountOptions copts = opts;
    copts.collect_points = true;
    CountResult tilde = count(curve, tq, copts);
    if (!tilde.ambiguous.empty())
        throw AuditFailure("ambiguous points in the Tilde set",
                           "(a,q)=(" + std::to_string(tilde.ambiguous.front().first) + "," +
                               std::to_string(tilde.ambiguous.front().second) + ")");
    rep.tilde_count = tilde.count_lo;
    std::vector<RationalPoint> tilde_sorted = tilde.points; // already (q, a) ascending
    std::sort(tilde_sorted.begin(), tilde_sorted.end());

    std::vector<RationalPoint> all_shell_points;
    for (int i = 1; i <= scheme.t; ++i) {
        ShellAudit sa;
        sa.shell = i;
        sa.q_lo = scheme.scales[i] * Q;
        sa.q_hi = scheme.scales[i - 1] * Q;
        sa.threshold_delta = scheme.scales[i] * delta;

        auto pts = shell_points(curve, Q, sa.threshold_delta, sa.q_lo, sa.q_hi, opts);
        sa.set_count = pts.size();

        // inclusion: each shell point is a Tilde point for (Q, delta)
        for (const auto& p : pts)
            if (!std::binary_search(tilde_sorted.begin(), tilde_sorted.end(), p))
                throw AuditFailure("shell " + std::to_string(i) +
                                       " point missing from the Tilde set",
                                   point_str(p));
        sa.inclusion_ok = true;

        // telescoping: #S_i = Nhat(a_{i-1}Q, a_i d) - Nhat(a_i Q, a_i d)
        sa.nhat_outer = nhat(curve, sa.q_hi, sa.threshold_delta, opts, "Nhat outer");
        sa.nhat_inner = nhat(curve, sa.q_lo, sa.threshold_delta, opts, "Nhat inner");
        sa.telescoping_ok = (sa.set_count == sa.nhat_outer - sa.nhat_inner);
        if (!sa.telescoping_ok)
            throw AuditFailure("telescoping identity fails in shell " + std::to_string(i),
                               "set=" + std::to_string(sa.set_count) +
                                   " outer=" + std::to_string(sa.nhat_outer) +
                                   " inner=" + std::to_string(sa.nhat_inner));

        sa.hypothesis_ok =
            sa.q_hi < 1 // an empty shell satisfies the hypothesis vacuously
                ? true
                : check_hypothesis(sa.q_hi, sa.threshold_delta,
                                   HypothesisParams{2 * params.tau, params.tau})
                      .ok;
        rep.shell_total += sa.set_count;
        all_shell_points.insert(all_shell_points.end(), pts.begin(), pts.end());
        rep.shells.push_back(std::move(sa));
    }

    // disjointness across shells
    std::sort(all_shell_points.begin(), all_shell_points.end());
    auto dup = std::adjacent_find(all_shell_points.begin(), all_shell_points.end());
    if (dup != all_shell_points.end())
        throw AuditFailure("shell sets are not disjoint", point_str(*dup));
    rep.disjoint_ok = true;

    rep.bound_ok = rep.shell_total <= rep.tilde_count;
    if (!rep.bound_ok)
        throw AuditFailure("lower-bound inequality fails",
                           "sum=" + std::to_string(rep.shell_total) +
                               " tilde=" + std::to_string(rep.tilde_count));
    rep.passed = true;
    return rep;
}

AuditReport audit_upper(const CurveSpec& curve, const Rational& Q, const Rational& delta,
                        const ShellScheme& scheme, const ProofParams& params,
                        const CountOptions& opts) {
    preflight(Q, delta, scheme);
    AuditReport rep;
    rep.side = "upper";
    rep.Q = Q;
    rep.delta = delta;
    rep.alpha = scheme.alpha;
    rep.t = scheme.t;

    CountQuery tq;
    tq.variant = Variant::Tilde;
    tq.Q = Q;
    tq.delta = delta;
    CountOptions copts = opts;
    copts.collect_points = true;
    CountResult tilde = count(curve, tq, copts);
    if (!tilde.ambiguous.empty())
        throw AuditFailure("ambiguous points in the Tilde set",
                           "(a,q)=(" + std::to_string(tilde.ambiguous.front().first) + "," +
                               std::to_string(tilde.ambiguous.front().second) + ")");
    rep.tilde_count = tilde.count_lo;

    std::vector<RationalPoint> covered;
    for (int i = 1; i <= scheme.t; ++i) {
        ShellAudit sa;
        sa.shell = i;
        sa.q_lo = scheme.scales[i] * Q;
        sa.q_hi = scheme.scales[i - 1] * Q;
        sa.threshold_delta = scheme.scales[i - 1] * delta;

        auto pts = shell_points(curve, Q, sa.threshold_delta, sa.q_lo, sa.q_hi, opts);
        sa.set_count = pts.size();
        sa.nhat_outer = nhat(curve, sa.q_hi, sa.threshold_delta, opts, "Nhat outer");
        sa.nhat_inner = nhat(curve, sa.q_lo, sa.threshold_delta, opts, "Nhat inner");
        sa.telescoping_ok = (sa.set_count == sa.nhat_outer - sa.nhat_inner);
        if (!sa.telescoping_ok)
            throw AuditFailure("telescoping identity fails in shell " + std::to_string(i),
                               "set=" + std::to_string(sa.set_count) +
                                   " outer=" + std::to_string(sa.nhat_outer) +
                                   " inner=" + std::to_string(sa.nhat_inner));
        sa.inclusion_ok = true; // coverage checked globally below
        sa.hypothesis_ok =
            sa.q_hi < 1 // an empty shell satisfies the hypothesis vacuously
                ? true
                : check_hypothesis(sa.q_hi, sa.threshold_delta,
                                   HypothesisParams{2 * params.tau, params.tau})
                      .ok;
        rep.shell_total += sa.set_count;
        covered.insert(covered.end(), pts.begin(), pts.end());
        rep.shells.push_back(std::move(sa));
    }
    std::sort(covered.begin(), covered.end());

    // every Tilde point with q > alpha_t Q lies in some upper shell set
    const Rational inner_cut = scheme.scales[scheme.t] * Q;
    for (const auto& p : tilde.points) {
        if (!(Rational(p.q) > inner_cut))
            continue;
        if (!std::binary_search(covered.begin(), covered.end(), p))
            throw AuditFailure("Tilde point not covered by the upper shells", point_str(p));
    }

    // residual term: N~(alpha_t Q, alpha_t delta), counted directly
    if (inner_cut >= 1) {
        CountQuery res;
        res.variant = Variant::Tilde;
        res.Q = inner_cut;
        res.delta = scheme.scales[scheme.t] * delta;
        CountResult rc = count(curve, res, opts);
        if (!rc.ambiguous.empty())
            throw AuditFailure("ambiguous points in the residual count",
                               "(a,q)=(" + std::to_string(rc.ambiguous.front().first) + "," +
                                   std::to_string(rc.ambiguous.front().second) + ")");
        rep.residual_count = rc.count_lo;
    }

    rep.bound_ok = rep.tilde_count <= rep.residual_count + rep.shell_total;
    if (!rep.bound_ok)
        throw AuditFailure("upper-bound inequality fails",
                           "tilde=" + std::to_string(rep.tilde_count) +
                               " residual=" + std::to_string(rep.residual_count) +
                               " sum=" + std::to_string(rep.shell_total));
    rep.passed = true;
    return rep;
}

std::string AuditReport::to_json() const {
    json shells_json = json::array();
    for (const auto& s : shells) {
        shells_json.push_back({
            {"shell", s.shell},
            {"q_lo", to_fraction_string(s.q_lo)},
            {"q_hi", to_fraction_string(s.q_hi)},
            {"threshold_delta", to_fraction_string(s.threshold_delta)},
            {"set_count", s.set_count},
            {"nhat_outer", s.nhat_outer},
            {"nhat_inner", s.nhat_inner},
            {"telescoping_ok", s.telescoping_ok},
            {"inclusion_ok", s.inclusion_ok},
            {"hypothesis_ok", s.hypothesis_ok},
        });
    }
    json j{
        {"side", side},
        {"Q", to_fraction_string(Q)},
        {"delta", to_fraction_string(delta)},
        {"alpha", to_fraction_string(alpha)},
        {"t", t},
        {"shells", shells_json},
        {"tilde_count", tilde_count},
        {"shell_total", shell_total},
        {"residual_count", residual_count},
        {"disjoint_ok", disjoint_ok},
        {"bound_ok", bound_ok},
        {"passed", passed},
        {"witnesses", witnesses},
    };
    return j.dump(2);
}

} // namespace nearcurve
