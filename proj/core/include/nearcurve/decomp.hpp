#ifndef NEARCURVE_DECOMP_HPP
#define NEARCURVE_DECOMP_HPP

#include "nearcurve/counter.hpp"
#include "nearcurve/curve.hpp"
#include "nearcurve/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nearcurve {

/// Geometric scales alpha_i = alpha^i for 0 <= i <= t, with 1/2 < alpha < 1.
struct ShellScheme {
    Rational alpha;
    int t = 0;
    std::vector<Rational> scales; // scales[i] = alpha^i, exact

    static ShellScheme make(const Rational& alpha, int t);
};

struct ProofParams {
    Rational eta;     // > 0
    Rational tau;     // 0 < tau < epsilon/2
    Rational epsilon; // in (0, 1)
};

/// X(alpha) = sum_{i<=t} (alpha_{i-1}^2 alpha_i - alpha_i^3), exact.
Rational X_direct(const ShellScheme& scheme);

/// Closed form (1 - alpha^{3t})(1 - (1 + alpha + alpha^2)^{-1}); equals
/// X_direct identically.
Rational X_closed(const ShellScheme& scheme);

struct YResult {
    Rational value; // alpha^{-1} X(alpha)
    Rational bound; // (1 + alpha)/(1 + alpha + alpha^2), value <= bound
};
YResult Y_value(const ShellScheme& scheme);

/// Picks (alpha, t) certifying, in exact rational arithmetic against a
/// certified rational lower bound z for zeta(3):
///   X(alpha) >= 2/3 - z*eta,  Y(alpha) <= 2/3 + z*eta/2,  alpha^{3t} <= z*eta/2.
/// alpha is searched over 1 - 2^-k (smallest k whose Y-bound passes), then
/// the smallest t passing the remaining two conditions.
ShellScheme choose_params(const Rational& eta);

struct ShellAudit {
    int shell = 0; // i, 1-based
    Rational q_lo, q_hi, threshold_delta;
    std::uint64_t set_count = 0;
    std::uint64_t nhat_outer = 0, nhat_inner = 0;
    bool telescoping_ok = false;
    bool inclusion_ok = false;
    bool hypothesis_ok = true; // (hyp) with 2*tau in place of epsilon, reported only
};

struct AuditReport {
    std::string side; // "lower" or "upper"
    Rational Q, delta, alpha;
    int t = 0;
    std::vector<ShellAudit> shells;
    std::uint64_t tilde_count = 0;    // N~(Q, delta)
    std::uint64_t shell_total = 0;    // sum of set counts
    std::uint64_t residual_count = 0; // upper audit: N~(alpha_t Q, alpha_t delta)
    bool disjoint_ok = true;          // lower audit
    bool bound_ok = false;            // lower: sum <= N~; upper: N~ <= residual + sum
    bool passed = false;
    std::vector<std::string> witnesses;

    std::string to_json() const;
};

/// Audits the lower-bound shell sum: disjointness of the shell sets, their
/// inclusion in the Tilde point set, the telescoping identity per shell, and
/// the resulting inequality.  Throws AuditFailure on the first violated
/// inclusion or identity.
AuditReport audit_lower(const CurveSpec& curve, const Rational& Q, const Rational& delta,
                        const ShellScheme& scheme, const ProofParams& params,
                        const CountOptions& opts = {});

/// Audits the upper-bound shell sum: coverage of the Tilde points with
/// q > alpha_t Q by the shells, the telescoping identity per shell, and the
/// residual inequality.
AuditReport audit_upper(const CurveSpec& curve, const Rational& Q, const Rational& delta,
                        const ShellScheme& scheme, const ProofParams& params,
                        const CountOptions& opts = {});

/// Default proof parameters for audits: epsilon = 1/2, tau = 1/5, eta = 1/10.
ProofParams default_proof_params();

} // namespace nearcurve

#endif
