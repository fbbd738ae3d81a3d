// Command-line front end: exact near-curve rational point counting, asymptotic
// sweeps, shell-decomposition audits, curve validation, and the named constants.

#include "nearcurve/constants.hpp"
#include "nearcurve/counter.hpp"
#include "nearcurve/curve.hpp"
#include "nearcurve/decomp.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/harness.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace nearcurve;
using json = nlohmann::json;

namespace {

CurveSpec resolve_curve(const std::string& spec, const std::string& interval,
                        const std::string& mode) {
    CurveSpec curve;
    if (spec == "parabola" || spec == "circle" || spec == "exp" || spec == "log") {
        curve = builtin_curve(spec);
    } else {
        std::ifstream in(spec);
        if (!in)
            throw UsageError("cannot open curve file '" + spec + "'");
        curve = load_curve_json(in);
    }
    if (!interval.empty()) {
        const auto colon = interval.find(':');
        if (colon == std::string::npos)
            throw UsageError("--interval expects rho:xi, e.g. 0/1:1/1");
        curve.interval.rho = parse_rational(interval.substr(0, colon));
        curve.interval.xi = parse_rational(interval.substr(colon + 1));
    }
    if (!mode.empty()) {
        if (mode == "exact")
            curve.eval_mode = EvalMode::ExactRational;
        else if (mode == "enclosure")
            curve.eval_mode = EvalMode::Enclosure;
        else
            throw UsageError("--mode expects exact or enclosure");
    }
    check_spec(curve);
    return curve;
}

std::vector<Rational> parse_grid(const std::string& csv) {
    std::vector<Rational> grid;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        grid.push_back(parse_rational(item));
    if (grid.empty())
        throw UsageError("--q-grid is empty");
    return grid;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty())
        return std::cout;
    file.open(path);
    if (!file)
        throw UsageError("cannot open output file '" + path + "'");
    return file;
}

void fail_json(const std::string& kind, const std::string& what,
               const std::vector<std::string>& details = {}) {
    json j{{"error", kind}, {"message", what}};
    if (!details.empty())
        j["details"] = details;
    std::cerr << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counting of rational points near planar curves"};
    app.require_subcommand(1);

    std::string curve_arg = "parabola", interval_arg, mode_arg;
    std::string Q_arg, delta_arg = "1/4", variant_arg = "tilde";
    std::string q_lo_arg, q_hi_arg, emit_path, out_path, format_arg = "csv";
    std::string grid_arg, delta_rule_arg = "fixed:1/4", epsilon_arg = "1/2",
                slack_arg = "1/50";
    std::string alpha_arg = "9/10", side_arg = "both", eta_arg;
    int workers = 0, precision_cap = 256, precision = 40, grid_size = 100, t_arg = 5;

    auto add_curve_flags = [&](CLI::App* cmd) {
        cmd->add_option("--curve", curve_arg, "builtin name (parabola, circle, exp, log) or JSON file");
        cmd->add_option("--interval", interval_arg, "override interval, rho:xi as rationals");
        cmd->add_option("--mode", mode_arg, "override eval mode: exact | enclosure");
        cmd->add_option("--workers", workers, "worker thread cap (env NEAR_CURVE_WORKERS)");
        cmd->add_option("--precision-cap", precision_cap, "enclosure precision ladder cap (bits)");
    };

    auto* c_count = app.add_subcommand("count", "count rational points near a curve");
    add_curve_flags(c_count);
    c_count->add_option("--Q", Q_arg, "threshold scale Q (rational)")->required();
    c_count->add_option("--delta", delta_arg, "delta (rational, 0 < delta <= 1/2)");
    c_count->add_option("--variant", variant_arg, "tilde | hat");
    c_count->add_option("--q-lo", q_lo_arg, "exclusive lower q cutoff (rational)");
    c_count->add_option("--q-hi", q_hi_arg, "inclusive upper q cutoff (rational)");
    c_count->add_option("--emit", emit_path, "write the point list as CSV");

    auto* c_sweep = app.add_subcommand("sweep", "normalized-ratio sweep over a Q grid");
    add_curve_flags(c_sweep);
    c_sweep->add_option("--q-grid", grid_arg, "comma-separated rational Q values")->required();
    c_sweep->add_option("--delta", delta_rule_arg, "fixed:<rational> or power");
    c_sweep->add_option("--epsilon", epsilon_arg, "hypothesis epsilon (rational in (0,1))");
    c_sweep->add_option("--variant", variant_arg, "tilde | hat");
    c_sweep->add_option("--slack", slack_arg, "window slack (rational)");
    c_sweep->add_option("--format", format_arg, "csv | json | svg");
    c_sweep->add_option("--out", out_path, "output file (default stdout)");

    auto* c_audit = app.add_subcommand("audit", "audit the shell-decomposition inequalities");
    add_curve_flags(c_audit);
    c_audit->add_option("--Q", Q_arg, "Q (rational)")->required();
    c_audit->add_option("--delta", delta_arg, "delta (rational)");
    c_audit->add_option("--alpha", alpha_arg, "shell ratio alpha (rational in (1/2,1))");
    c_audit->add_option("--t", t_arg, "number of shells");
    c_audit->add_option("--eta", eta_arg, "derive (alpha, t) from eta instead");
    c_audit->add_option("--side", side_arg, "lower | upper | both");
    c_audit->add_option("--out", out_path, "output file (default stdout)");

    auto* c_const = app.add_subcommand("constants", "print the named constants");
    c_const->add_option("--precision", precision, "precision_bits for the enclosures");

    auto* c_validate = app.add_subcommand("validate", "check declared curvature bounds");
    add_curve_flags(c_validate);
    c_validate->add_option("--grid", grid_size, "number of interior grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*c_count) {
            CurveSpec curve = resolve_curve(curve_arg, interval_arg, mode_arg);
            CountQuery query;
            query.variant = variant_from_name(variant_arg);
            query.Q = parse_rational(Q_arg);
            query.delta = parse_rational(delta_arg);
            if (!q_lo_arg.empty())
                query.q_lo = parse_rational(q_lo_arg);
            if (!q_hi_arg.empty())
                query.q_hi = parse_rational(q_hi_arg);
            CountOptions opts;
            opts.workers = workers;
            opts.precision_cap = precision_cap;
            opts.collect_points = !emit_path.empty();
            CountResult r = count(curve, query, opts);
            if (!emit_path.empty()) {
                std::ofstream out(emit_path);
                if (!out)
                    throw UsageError("cannot open '" + emit_path + "'");
                write_points_csv(out, r.points, query.variant);
            }
            if (r.ambiguous.empty()) {
                std::cout << r.count_lo << "\n";
            } else {
                std::cout << r.count_lo << " " << r.count_hi << " (" << r.ambiguous.size()
                          << " ambiguous at precision cap " << precision_cap << ")\n";
            }
            return 0;
        }
        if (*c_sweep) {
            CurveSpec curve = resolve_curve(curve_arg, interval_arg, mode_arg);
            SweepConfig config;
            config.q_grid = parse_grid(grid_arg);
            if (delta_rule_arg.rfind("fixed:", 0) == 0) {
                config.rule = DeltaRule::Fixed;
                config.fixed_delta = parse_rational(delta_rule_arg.substr(6));
            } else if (delta_rule_arg == "power") {
                config.rule = DeltaRule::Power;
            } else {
                throw UsageError("--delta expects fixed:<rational> or power");
            }
            config.epsilon = parse_rational(epsilon_arg);
            config.variant = variant_from_name(variant_arg);
            config.slack = parse_rational(slack_arg);
            config.opts.workers = workers;
            config.opts.precision_cap = precision_cap;
            AsymptoticReport rep = sweep(curve, config);
            Format fmt;
            if (format_arg == "csv")
                fmt = Format::Csv;
            else if (format_arg == "json")
                fmt = Format::Json;
            else if (format_arg == "svg")
                fmt = Format::Svg;
            else
                throw UnsupportedFormat("--format expects csv, json, or svg");
            std::ofstream file;
            emit(rep, fmt, open_out(file, out_path));
            return 0;
        }
        if (*c_audit) {
            CurveSpec curve = resolve_curve(curve_arg, interval_arg, mode_arg);
            const Rational Q = parse_rational(Q_arg);
            const Rational delta = parse_rational(delta_arg);
            ShellScheme scheme = eta_arg.empty()
                                     ? ShellScheme::make(parse_rational(alpha_arg), t_arg)
                                     : choose_params(parse_rational(eta_arg));
            CountOptions opts;
            opts.workers = workers;
            opts.precision_cap = precision_cap;
            std::ofstream file;
            std::ostream& out = open_out(file, out_path);
            const ProofParams params = default_proof_params();
            if (side_arg == "lower" || side_arg == "both")
                out << audit_lower(curve, Q, delta, scheme, params, opts).to_json() << "\n";
            if (side_arg == "upper" || side_arg == "both")
                out << audit_upper(curve, Q, delta, scheme, params, opts).to_json() << "\n";
            if (side_arg != "lower" && side_arg != "upper" && side_arg != "both")
                throw UsageError("--side expects lower, upper, or both");
            return 0;
        }
        if (*c_const) {
            const NamedConstant names[] = {
                NamedConstant::Zeta3, NamedConstant::TwoThirdsOverZeta3,
                NamedConstant::InvZeta3, NamedConstant::LowerHuang};
            for (NamedConstant n : names) {
                Enclosure e = constant(n, precision);
                std::cout << constant_name(n) << " = " << e.to_string(15)
                          << " width <= " << to_double(e.width()) << "\n";
            }
            return 0;
        }
        if (*c_validate) {
            CurveSpec curve = resolve_curve(curve_arg, interval_arg, mode_arg);
            ValidationReport rep = validate_curve(curve, grid_size);
            std::cout << "min |f''| = " << rep.min_abs_f2 << "\n"
                      << "max |f''| = " << rep.max_abs_f2 << "\n"
                      << "Lipschitz estimate = " << rep.lipschitz_estimate << "\n"
                      << (rep.passed ? "PASS" : "FAIL") << "\n";
            if (!rep.passed) {
                fail_json("ValidationError", "declared bounds violated", rep.violations);
                return 1;
            }
            return 0;
        }
    } catch (const UsageError& e) {
        fail_json("UsageError", e.what());
        return 2;
    } catch (const HypothesisViolation& e) {
        fail_json("HypothesisViolation", e.what(), e.rows);
        return 1;
    } catch (const AuditFailure& e) {
        fail_json("AuditFailure", e.what(), {e.witness});
        return 1;
    } catch (const ValidationError& e) {
        fail_json("ValidationError", e.what(), e.violations);
        return 1;
    } catch (const DomainError& e) {
        fail_json("DomainError", e.what());
        return 1;
    } catch (const UnsupportedFormat& e) {
        fail_json("UnsupportedFormat", e.what());
        return 2;
    }
    return 2;
}
