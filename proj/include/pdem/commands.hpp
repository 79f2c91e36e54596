#pragma once

// Command implementations behind the pdemkit CLI. Each returns the process
// exit status: 0 ok, 1 invalid input, 2 tolerance exceeded, 3 numeric failure.
// Reports go to `out` in the configured format; human-readable notes go to `err`.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "pdem/config.hpp"
#include "pdem/errors.hpp"
#include "pdem/massprofiles.hpp"
#include "pdem/pct.hpp"
#include "pdem/published_forms.hpp"
#include "pdem/report.hpp"
#include "pdem/verify.hpp"

namespace pdem {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_tolerance = 2, exit_numeric = 3 };

struct CommandContext {
    std::ostream& out;
    std::ostream& err;
    CorrectionConvention convention = CorrectionConvention::quarter;
};

/// Maps library exceptions onto exit codes.
inline int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}

/// Parameter checks, the strict relation and the range match. Returns every
/// violation found.
inline std::vector<Violation> config_violations(const RunConfig& c) {
    std::vector<Violation> v = validate(c.mass, c.mass_kind);
    if (!v.empty() || c.mode != Mode::strict) return v;
    const ConstraintSpec cs = strict_constraint(c.mass_kind, c.reference_kind);
    if (!cs.satisfied(c.mass)) {
        v.push_back({cs.parameter_relation, cs.constrained_value(c.mass)});
        return v;
    }
    try {
        (void)build_target(c);
    } catch (const Error& e) {
        v.push_back({std::string("mapping range equals reference domain: ") + e.what(), 0.0});
    }
    return v;
}

inline int cmd_validate(const RunConfig& c, CommandContext& ctx) {
    return run_guarded(ctx.err, [&] {
        const std::vector<Violation> v = config_violations(c);
        for (const auto& x : v)
            ctx.err << "violation: " << x.relation << " (value " << format_double(x.value) << ")\n";
        if (c.format == OutputFormat::json)
            ctx.out << json{{"valid", v.empty()}, {"violations", to_json(v)}}.dump(2) << '\n';
        else
            write_csv(ctx.out, v);
        if (v.empty()) ctx.err << "ok: " << to_string(c.mass_kind) << " + " << to_string(c.reference_kind)
                               << " (" << (c.mode == Mode::strict ? "strict" : "scaled") << ")\n";
        return v.empty() ? exit_ok : exit_invalid;
    });
}

inline int cmd_spectrum(const RunConfig& c, CommandContext& ctx) {
    return run_guarded(ctx.err, [&] {
        const TargetSystem ts = build_target(c, ctx.convention);
        const SpectrumTable t = ref_spectrum_table(ts.reference(), c.levels);
        if (c.format == OutputFormat::json)
            ctx.out << to_json(t).dump(2) << '\n';
        else
            write_csv(ctx.out, t);
        return exit_ok;
    });
}

inline int cmd_build_target(const RunConfig& c, CommandContext& ctx) {
    return run_guarded(ctx.err, [&] {
        const TargetSystem ts = build_target(c, ctx.convention);
        const SampleTable t = target_samples(ts, c.levels, c.samples);
        if (c.format == OutputFormat::json) {
            json j = to_json(ts);
            json e = json::array();
            for (int k = 0; k < c.levels; ++k) e.push_back(target_energy(ts, k));
            j["energies"] = e;
            j["samples"] = to_json_columns(t);
            ctx.out << j.dump(2) << '\n';
        } else {
            write_csv(ctx.out, t);
        }
        return exit_ok;
    });
}

inline int cmd_verify(const RunConfig& c, CommandContext& ctx) {
    return run_guarded(ctx.err, [&] {
        const TargetSystem ts = build_target(c, ctx.convention);
        const VerificationReport r = verify_target(ts, c.verify_settings());
        if (c.format == OutputFormat::json)
            ctx.out << to_json(r).dump(2) << '\n';
        else
            write_csv(ctx.out, r);

        const ConvergenceMeta& m = r.convergence;
        ctx.err << "grid: N=" << m.n_coarse << "/" << m.n_fine << " on [" << format_double(m.z_lo)
                << ", " << format_double(m.z_hi) << "], scheme " << m.scheme << "\n";
        ctx.err << "energies: max rel err " << format_double(r.max_rel_err()) << " (tol "
                << format_double(r.isospectral_tolerance) << ") "
                << (r.energies_ok() ? "ok" : "FAIL") << "\n";
        ctx.err << "truncation guard: " << format_double(m.guard_shift) << " "
                << (r.guard_ok() ? "ok" : "FAIL") << "\n";
        if (r.states_checked) {
            ctx.err << "states: residual " << (r.residual_ok() ? "ok" : "FAIL") << ", gram "
                    << format_double(r.gram_defect) << " " << (r.gram_ok() ? "ok" : "FAIL")
                    << ", norm " << (r.norm_ok() ? "ok" : "FAIL") << ", nodes "
                    << (r.nodes_ok() ? "ok" : "FAIL") << "\n";
        }
        return r.passed() ? exit_ok : exit_tolerance;
    });
}

inline int cmd_compare_paper(const RunConfig& c, const std::string& tag, CommandContext& ctx) {
    return run_guarded(ctx.err, [&] {
        const auto eq = parse_paper_equation(tag);
        if (!eq) throw DomainError("unknown equation tag '" + tag + "'");
        const TargetSystem ts = build_target(c, ctx.convention);
        const std::vector<double> grid = default_comparison_grid(ts.profile().kind());
        const DeviationReport r = compare_paper_form(ts, *eq, grid);
        if (c.format == OutputFormat::json)
            ctx.out << to_json(r).dump(2) << '\n';
        else
            write_csv(ctx.out, r);
        ctx.err << r.tag << ": max |engine - printed| " << format_double(r.max_abs) << ", mean "
                << format_double(r.mean_abs) << " over " << r.rows.size() << " points ("
                << r.skipped << " skipped)\n";
        return exit_ok;
    });
}

}  // namespace pdem
