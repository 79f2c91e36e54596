#pragma once

// CSV and JSON serialization of command results. CSV: comma separated,
// %.17g floats, LF endings, header always present.

#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdem/config.hpp"
#include "pdem/massprofiles.hpp"
#include "pdem/pct.hpp"
#include "pdem/published_forms.hpp"
#include "pdem/refmodels.hpp"
#include "pdem/verify.hpp"

namespace pdem {

using nlohmann::json;

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

/// Row-major sample table with a fixed header.
struct SampleTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& os, const SampleTable& t) {
    write_csv_row(os, t.columns);
    std::vector<std::string> cells;
    for (const auto& r : t.rows) {
        cells.clear();
        for (double x : r) cells.push_back(format_double(x));
        write_csv_row(os, cells);
    }
}

inline json to_json_columns(const SampleTable& t) {
    json j = json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        json col = json::array();
        for (const auto& r : t.rows) col.push_back(r[c]);
        j[t.columns[c]] = std::move(col);
    }
    return j;
}

/// Samples at points equally spaced in the mapped coordinate, strictly inside
/// the mapping range. U_target is NaN where the mass vanishes.
inline SampleTable target_samples(const TargetSystem& ts, int levels, int count,
                                  const QuadratureSettings& quad = {}) {
    const MassProfile& p = ts.profile();
    const Interval r = map_range(p);
    std::vector<TransportedState> states;
    for (int k = 0; k < levels; ++k) states.emplace_back(ts, k, quad);

    SampleTable t;
    t.columns = {"z", "m", "f", "U_target"};
    for (int k = 0; k < levels; ++k) t.columns.push_back("psi_" + std::to_string(k));
    for (int i = 0; i < count; ++i) {
        const double z = map_inverse(p, r.lo + r.length() * (i + 1) / (count + 1));
        const double m = mass_value(p, z);
        std::vector<double> row{z, m, map_forward(p, z)};
        try {
            row.push_back(target_potential(ts, z));
        } catch (const SingularError&) {
            row.push_back(std::numeric_limits<double>::quiet_NaN());
        }
        for (const auto& s : states) row.push_back(s(z));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline json to_json(const MassParameters& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}};
}

inline json to_json(const ReferenceModel& r) {
    json j{{"kind", to_string(r.kind())}, {"scale", r.scale()}};
    if (r.kind() == ReferenceKind::PTP) {
        j["chi"] = r.chi();
        j["lambda"] = r.lambda();
    } else {
        j["mu"] = r.mu();
    }
    return j;
}

inline json to_json(const TargetSystem& ts) {
    const Interval r = map_range(ts.profile());
    return {{"mass_kind", to_string(ts.profile().kind())},
            {"mass", to_json(ts.profile().params())},
            {"shift", ts.profile().shift()},
            {"map_range", {r.lo, r.hi}},
            {"reference", to_json(ts.reference())},
            {"mode", ts.mode() == Mode::strict ? "strict" : "scaled"},
            {"correction_coefficient", correction_coefficient(ts.convention())}};
}

inline json to_json(const SpectrumTable& t) {
    json rows = json::array();
    for (const auto& l : t.levels)
        rows.push_back({{"k", l.k}, {"energy", l.energy}, {"parity", to_string(l.parity)}});
    return {{"levels", rows}};
}

inline void write_csv(std::ostream& os, const SpectrumTable& t) {
    write_csv_row(os, {"k", "energy", "parity"});
    for (const auto& l : t.levels)
        write_csv_row(os, {std::to_string(l.k), format_double(l.energy), to_string(l.parity)});
}

inline json to_json(const LevelRow& r) {
    return {{"k", r.k},          {"e_analytic", r.e_analytic}, {"e_numeric", r.e_numeric},
            {"abs_err", r.abs_err}, {"rel_err", r.rel_err},   {"e_coarse", r.e_coarse},
            {"e_fine", r.e_fine}};
}

inline json to_json(const ConvergenceMeta& m) {
    return {{"n_coarse", m.n_coarse}, {"n_fine", m.n_fine},       {"z_lo", m.z_lo},
            {"z_hi", m.z_hi},         {"eps_map", m.eps_map},     {"scheme", m.scheme},
            {"richardson", m.richardson}, {"guard_shift", m.guard_shift}};
}

inline json to_json(const VerificationReport& r) {
    json rows = json::array();
    for (const auto& x : r.rows) rows.push_back(to_json(x));
    return {{"rows", rows},
            {"residual_norms", r.residual_norms},
            {"gram_defect", r.gram_defect},
            {"norm_defects", r.norm_defects},
            {"node_counts", r.node_counts},
            {"node_counts_numeric", r.node_counts_numeric},
            {"convergence", to_json(r.convergence)},
            {"isospectral_tolerance", r.isospectral_tolerance},
            {"residual_tolerance", r.residual_tolerance},
            {"gram_tolerance", r.gram_tolerance},
            {"norm_tolerance", r.norm_tolerance},
            {"states_checked", r.states_checked},
            {"passed", r.passed()}};
}

inline void write_csv(std::ostream& os, const VerificationReport& r) {
    write_csv_row(os, {"k", "e_analytic", "e_numeric", "abs_err", "rel_err", "e_coarse", "e_fine",
                       "residual", "norm_defect", "nodes", "nodes_numeric"});
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const LevelRow& x = r.rows[i];
        const bool st = i < r.residual_norms.size();
        write_csv_row(os, {std::to_string(x.k), format_double(x.e_analytic),
                           format_double(x.e_numeric), format_double(x.abs_err),
                           format_double(x.rel_err), format_double(x.e_coarse),
                           format_double(x.e_fine),
                           st ? format_double(r.residual_norms[i]) : "",
                           st ? format_double(r.norm_defects[i]) : "",
                           st ? std::to_string(r.node_counts[i]) : "",
                           st ? std::to_string(r.node_counts_numeric[i]) : ""});
    }
}

inline json to_json(const DeviationReport& r) {
    json rows = json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"z", x.z}, {"engine", x.engine}, {"printed", x.printed},
                        {"deviation", x.deviation}});
    return {{"tag", r.tag}, {"max_abs", r.max_abs}, {"mean_abs", r.mean_abs},
            {"skipped", r.skipped}, {"rows", rows}};
}

inline void write_csv(std::ostream& os, const DeviationReport& r) {
    write_csv_row(os, {"z", "engine", "printed", "deviation"});
    for (const auto& x : r.rows)
        write_csv_row(os, {format_double(x.z), format_double(x.engine), format_double(x.printed),
                           format_double(x.deviation)});
}

inline json to_json(const std::vector<Violation>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back({{"relation", x.relation}, {"value", x.value}});
    return a;
}

inline void write_csv(std::ostream& os, const std::vector<Violation>& v) {
    write_csv_row(os, {"relation", "value"});
    for (const auto& x : v) write_csv_row(os, {x.relation, format_double(x.value)});
}

}  // namespace pdem
