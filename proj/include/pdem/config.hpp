#pragma once

// Run configuration: flat `dotted.key = value` lines, `#` starts a comment.
//
//   mass.kind = I            # I | II | III
//   mass.alpha = 1
//   reference.kind = STP     # STP | SCP | PTP
//   reference.mu = 2
//   grid.N = auto
//
// Unknown and repeated keys are errors.

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "pdem/errors.hpp"
#include "pdem/massprofiles.hpp"
#include "pdem/pct.hpp"
#include "pdem/refmodels.hpp"
#include "pdem/verify.hpp"

namespace pdem {

enum class OutputFormat { csv, json };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

struct RunConfig {
    MassKind mass_kind = MassKind::I;
    MassParameters mass;
    ReferenceKind reference_kind = ReferenceKind::STP;
    double mu = 0.0;
    double chi = 0.0;
    double lambda = 0.0;
    Mode mode = Mode::strict;
    int levels = 4;
    int n = 0;  ///< 0 means auto
    double eps_map = 1e-3;
    std::optional<double> isospectral_rel;  ///< default depends on the mass kind
    double residual = 1e-4;
    double gram = 1e-6;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  ///< empty: stdout
    int samples = 200;        ///< build-target rows

    /// 1e-5 for kind I; 5e-3 for the singular kinds, whose spectra converge slowly.
    [[nodiscard]] double isospectral_tolerance() const {
        if (isospectral_rel) return *isospectral_rel;
        return mass_kind == MassKind::I ? 1e-5 : 5e-3;
    }

    [[nodiscard]] ReferenceModel reference() const {
        if (reference_kind == ReferenceKind::PTP) return ReferenceModel::ptp(chi, lambda);
        if (reference_kind == ReferenceKind::SCP) return ReferenceModel::scp(mu);
        return ReferenceModel::stp(mu);
    }

    [[nodiscard]] VerifySettings verify_settings() const {
        VerifySettings s;
        s.levels = levels;
        s.n = n;
        s.eps_map = eps_map;
        s.isospectral_rel = isospectral_tolerance();
        s.residual = residual;
        s.gram = gram;
        return s;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ConfigError(std::string(key) + ": not a finite number: '" + std::string(v) + "'");
    return x;
}

inline int parse_int(std::string_view key, std::string_view v) {
    int x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(std::string(key) + ": not an integer: '" + std::string(v) + "'");
    return x;
}

}  // namespace detail

inline MassKind parse_mass_kind(std::string_view v) {
    if (v == "I") return MassKind::I;
    if (v == "II") return MassKind::II;
    if (v == "III") return MassKind::III;
    throw ConfigError("mass.kind: expected I, II or III, got '" + std::string(v) + "'");
}

inline ReferenceKind parse_reference_kind(std::string_view v) {
    if (v == "STP") return ReferenceKind::STP;
    if (v == "SCP") return ReferenceKind::SCP;
    if (v == "PTP") return ReferenceKind::PTP;
    throw ConfigError("reference.kind: expected STP, SCP or PTP, got '" + std::string(v) + "'");
}

inline OutputFormat parse_format(std::string_view v) {
    if (v == "csv") return OutputFormat::csv;
    if (v == "json") return OutputFormat::json;
    throw ConfigError("output.format: expected csv or json, got '" + std::string(v) + "'");
}

inline RunConfig parse_config(std::istream& in) {
    std::map<std::string, std::string, std::less<>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(detail::trim(s.substr(0, eq)));
        const std::string value(detail::trim(s.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    RunConfig c;
    auto take = [&](std::string_view key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto need = [&](std::string_view key) {
        auto v = take(key);
        if (!v) throw ConfigError("missing key '" + std::string(key) + "'");
        return *v;
    };
    auto number = [&](std::string_view key) { return detail::parse_double(key, need(key)); };

    c.mass_kind = parse_mass_kind(need("mass.kind"));
    c.mass.alpha = number("mass.alpha");
    c.mass.beta = number("mass.beta");
    c.mass.gamma = number("mass.gamma");
    if (c.mass_kind == MassKind::I) c.mass.delta = number("mass.delta");

    c.reference_kind = parse_reference_kind(need("reference.kind"));
    if (c.reference_kind == ReferenceKind::PTP) {
        c.chi = number("reference.chi");
        c.lambda = number("reference.lambda");
    } else {
        c.mu = number("reference.mu");
    }

    if (auto v = take("mode")) {
        if (*v == "strict") c.mode = Mode::strict;
        else if (*v == "scaled") c.mode = Mode::scaled;
        else throw ConfigError("mode: expected strict or scaled, got '" + *v + "'");
    }
    if (auto v = take("levels")) c.levels = detail::parse_int("levels", *v);
    if (auto v = take("grid.N"); v && *v != "auto") c.n = detail::parse_int("grid.N", *v);
    if (auto v = take("grid.eps_map")) c.eps_map = detail::parse_double("grid.eps_map", *v);
    if (auto v = take("tolerances.isospectral_rel"))
        c.isospectral_rel = detail::parse_double("tolerances.isospectral_rel", *v);
    if (auto v = take("tolerances.residual")) c.residual = detail::parse_double("tolerances.residual", *v);
    if (auto v = take("tolerances.gram")) c.gram = detail::parse_double("tolerances.gram", *v);
    if (auto v = take("output.format")) c.format = parse_format(*v);
    if (auto v = take("output.path")) c.output_path = *v;
    if (auto v = take("output.samples")) c.samples = detail::parse_int("output.samples", *v);

    if (!kv.empty()) {
        std::string names;
        for (const auto& [k, v] : kv) names += (names.empty() ? "" : ", ") + k;
        throw ConfigError("unknown or inapplicable keys: " + names);
    }

    if (c.levels < 1 || c.levels > 64) throw ConfigError("levels: must be in [1, 64]");
    if (c.n != 0 && c.n < 3) throw ConfigError("grid.N: must be auto or >= 3");
    if (!(c.eps_map > 0.0 && c.eps_map < 0.5)) throw ConfigError("grid.eps_map: must be in (0, 0.5)");
    if (!(c.isospectral_tolerance() > 0.0) || !(c.residual > 0.0) || !(c.gram > 0.0))
        throw ConfigError("tolerances: must be positive");
    if (c.samples < 2) throw ConfigError("output.samples: must be >= 2");
    // Reference invariants; mass parameters are left for validate() so that
    // every violation can be reported at once.
    (void)c.reference();
    return c;
}

inline RunConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in);
}

inline TargetSystem build_target(const RunConfig& c,
                                 CorrectionConvention conv = CorrectionConvention::quarter) {
    return build_target(MassProfile(c.mass_kind, c.mass), c.reference(), c.mode, conv);
}

}  // namespace pdem
