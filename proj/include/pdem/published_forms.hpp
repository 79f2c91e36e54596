#pragma once

// Target potentials in the closed forms published for each mass/reference
// pair, evaluated literally (coefficients included) so they can be audited
// against the engine. They are comparators only; several of them do not
// solve the eigenproblem they are attached to.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdem/errors.hpp"
#include "pdem/massprofiles.hpp"
#include "pdem/pct.hpp"
#include "pdem/refmodels.hpp"

namespace pdem {

enum class PaperEquation { Eq14, Eq19, Eq24, Eq27, Eq28, Eq29, Eq32, Eq33, Eq34 };

inline constexpr PaperEquation kAllPaperEquations[] = {
    PaperEquation::Eq14, PaperEquation::Eq19, PaperEquation::Eq24,
    PaperEquation::Eq27, PaperEquation::Eq28, PaperEquation::Eq29,
    PaperEquation::Eq32, PaperEquation::Eq33, PaperEquation::Eq34};

inline std::string_view to_string(PaperEquation e) {
    switch (e) {
        case PaperEquation::Eq14: return "Eq14";
        case PaperEquation::Eq19: return "Eq19";
        case PaperEquation::Eq24: return "Eq24";
        case PaperEquation::Eq27: return "Eq27";
        case PaperEquation::Eq28: return "Eq28";
        case PaperEquation::Eq29: return "Eq29";
        case PaperEquation::Eq32: return "Eq32";
        case PaperEquation::Eq33: return "Eq33";
        case PaperEquation::Eq34: return "Eq34";
    }
    return "?";
}

inline std::optional<PaperEquation> parse_paper_equation(std::string_view s) {
    for (PaperEquation e : kAllPaperEquations)
        if (to_string(e) == s) return e;
    return std::nullopt;
}

inline MassKind mass_kind_of(PaperEquation e) {
    switch (e) {
        case PaperEquation::Eq14:
        case PaperEquation::Eq19:
        case PaperEquation::Eq24: return MassKind::I;
        case PaperEquation::Eq27:
        case PaperEquation::Eq28:
        case PaperEquation::Eq29: return MassKind::II;
        default: return MassKind::III;
    }
}

inline ReferenceKind reference_kind_of(PaperEquation e) {
    switch (e) {
        case PaperEquation::Eq14:
        case PaperEquation::Eq27:
        case PaperEquation::Eq32: return ReferenceKind::STP;
        case PaperEquation::Eq19:
        case PaperEquation::Eq28:
        case PaperEquation::Eq33: return ReferenceKind::SCP;
        default: return ReferenceKind::PTP;
    }
}

/// Coefficients as they are defined next to each published form. Entries that
/// do not apply to the form's mass kind are left at 0.
struct PaperCoefficients {
    double U0 = 0.0;           ///< mu(mu-1) for STP/SCP; 2 for PTP
    double U01 = 0.0;          ///< chi(chi-1)
    double U02 = 0.0;          ///< lambda(lambda-1)
    double kappa = 0.0;        ///< kind I: 4 delta^2 / Delta; kind III: 81 beta^4 gamma^4 / alpha^2
    double sigma = 0.0;        ///< kind II: alpha^2 / (4 beta^8 gamma^8)
    double omega = 0.0;        ///< kind III: alpha^2 / (81 beta^4 gamma^4)
    double U0_bar = 0.0;       ///< kappa U0 (kind I)
    double U0_tilde = 0.0;     ///< sigma U0 (kind II)
    double U0_hat = 0.0;       ///< kappa U0 (kind III)
    double U_omega_bar = 0.0;  ///< 1 + 4 delta^2 U0 / Delta (kind I, PTP)
    double U_omega_tilde = 0.0;///< omega U0 (kind III, PTP)
};

struct PaperFormId {
    PaperEquation tag = PaperEquation::Eq14;
    PaperCoefficients coefficients;
};

inline PaperFormId paper_form_id(PaperEquation tag, const MassParameters& p,
                                 const ReferenceModel& ref) {
    PaperFormId id{tag, {}};
    PaperCoefficients& c = id.coefficients;
    if (ref.kind() == ReferenceKind::PTP) {
        c.U0 = 2.0;
        c.U01 = ref.chi() * (ref.chi() - 1.0);
        c.U02 = ref.lambda() * (ref.lambda() - 1.0);
    } else {
        c.U0 = ref.mu() * (ref.mu() - 1.0);
    }
    switch (mass_kind_of(tag)) {
        case MassKind::I:
            c.kappa = 4.0 * p.delta * p.delta / p.discriminant();
            c.U0_bar = c.kappa * c.U0;
            c.U_omega_bar = 1.0 + 4.0 * p.delta * p.delta / p.discriminant() * c.U0;
            break;
        case MassKind::II:
            c.sigma = p.alpha * p.alpha / (4.0 * std::pow(p.beta, 8) * std::pow(p.gamma, 8));
            c.U0_tilde = c.sigma * c.U0;
            break;
        case MassKind::III:
            c.kappa = 81.0 * std::pow(p.beta, 4) * std::pow(p.gamma, 4) / (p.alpha * p.alpha);
            c.omega = p.alpha * p.alpha / (81.0 * std::pow(p.beta, 4) * std::pow(p.gamma, 4));
            c.U0_hat = c.kappa * c.U0;
            c.U_omega_tilde = c.omega * c.U0;
            break;
    }
    return id;
}

inline double paper_form_potential(const PaperFormId& id, const MassParameters& p, double z) {
    const PaperCoefficients& c = id.coefficients;
    const MassKind kind = mass_kind_of(id.tag);
    if (!std::isfinite(z)) throw DomainError("paper_form_potential: non-finite z");
    if (kind == MassKind::II && !(z > 0.0))
        throw DomainError("paper_form_potential: kind II forms need z > 0");
    if (kind != MassKind::I && z == 0.0)
        throw DomainError("paper_form_potential: form is singular at z = 0");

    if (kind == MassKind::I) {
        const double q = p.alpha + p.beta * z + p.gamma * z * z;
        const double L = p.beta + 2.0 * p.gamma * z;
        const double block = 1.0 / (32.0 * std::pow(q, 4) * p.delta * p.delta) *
                             (-(7.0 * p.beta + 8.0 * p.gamma + 2.0 * p.gamma * z) + 8.0 * L * L / q);
        switch (id.tag) {
            case PaperEquation::Eq14: return c.U0_bar * L * L + block;
            case PaperEquation::Eq19:
                if (L == 0.0) throw DomainError("paper_form_potential: beta + 2 gamma z = 0");
                return c.U0_bar / (L * L) + block;
            default:
                if (L == 0.0) throw DomainError("paper_form_potential: beta + 2 gamma z = 0");
                return c.U_omega_bar * (c.U01 / (L * L) + c.U02 * L * L) + block;
        }
    }
    if (kind == MassKind::II) {
        const double z4 = std::pow(z, 4);
        const double block = 21.0 / (8.0 * p.alpha * p.alpha) * z4 + 5.0 / (32.0 * c.sigma) / z4 +
                             5.0 / (32.0 * c.sigma) / (std::pow(p.beta, 4) * std::pow(p.gamma, 4));
        if (id.tag == PaperEquation::Eq29)
            return -(c.U01 / c.U0_tilde) / z4 + c.U02 * (1.0 + c.U0_tilde * z4) - block;
        return c.U0_tilde / z4 - block;
    }
    const double z6 = std::pow(z, 6);
    const double D = p.beta * p.beta + p.gamma * p.gamma * z6;
    const double block = (4.0 / z6 * D * D - 3.0 * p.gamma * p.gamma * D +
                          9.0 * std::pow(p.gamma, 4) * z6) /
                         (p.alpha * p.alpha);
    switch (id.tag) {
        case PaperEquation::Eq32: return c.U0_hat * z6 - block;
        case PaperEquation::Eq33: return c.U0_hat / z6 - block;
        default:
            return -(c.U01 / c.U_omega_tilde) / z6 + c.U02 * (1.0 + c.U_omega_tilde * z6) - block;
    }
}

struct DeviationRow {
    double z = 0.0;
    double engine = 0.0;
    double printed = 0.0;
    double deviation = 0.0;  ///< |engine - printed|
};

struct DeviationReport {
    std::string tag;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::vector<DeviationRow> rows;
    int skipped = 0;  ///< grid points where either side is undefined
};

/// Pointwise |engine - printed| over the grid. Points where either callable
/// throws a library error are counted in `skipped`.
template <class Engine, class Printed>
DeviationReport compare_forms(Engine&& engine, Printed&& printed, std::span<const double> grid,
                              std::string tag = {}) {
    DeviationReport r;
    r.tag = std::move(tag);
    double sum = 0.0;
    for (double z : grid) {
        DeviationRow row;
        row.z = z;
        try {
            row.engine = engine(z);
            row.printed = printed(z);
        } catch (const Error&) {
            ++r.skipped;
            continue;
        }
        if (!std::isfinite(row.engine) || !std::isfinite(row.printed)) {
            ++r.skipped;
            continue;
        }
        row.deviation = std::abs(row.engine - row.printed);
        r.max_abs = std::max(r.max_abs, row.deviation);
        sum += row.deviation;
        r.rows.push_back(row);
    }
    if (!r.rows.empty()) r.mean_abs = sum / static_cast<double>(r.rows.size());
    return r;
}

/// 101 points on [-2, 2] (kind I) or [0.2, 2] (kinds II, III).
inline std::vector<double> default_comparison_grid(MassKind kind, int points = 101) {
    const double lo = kind == MassKind::I ? -2.0 : 0.2;
    const double hi = 2.0;
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    return g;
}

inline bool compatible(const TargetSystem& ts, PaperEquation tag) {
    return ts.profile().kind() == mass_kind_of(tag) &&
           ts.reference().kind() == reference_kind_of(tag);
}

inline DeviationReport compare_paper_form(const TargetSystem& ts, PaperEquation tag,
                                          std::span<const double> grid) {
    if (!compatible(ts, tag))
        throw DomainError("compare_paper_form: " + std::string(to_string(tag)) + " needs mass kind " +
                          to_string(mass_kind_of(tag)) + " with reference " +
                          to_string(reference_kind_of(tag)));
    const PaperFormId id = paper_form_id(tag, ts.profile().params(), ts.reference());
    return compare_forms([&](double z) { return target_potential(ts, z); },
                         [&](double z) { return paper_form_potential(id, ts.profile().params(), z); },
                         grid, std::string(to_string(tag)));
}

}  // namespace pdem
