#pragma once

// Oracle pipeline for a target system: truncate the z-domain, discretize,
// solve at N and 2N+1, extrapolate, and compare with the passthrough
// energies. Transported states are checked for residual, orthonormality and
// node count.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <future>
#include <string>
#include <vector>

#include "pdem/diagnostics.hpp"
#include "pdem/errors.hpp"
#include "pdem/interval.hpp"
#include "pdem/massprofiles.hpp"
#include "pdem/pct.hpp"
#include "pdem/quadrature.hpp"
#include "pdem/refmodels.hpp"
#include "pdem/tridiagonal.hpp"

namespace pdem {

enum class Scheme { constant, midpoint, gauged };

inline const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::constant: return "constant";
        case Scheme::midpoint: return "midpoint";
        case Scheme::gauged: return "gauged";
    }
    return "?";
}

struct VerifySettings {
    int levels = 4;
    int n = 0;                  ///< coarse interior points (0: automatic); the fine solve uses 2N+1
    double max_spacing = 0.0625;///< automatic N keeps h at or below this, with N >= 7999
    double eps_map = 1e-3;      ///< distance of the truncation image from the reference ends
    double isospectral_rel = 1e-5;
    double residual = 1e-4;
    double gram = 1e-6;
    double norm = 1e-8;
    bool guard = true;          ///< rerun at eps_map/10 and require the shift < isospectral_rel/10
    bool states = true;         ///< residual, Gram, norm and node checks
    int state_samples = 401;    ///< grid points for residual and node checks
    EigenSettings eigen{};
    QuadratureSettings quad{};
};

struct LevelRow {
    int k = 0;
    double e_analytic = 0.0;
    double e_numeric = 0.0;  ///< Richardson estimate
    double abs_err = 0.0;
    double rel_err = 0.0;    ///< abs_err / max(|e_analytic|, 1)
    double e_coarse = 0.0;
    double e_fine = 0.0;
};

struct ConvergenceMeta {
    int n_coarse = 0;
    int n_fine = 0;
    double z_lo = 0.0;
    double z_hi = 0.0;
    double eps_map = 0.0;
    std::string scheme;
    bool richardson = true;
    double guard_shift = 0.0;  ///< max relative change under eps_map / 10
};

struct VerificationReport {
    std::vector<LevelRow> rows;
    std::vector<double> residual_norms;
    double gram_defect = 0.0;
    std::vector<double> norm_defects;  ///< |int Psi_k^2 dz - int Phi_k^2 dy|
    std::vector<int> node_counts;      ///< transported states
    std::vector<int> node_counts_numeric;
    ConvergenceMeta convergence;

    double isospectral_tolerance = 0.0;
    double residual_tolerance = 0.0;
    double gram_tolerance = 0.0;
    double norm_tolerance = 0.0;
    bool states_checked = false;

    [[nodiscard]] double max_rel_err() const {
        double e = 0.0;
        for (const auto& r : rows) e = std::max(e, r.rel_err);
        return e;
    }
    [[nodiscard]] bool energies_ok() const { return max_rel_err() <= isospectral_tolerance; }
    [[nodiscard]] bool guard_ok() const {
        return convergence.guard_shift <= isospectral_tolerance / 10.0;
    }
    [[nodiscard]] bool residual_ok() const {
        return std::all_of(residual_norms.begin(), residual_norms.end(),
                           [&](double r) { return r <= residual_tolerance; });
    }
    [[nodiscard]] bool gram_ok() const { return gram_defect <= gram_tolerance; }
    [[nodiscard]] bool norm_ok() const {
        return std::all_of(norm_defects.begin(), norm_defects.end(),
                           [&](double d) { return d <= norm_tolerance; });
    }
    [[nodiscard]] bool nodes_ok() const {
        for (std::size_t k = 0; k < node_counts.size(); ++k)
            if (node_counts[k] != static_cast<int>(k)) return false;
        for (std::size_t k = 0; k < node_counts_numeric.size(); ++k)
            if (node_counts_numeric[k] != static_cast<int>(k)) return false;
        return true;
    }
    [[nodiscard]] bool passed() const {
        return energies_ok() && guard_ok() &&
               (!states_checked || (residual_ok() && gram_ok() && norm_ok() && nodes_ok()));
    }
};

/// [z_lo, z_hi] whose image lies eps from the reference ends. An end where
/// the mass itself vanishes (z = 0 for kind II) is kept exactly.
inline Interval truncated_domain(const TargetSystem& ts, double eps) {
    const Interval r = map_range(ts.profile());
    if (!(eps > 0.0) || 2.0 * eps >= r.length())
        throw DomainError("truncated_domain: eps_map must be in (0, range/2)");
    const double lo = ts.profile().kind() == MassKind::II ? 0.0 : map_inverse(ts.profile(), r.lo + eps);
    const double hi = map_inverse(ts.profile(), r.hi - eps);
    return {lo, hi};
}

inline int automatic_points(Interval iv, double max_spacing) {
    if (!(max_spacing > 0.0)) throw DomainError("automatic_points: max_spacing must be positive");
    return std::max(7999, static_cast<int>(std::ceil(iv.length() / max_spacing)) - 1);
}

/// Points z_i whose images are equally spaced in the mapped coordinate over
/// the image of iv.
inline std::vector<double> state_sample_points(const TargetSystem& ts, Interval iv, int count) {
    const MassProfile& p = ts.profile();
    const double y_lo = p.kind() == MassKind::II && iv.lo <= 0.0 ? map_range(p).lo
                                                                 : map_forward(p, iv.lo);
    const double y_hi = map_forward(p, iv.hi);
    std::vector<double> z(count);
    for (int i = 0; i < count; ++i)
        z[i] = map_inverse(p, y_lo + (y_hi - y_lo) * (i + 1) / (count + 1));
    return z;
}

inline Scheme scheme_for(const TargetSystem& ts) {
    return ts.profile().vanishes_inside() ? Scheme::gauged : Scheme::midpoint;
}

inline TridiagonalOperator discretize_target(const TargetSystem& ts, const Grid& grid,
                                             Scheme scheme) {
    const MassProfile& p = ts.profile();
    auto U = [&](auto z) { return target_potential(ts, z); };
    if (scheme == Scheme::gauged)
        return discretize_pdem_gauged([&](auto z) { return mass_value(p, z); }, U, grid);
    return discretize_pdem([&](double z) { return mass_value(p, z); }, U, grid);
}

/// Lowest K eigenvalues of the truncated target at N interior points.
inline std::vector<double> target_eigenvalues(const TargetSystem& ts, Interval iv, int n, int K,
                                              Scheme scheme, const EigenSettings& eig = {}) {
    const Grid grid(iv.lo, iv.hi, n);
    return lowest_eigenvalues(discretize_target(ts, grid, scheme), K, eig);
}

namespace detail {

inline std::pair<std::vector<double>, std::vector<double>> coarse_fine(
    const std::function<std::vector<double>(int)>& solve, int n) {
    auto fine = std::async(std::launch::async, solve, 2 * n + 1);
    std::vector<double> coarse = solve(n);
    return {std::move(coarse), fine.get()};
}

inline LevelRow make_row(int k, double exact, double coarse, double fine, bool extrapolate) {
    LevelRow r;
    r.k = k;
    r.e_analytic = exact;
    r.e_coarse = coarse;
    r.e_fine = fine;
    r.e_numeric = extrapolate ? richardson(coarse, fine) : fine;
    r.abs_err = std::abs(r.e_numeric - exact);
    r.rel_err = r.abs_err / std::max(std::abs(exact), 1.0);
    return r;
}

}  // namespace detail

inline VerificationReport verify_target(const TargetSystem& ts, const VerifySettings& s = {}) {
    if (s.levels < 1) throw DomainError("verify_target: levels must be >= 1");
    VerificationReport rep;
    rep.isospectral_tolerance = s.isospectral_rel;
    rep.residual_tolerance = s.residual;
    rep.gram_tolerance = s.gram;
    rep.norm_tolerance = s.norm;

    const Scheme scheme = scheme_for(ts);
    const Interval iv = truncated_domain(ts, s.eps_map);
    const int n = s.n > 0 ? s.n : automatic_points(iv, s.max_spacing);
    auto solve = [&](int nn) { return target_eigenvalues(ts, iv, nn, s.levels, scheme, s.eigen); };
    auto [coarse, fine] = detail::coarse_fine(solve, n);

    for (int k = 0; k < s.levels; ++k)
        rep.rows.push_back(detail::make_row(k, target_energy(ts, k), coarse[k], fine[k], true));

    ConvergenceMeta& meta = rep.convergence;
    meta.n_coarse = n;
    meta.n_fine = 2 * n + 1;
    meta.z_lo = iv.lo;
    meta.z_hi = iv.hi;
    meta.eps_map = s.eps_map;
    meta.scheme = to_string(scheme);

    if (s.guard) {
        // Extend the coarse grid by whole cells so the shared nodes coincide and
        // only the truncation differs.
        const Interval target = truncated_domain(ts, s.eps_map / 10.0);
        const double h = iv.length() / (n + 1);
        const int left = static_cast<int>(std::ceil((iv.lo - target.lo) / h));
        const int right = static_cast<int>(std::ceil((target.hi - iv.hi) / h));
        const Interval wide{iv.lo - left * h, iv.hi + right * h};
        const std::vector<double> e_wide =
            target_eigenvalues(ts, wide, n + left + right, s.levels, scheme, s.eigen);
        for (int k = 0; k < s.levels; ++k)
            meta.guard_shift = std::max(meta.guard_shift, std::abs(e_wide[k] - coarse[k]) /
                                                              std::max(std::abs(coarse[k]), 1.0));
    }

    if (!s.states) return rep;
    rep.states_checked = true;

    const MassProfile& p = ts.profile();
    const std::vector<double> nodes = state_sample_points(ts, iv, s.state_samples);
    ResidualOptions ropt;
    ropt.relative_step = true;
    if (p.vanishes_inside()) {
        // stencils next to the mass zero are too ill-conditioned to mean anything
        ropt.avoid.push_back(0.0);
        ropt.exclusion = 2.0 * iv.length() / (s.state_samples + 1);
    }
    const Interval stencil_domain = p.kind() == MassKind::II ? Interval{0.0, iv.hi + 1.0}
                                                             : Interval{iv.lo - 1.0, iv.hi + 1.0};
    auto mass = [&](double z) { return mass_value(p, z); };
    auto U = [&](double z) { return target_potential(ts, z); };

    std::vector<std::function<double(double)>> states;
    for (int k = 0; k < s.levels; ++k) {
        TransportedState psi(ts, k, s.quad);
        states.emplace_back(psi);

        rep.residual_norms.push_back(
            residual_norm_pdem(mass, U, psi, psi.energy(), std::span<const double>(nodes),
                               stencil_domain, ropt));

        std::vector<double> samples;
        for (double z : nodes) samples.push_back(psi(z));
        rep.node_counts.push_back(count_nodes(samples));

        const double z_norm = integrate([&](double z) { return psi(z) * psi(z); }, iv, s.quad);
        const double n = psi.normalization();
        const double y_norm = integrate(
            [&](double y) {
                const double v = n * ref_wavefunction_raw(ts.reference(), k, y);
                return v * v;
            },
            ts.reference().domain(), s.quad);
        rep.norm_defects.push_back(std::abs(z_norm - y_norm));
    }
    rep.gram_defect = gram_defect(orthonormality_matrix(states, iv, s.quad));

    const Grid g(iv.lo, iv.hi, n);
    const TridiagonalOperator op = discretize_target(ts, g, scheme);
    for (int k = 0; k < s.levels; ++k)
        rep.node_counts_numeric.push_back(count_nodes(eigenvector(op, coarse[k])));
    return rep;
}

struct ConvergencePoint {
    int n = 0;
    std::vector<double> energies;
    double max_rel_err = 0.0;
};

/// Raw (unextrapolated) errors of the target spectrum over a sequence of N.
inline std::vector<ConvergencePoint> convergence_study(const TargetSystem& ts, int levels,
                                                       const std::vector<int>& ns,
                                                       double eps_map = 1e-3) {
    const Scheme scheme = scheme_for(ts);
    const Interval iv = truncated_domain(ts, eps_map);
    std::vector<std::future<std::vector<double>>> jobs;
    for (int n : ns)
        jobs.push_back(std::async(std::launch::async, [&, n] {
            return target_eigenvalues(ts, iv, n, levels, scheme);
        }));
    std::vector<ConvergencePoint> out;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        ConvergencePoint pt;
        pt.n = ns[i];
        pt.energies = jobs[i].get();
        for (int k = 0; k < levels; ++k) {
            const double e = target_energy(ts, k);
            pt.max_rel_err = std::max(pt.max_rel_err,
                                      std::abs(pt.energies[k] - e) / std::max(std::abs(e), 1.0));
        }
        out.push_back(std::move(pt));
    }
    return out;
}

inline bool monotone_improvement(const std::vector<ConvergencePoint>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i].max_rel_err < pts[i - 1].max_rel_err)) return false;
    return true;
}

/// Constant-mass oracle for a reference model on its own domain.
inline std::vector<LevelRow> verify_reference(const ReferenceModel& model, int levels, int n = 3999,
                                              const EigenSettings& eig = {}) {
    const Interval d = model.domain();
    auto solve = [&](int nn) {
        const Grid grid(d.lo, d.hi, nn);
        return lowest_eigenvalues(
            discretize_constant([&](double y) { return ref_potential(model, y); }, grid), levels, eig);
    };
    auto [coarse, fine] = detail::coarse_fine(solve, n);
    std::vector<LevelRow> rows;
    for (int k = 0; k < levels; ++k)
        rows.push_back(detail::make_row(k, ref_energy(model, k), coarse[k], fine[k], true));
    return rows;
}

}  // namespace pdem
