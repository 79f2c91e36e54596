#pragma once

// Residuals, Gram matrices and node counts for candidate eigenfunctions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pdem/interval.hpp"
#include "pdem/quadrature.hpp"
#include "pdem/tridiagonal.hpp"

namespace pdem {

namespace detail {

/// Largest stencil half-width usable at z: distance to the nearest end of
/// `domain` or to any of `avoid`, divided by `reach`.
inline double safe_step(double z, Interval domain, std::span<const double> avoid, double step,
                        double reach) {
    double dist = std::min(z - domain.lo, domain.hi - z);
    for (double p : avoid) dist = std::min(dist, std::abs(z - p));
    return std::min(step, dist / reach);
}

template <class F>
double d1_5pt(F& f, double z, double d) {
    return (-f(z + 2 * d) + 8 * f(z + d) - 8 * f(z - d) + f(z - 2 * d)) / (12 * d);
}

template <class F>
double d2_5pt(F& f, double z, double d) {
    return (-f(z + 2 * d) + 16 * f(z + d) - 30 * f(z) + 16 * f(z - d) - f(z - 2 * d)) / (12 * d * d);
}

inline bool is_avoided(double z, std::span<const double> avoid, double radius) {
    return std::any_of(avoid.begin(), avoid.end(),
                       [&](double p) { return std::abs(z - p) <= radius; });
}

}  // namespace detail

struct ResidualOptions {
    double step = 1e-3;               ///< base stencil spacing
    bool relative_step = false;       ///< scale the spacing by max(1, |z|)
    std::vector<double> avoid;        ///< singular points the stencil must not straddle
    double exclusion = 0.0;           ///< nodes this close to an avoided point are skipped
};

namespace detail {

inline double base_step(double z, const ResidualOptions& opt) {
    return opt.relative_step ? opt.step * std::max(1.0, std::abs(z)) : opt.step;
}

}  // namespace detail

/// max_i |(-psi'' + U psi - E psi)(z_i)| / ((|E| + 1) max_i |psi(z_i)|) over the
/// given nodes; 5-point second differences, Richardson in the spacing.
/// `domain` bounds the stencil (the function need not exist outside it).
template <class Potential, class Psi>
double residual_norm_constant(Potential&& U, Psi&& psi, double E, std::span<const double> nodes,
                              Interval domain, const ResidualOptions& opt = {}) {
    double psi_max = 0.0;
    double worst = 0.0;
    for (double z : nodes) {
        if (detail::is_avoided(z, opt.avoid, opt.exclusion)) continue;
        psi_max = std::max(psi_max, std::abs(psi(z)));
        const double d = detail::safe_step(z, domain, opt.avoid, detail::base_step(z, opt), 8.0);
        const double lap = (16.0 * detail::d2_5pt(psi, z, 0.5 * d) - detail::d2_5pt(psi, z, d)) / 15.0;
        const double p = psi(z);
        worst = std::max(worst, std::abs(-lap + U(z) * p - E * p));
    }
    return psi_max > 0.0 ? worst / ((std::abs(E) + 1.0) * psi_max) : 0.0;
}

template <class Potential, class Psi>
double residual_norm_constant(Potential&& U, Psi&& psi, double E, const Grid& grid,
                              Interval domain, const ResidualOptions& opt = {}) {
    const std::vector<double> nodes = grid.interior_nodes();
    return residual_norm_constant(U, psi, E, std::span<const double>(nodes), domain, opt);
}

/// Same normalization for -(d/dz)((1/m) dpsi/dz) + U psi - E psi. The flux
/// (1/m) psi' and its derivative are both 5-point differences.
template <class Mass, class Potential, class Psi>
double residual_norm_pdem(Mass&& m, Potential&& U, Psi&& psi, double E,
                          std::span<const double> nodes, Interval domain,
                          const ResidualOptions& opt = {}) {
    double psi_max = 0.0;
    double worst = 0.0;
    auto apply = [&](double z, double d) {
        auto flux = [&](double t) { return detail::d1_5pt(psi, t, d) / m(t); };
        return -detail::d1_5pt(flux, z, d);
    };
    for (double z : nodes) {
        if (detail::is_avoided(z, opt.avoid, opt.exclusion)) continue;
        psi_max = std::max(psi_max, std::abs(psi(z)));
        const double d = detail::safe_step(z, domain, opt.avoid, detail::base_step(z, opt), 16.0);
        const double kin = (16.0 * apply(z, 0.5 * d) - apply(z, d)) / 15.0;
        const double p = psi(z);
        worst = std::max(worst, std::abs(kin + U(z) * p - E * p));
    }
    return psi_max > 0.0 ? worst / ((std::abs(E) + 1.0) * psi_max) : 0.0;
}

template <class Mass, class Potential, class Psi>
double residual_norm_pdem(Mass&& m, Potential&& U, Psi&& psi, double E, const Grid& grid,
                          Interval domain, const ResidualOptions& opt = {}) {
    const std::vector<double> nodes = grid.interior_nodes();
    return residual_norm_pdem(m, U, psi, E, std::span<const double>(nodes), domain, opt);
}

using Matrix = std::vector<std::vector<double>>;

/// G_ij = integral of psi_i psi_j over the interval.
inline Matrix orthonormality_matrix(const std::vector<std::function<double(double)>>& states,
                                    Interval iv, const QuadratureSettings& quad = {}) {
    const std::size_t n = states.size();
    Matrix g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            g[i][j] = integrate([&](double z) { return states[i](z) * states[j](z); }, iv, quad);
            g[j][i] = g[i][j];
        }
    }
    return g;
}

/// max |G - I|.
inline double gram_defect(const Matrix& g) {
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g[i].size(); ++j)
            d = std::max(d, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
    return d;
}

/// Strict sign changes, ignoring samples below 1e-12 max|sample|.
inline int count_nodes(std::span<const double> samples) {
    double vmax = 0.0;
    for (double x : samples) vmax = std::max(vmax, std::abs(x));
    const double cutoff = 1e-12 * vmax;
    int nodes = 0;
    int last_sign = 0;
    for (double x : samples) {
        if (std::abs(x) <= cutoff) continue;
        const int s = x > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++nodes;
        last_sign = s;
    }
    return nodes;
}

}  // namespace pdem
