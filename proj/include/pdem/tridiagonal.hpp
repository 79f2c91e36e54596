#pragma once

// Symmetric tridiagonal discretizations of 1-D Schroedinger operators and a
// Sturm-sequence bisection eigensolver.
//
// Operators produced by the discretize_* functions keep their conservative
// splitting
//
//     A = W^{-1/2} (K + diag(u)) W^{-1/2},
//
// with K the weighted Laplacian built from the face couplings c (zero row
// sums apart from the Dirichlet faces), u the cell potential terms and W the
// cell weights. The Sturm count works on K + diag(u) - lambda W directly and
// never forms c_i + c_{i+1} - c_i^2/q, which is what lets it resolve O(1)
// eigenvalues next to couplings of size 1e15.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pdem/errors.hpp"
#include "pdem/interval.hpp"
#include "pdem/jet.hpp"
#include "pdem/quadrature.hpp"

namespace pdem {

/// Uniform grid on [a, b] with N interior nodes z_i = a + i h, i = 1..N,
/// Dirichlet values implied at a and b.
class Grid {
public:
    Grid(double a, double b, int n) : a_(a), b_(b), n_(n) {
        if (!(b > a)) throw DomainError("Grid: requires b > a");
        if (n < 15) throw DomainError("Grid: requires N >= 15");
        if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("Grid: finite ends required");
        h_ = (b - a) / (n + 1);
    }

    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double b() const { return b_; }
    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] double h() const { return h_; }
    /// Node i in 0..N+1 (0 and N+1 are the boundary points).
    [[nodiscard]] double node(int i) const { return a_ + i * h_; }
    [[nodiscard]] double midpoint(int j) const { return a_ + (j + 0.5) * h_; }

    [[nodiscard]] std::vector<double> interior_nodes() const {
        std::vector<double> z(n_);
        for (int i = 0; i < n_; ++i) z[i] = node(i + 1);
        return z;
    }

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

struct TridiagonalOperator {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal;
    std::optional<Grid> grid;

    // Conservative splitting; empty for operators built from raw matrices.
    std::vector<double> couplings;  ///< N+1 face couplings, couplings[0] is the left Dirichlet face
    std::vector<double> potential;  ///< N cell terms u_i
    std::vector<double> weights;    ///< N cell weights W_i
    std::vector<double> gauge;      ///< N; physical value = gauge_i * phi_i (empty means 1)

    [[nodiscard]] int size() const { return static_cast<int>(diagonal.size()); }
    [[nodiscard]] bool conservative() const { return !couplings.empty(); }

    static TridiagonalOperator from_matrix(std::vector<double> diag, std::vector<double> off) {
        if (off.size() + 1 != diag.size())
            throw DomainError("TridiagonalOperator: offdiagonal must have N-1 entries");
        TridiagonalOperator op;
        op.diagonal = std::move(diag);
        op.offdiagonal = std::move(off);
        return op;
    }
};

namespace detail {

inline void materialize(TridiagonalOperator& op) {
    const std::size_t n = op.potential.size();
    op.diagonal.resize(n);
    op.offdiagonal.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        op.diagonal[i] = (op.couplings[i] + op.couplings[i + 1] + op.potential[i]) / op.weights[i];
        if (i + 1 < n)
            op.offdiagonal[i] = -op.couplings[i + 1] / std::sqrt(op.weights[i] * op.weights[i + 1]);
    }
}

inline TridiagonalOperator assemble(const Grid& grid, std::vector<double> couplings,
                                    std::vector<double> potential, std::vector<double> weights,
                                    std::vector<double> gauge = {}) {
    TridiagonalOperator op;
    op.grid = grid;
    op.couplings = std::move(couplings);
    op.potential = std::move(potential);
    op.weights = std::move(weights);
    op.gauge = std::move(gauge);
    materialize(op);
    return op;
}

}  // namespace detail

/// -d^2/dz^2 + U(z) with Dirichlet ends: diagonal 2/h^2 + U(z_i), offdiagonal -1/h^2.
template <class Potential>
TridiagonalOperator discretize_constant(Potential&& U, const Grid& grid) {
    const int n = grid.size();
    const double c = 1.0 / (grid.h() * grid.h());
    std::vector<double> couplings(n + 1, c);
    std::vector<double> potential(n);
    for (int i = 0; i < n; ++i) {
        const double z = grid.node(i + 1);
        potential[i] = U(z);
        if (!std::isfinite(potential[i]))
            throw DomainError("discretize_constant: potential singular at z=" + std::to_string(z));
    }
    return detail::assemble(grid, std::move(couplings), std::move(potential),
                            std::vector<double>(n, 1.0));
}

/// -(d/dz)(1/m) d/dz + U(z), symmetric conservative scheme with 1/m sampled at
/// the midpoints z_{i+1/2}.
template <class Mass, class Potential>
TridiagonalOperator discretize_pdem(Mass&& m, Potential&& U, const Grid& grid) {
    const int n = grid.size();
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    std::vector<double> couplings(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double zm = grid.midpoint(j);
        const double mass = m(zm);
        const double w = 1.0 / mass;
        if (!(mass > 0.0) || !std::isfinite(w))
            throw SingularError("discretize_pdem: mass vanishes at midpoint z=" + std::to_string(zm));
        couplings[j] = w * inv_h2;
    }
    std::vector<double> potential(n);
    for (int i = 0; i < n; ++i) {
        const double z = grid.node(i + 1);
        potential[i] = U(z);
        if (!std::isfinite(potential[i]))
            throw DomainError("discretize_pdem: potential singular at z=" + std::to_string(z));
    }
    return detail::assemble(grid, std::move(couplings), std::move(potential),
                            std::vector<double>(n, 1.0));
}

/// Gauge potential (w g')'/g of the kinetic operator -(d/dz) w d/dz with
/// w = 1/m and g = m^{1/4}, in the precision of z. The mass callable must
/// accept BasicJet<R> arguments.
template <class R, class Mass>
R gauge_potential(Mass&& m, R z) {
    const BasicJet<R> mj = m(BasicJet<R>::variable(z));
    const BasicJet<R> g = pow(mj, R(0.25));
    const BasicJet<R> w = R(1) / mj;
    return (w.d * g.d + w.v * g.dd) / g.v;
}

/// PDEM operator for masses that vanish inside the interval.
///
/// Works on phi = Psi / m^{1/4}, for which the operator reads
///   -(1/sqrt m) (d/dz)(1/sqrt m)(d/dz) phi + (U - V_g) phi,
/// V_g = (w g')'/g computed by forward-mode differentiation of the mass.
/// Finite volumes: face couplings 1 / int sqrt(m) between nodes, cell weights
/// int sqrt(m) over [z_i - h/2, z_i + h/2], cell potential int (U - V_g) sqrt(m).
/// Cell integrals use 4-point Gauss-Legendre, so U is never sampled at a node.
/// Next to a zero of m both U and V_g grow like the inverse mass while their
/// difference stays bounded, so U - V_g is formed in long double; U and m
/// should accept long double (and BasicJet<long double>) to benefit.
template <class Mass, class Potential>
TridiagonalOperator discretize_pdem_gauged(Mass&& m, Potential&& U, const Grid& grid) {
    const int n = grid.size();
    const double h = grid.h();
    const GaussRule& rule = gauss_legendre(4);
    auto sqrt_mass = [&](double z) { return std::sqrt(m(z)); };

    std::vector<double> couplings(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double len = gauss_integrate(sqrt_mass, grid.node(j), grid.node(j + 1), rule);
        if (!(len > 0.0))
            throw SingularError("discretize_pdem_gauged: mass vanishes on a whole face interval");
        couplings[j] = 1.0 / len;
    }
    std::vector<double> weights(n);
    std::vector<double> potential(n);
    std::vector<double> gauge(n);
    for (int i = 0; i < n; ++i) {
        const double z = grid.node(i + 1);
        weights[i] = gauss_integrate(sqrt_mass, z - 0.5 * h, z + 0.5 * h, rule);
        potential[i] = gauss_integrate(
            [&](double t) {
                using R = long double;
                const R tl = t;
                const R diff = static_cast<R>(U(tl)) - gauge_potential(m, tl);
                return static_cast<double>(diff * std::sqrt(static_cast<R>(m(tl))));
            },
            z - 0.5 * h, z + 0.5 * h, rule);
        gauge[i] = std::pow(m(z), 0.25);
        if (!(weights[i] > 0.0) || !std::isfinite(potential[i]))
            throw SingularError("discretize_pdem_gauged: degenerate cell at z=" + std::to_string(z));
    }
    return detail::assemble(grid, std::move(couplings), std::move(potential), std::move(weights),
                            std::move(gauge));
}

/// Number of eigenvalues strictly below lambda.
inline int sturm_count(const TridiagonalOperator& op, double lambda) {
    const int n = op.size();
    int count = 0;
    if (op.conservative()) {
        double ratio = 1.0;  // r_{i-1} / q_{i-1}; 1 before the first row
        for (int i = 0; i < n; ++i) {
            const double r = op.couplings[i] * ratio + (op.potential[i] - lambda * op.weights[i]);
            double q = op.couplings[i + 1] + r;
            if (q == 0.0) q = -1e-300;
            if (q < 0.0) ++count;
            ratio = r / q;
        }
        return count;
    }
    double scale = 0.0;
    for (double d : op.diagonal) scale = std::max(scale, std::abs(d));
    for (double e : op.offdiagonal) scale = std::max(scale, std::abs(e));
    const double pivmin = 1e-300 + 1e-300 * scale;
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
        const double e2 = i > 0 ? op.offdiagonal[i - 1] * op.offdiagonal[i - 1] : 0.0;
        q = (op.diagonal[i] - lambda) - (i > 0 ? e2 / q : 0.0);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

struct EigenSettings {
    double rel_tolerance = 1e-10;  ///< bracket width <= rel_tolerance * (1 + |E|)
    int max_iterations = 400;
};

inline double spectrum_lower_bound(const TridiagonalOperator& op) {
    double lo = kInf;
    const int n = op.size();
    if (op.conservative()) {
        // K is positive semidefinite, so K + diag(u) - lambda W > 0 below min u_i / W_i
        for (int i = 0; i < n; ++i) lo = std::min(lo, op.potential[i] / op.weights[i]);
    } else {
        for (int i = 0; i < n; ++i) {
            double r = 0.0;
            if (i > 0) r += std::abs(op.offdiagonal[i - 1]);
            if (i + 1 < n) r += std::abs(op.offdiagonal[i]);
            lo = std::min(lo, op.diagonal[i] - r);
        }
    }
    return lo - 1.0 - 1e-12 * std::abs(lo);
}

/// The K smallest eigenvalues by Sturm-count bisection, ascending.
inline std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int K,
                                              const EigenSettings& settings = {}) {
    if (K < 0 || K > op.size())
        throw DomainError("lowest_eigenvalues: K must be in [0, N]");
    std::vector<double> out;
    out.reserve(K);
    double floor = spectrum_lower_bound(op);
    for (int k = 0; k < K; ++k) {
        double lo = floor;
        double hi = std::max(lo + 1.0, 1.0);
        int grow = 0;
        while (sturm_count(op, hi) <= k) {
            hi = lo + 2.0 * (hi - lo);
            if (++grow > 2100 || !std::isfinite(hi))
                throw ConvergenceError("lowest_eigenvalues: could not bracket level " +
                                       std::to_string(k));
        }
        int it = 0;
        while (hi - lo > settings.rel_tolerance * (1.0 + std::abs(0.5 * (lo + hi)))) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // bracket at floating resolution
            if (sturm_count(op, mid) > k)
                hi = mid;
            else
                lo = mid;
            if (++it > settings.max_iterations)
                throw ConvergenceError("lowest_eigenvalues: bisection iteration cap at level " +
                                       std::to_string(k));
        }
        const double e = 0.5 * (lo + hi);
        out.push_back(e);
        floor = lo;
    }
    return out;
}

/// Extrapolates a pair of results whose error is c h^order, with h_coarse / h_fine = ratio.
inline double richardson(double e_coarse, double e_fine, int order = 2, double ratio = 2.0) {
    const double f = std::pow(ratio, order);
    return (f * e_fine - e_coarse) / (f - 1.0);
}

/// Eigenvector for an eigenvalue estimate by shifted inverse iteration.
///
/// Returns physical samples at the interior nodes (gauge applied), normalized so
/// that h * sum psi_i^2 = 1 (plain sum when the operator has no grid), with the
/// first component above 1e-3 max|psi| positive.
inline std::vector<double> eigenvector(const TridiagonalOperator& op, double E,
                                       int max_iterations = 50) {
    const int n = op.size();
    const bool cons = op.conservative();
    // pivots of (K + diag(u) - E W) or (A - E)
    std::vector<double> q(n);
    std::vector<double> sub(n, 0.0);  // coupling to previous row (positive for conservative)
    if (cons) {
        double ratio = 1.0;
        for (int i = 0; i < n; ++i) {
            const double r = op.couplings[i] * ratio + (op.potential[i] - E * op.weights[i]);
            double qi = op.couplings[i + 1] + r;
            if (qi == 0.0) qi = 1e-300;
            q[i] = qi;
            ratio = r / qi;
            sub[i] = op.couplings[i];
        }
    } else {
        for (int i = 0; i < n; ++i) {
            double qi = op.diagonal[i] - E;
            if (i > 0) {
                qi -= op.offdiagonal[i - 1] * op.offdiagonal[i - 1] / q[i - 1];
                sub[i] = -op.offdiagonal[i - 1];
            }
            if (qi == 0.0) qi = 1e-300;
            q[i] = qi;
        }
    }
    auto solve = [&](std::vector<double> rhs) {
        for (int i = 1; i < n; ++i) rhs[i] += sub[i] * rhs[i - 1] / q[i - 1];
        rhs[n - 1] /= q[n - 1];
        for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] + sub[i + 1] * rhs[i + 1]) / q[i];
        return rhs;
    };
    auto weight = [&](int i) { return cons ? op.weights[i] : 1.0; };
    auto normalize = [&](std::vector<double>& v) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += weight(i) * v[i] * v[i];
        s = std::sqrt(s);
        if (!(s > 0.0) || !std::isfinite(s)) throw ConvergenceError("eigenvector: degenerate iterate");
        double vmax = 0.0;
        for (double x : v) vmax = std::max(vmax, std::abs(x));
        int first = 0;
        while (first < n && std::abs(v[first]) <= 1e-3 * vmax) ++first;
        const double sign = (first < n && v[first] < 0.0) ? -1.0 : 1.0;
        for (double& x : v) x *= sign / s;
    };

    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + (i % 7) / 7.0;
    normalize(v);
    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = weight(i) * v[i];
        std::vector<double> next = solve(std::move(rhs));
        normalize(next);
        double diff = 0.0;
        for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - v[i]));
        v = std::move(next);
        if (diff <= 1e-10) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("eigenvector: inverse iteration did not converge");

    // phi -> psi
    if (!op.gauge.empty())
        for (int i = 0; i < n; ++i) v[i] *= op.gauge[i];
    const double h = op.grid ? op.grid->h() : 1.0;
    double s = 0.0;
    for (double x : v) s += h * x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
    return v;
}

}  // namespace pdem
