#pragma once

// Adaptive Simpson and composite Gauss-Legendre quadrature on finite intervals.
// Neither rule evaluates the integrand exactly at the interval ends, so
// functions defined only on the open interval are fine.

#include <cmath>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pdem/errors.hpp"
#include "pdem/interval.hpp"

namespace pdem {

enum class QuadratureRule { adaptive_simpson, gauss_legendre_composite };

struct QuadratureSettings {
    double tolerance = 1e-12;  ///< absolute
    int max_refinements = 40;
    QuadratureRule rule = QuadratureRule::adaptive_simpson;
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule make_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::vector<std::pair<int, GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [k, r] : cache)
        if (k == n) return r;
    cache.emplace_back(n, make_gauss_legendre(n));
    return cache.back().second;
}

/// Fixed Gauss-Legendre rule on [a, b].
template <class F>
double gauss_integrate(F&& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

namespace detail {

template <class F>
double checked_eval(F& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw QuadratureError("integrate: non-finite integrand at x=" + std::to_string(x));
    return v;
}

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = checked_eval(f, lm);
    const double frm = checked_eval(f, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    const double delta = both - whole;
    // accuracy floor at rounding level of the local estimate
    const double floor = 64.0 * 2.2e-16 * (std::abs(left) + std::abs(right));
    if (std::abs(delta) <= 15.0 * std::max(tol, floor) || m <= a || b <= m)
        return both + delta / 15.0;
    if (depth >= max_depth)
        throw QuadratureError("integrate: adaptive Simpson did not converge within " +
                              std::to_string(max_depth) + " refinements near x=" +
                              std::to_string(m));
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Integral of f over (lo, hi) to settings.tolerance (absolute).
template <class F>
double integrate(F&& f, Interval iv, const QuadratureSettings& settings = {}) {
    if (!(settings.tolerance >= 1e-14))
        throw DomainError("integrate: tolerance must be >= 1e-14");
    if (!iv.finite()) throw QuadratureError("integrate: interval must be finite");
    if (iv.lo == iv.hi) return 0.0;
    if (iv.hi < iv.lo) return -integrate(f, Interval{iv.hi, iv.lo}, settings);

    if (settings.rule == QuadratureRule::gauss_legendre_composite) {
        const GaussRule& rule = gauss_legendre(10);
        auto composite = [&](int panels) {
            const double w = iv.length() / panels;
            double s = 0.0;
            for (int p = 0; p < panels; ++p)
                s += gauss_integrate(f, iv.lo + p * w, iv.lo + (p + 1) * w, rule);
            if (!std::isfinite(s)) throw QuadratureError("integrate: non-finite panel sum");
            return s;
        };
        double prev = composite(1);
        int panels = 1;
        for (int level = 0; level < settings.max_refinements && panels < (1 << 22); ++level) {
            panels *= 2;
            const double cur = composite(panels);
            if (std::abs(cur - prev) <= std::max(settings.tolerance, 1e-15 * std::abs(cur)))
                return cur;
            prev = cur;
        }
        throw QuadratureError("integrate: composite Gauss-Legendre did not converge");
    }

    auto& fn = f;
    const double a = std::nextafter(iv.lo, iv.hi);
    const double b = std::nextafter(iv.hi, iv.lo);
    const double fa = detail::checked_eval(fn, a);
    const double fb = detail::checked_eval(fn, b);
    // Seed with a few uniform splits so narrow peaks are not missed by the first estimate.
    constexpr int kSeed = 16;
    double total = 0.0;
    for (int p = 0; p < kSeed; ++p) {
        const double pa = p == 0 ? a : iv.lo + iv.length() * p / kSeed;
        const double pb = p == kSeed - 1 ? b : iv.lo + iv.length() * (p + 1) / kSeed;
        const double fpa = p == 0 ? fa : detail::checked_eval(fn, pa);
        const double fpb = p == kSeed - 1 ? fb : detail::checked_eval(fn, pb);
        const double fpm = detail::checked_eval(fn, 0.5 * (pa + pb));
        const double est = (pb - pa) / 6.0 * (fpa + 4.0 * fpm + fpb);
        total += detail::simpson_step(fn, pa, pb, fpa, fpm, fpb, est,
                                      settings.tolerance / kSeed, 0, settings.max_refinements);
    }
    return total;
}

}  // namespace pdem
