#pragma once

// Pochhammer symbols and terminating Gauss hypergeometric polynomials.

#include <cmath>
#include <string>

#include "pdem/errors.hpp"

namespace pdem {

enum class Summation { plain, compensated };

struct PolyEvalSettings {
    int max_degree = 30;
    Summation summation = Summation::compensated;
};

namespace detail {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble operator+(DoubleDouble x, DoubleDouble y) {
    DoubleDouble s = two_sum(x.hi, y.hi);
    DoubleDouble t = two_sum(x.lo, y.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator*(DoubleDouble x, double y) {
    const double p = x.hi * y;
    const double e = std::fma(x.hi, y, -p);
    return quick_two_sum(p, e + x.lo * y);
}

inline DoubleDouble operator*(DoubleDouble x, DoubleDouble y) {
    const double p = x.hi * y.hi;
    const double e = std::fma(x.hi, y.hi, -p);
    return quick_two_sum(p, e + (x.hi * y.lo + x.lo * y.hi));
}

inline DoubleDouble operator/(DoubleDouble x, DoubleDouble y) {
    // two Newton-style correction steps on the quotient
    const double q1 = x.hi / y.hi;
    DoubleDouble r = x + (y * (-q1));
    const double q2 = r.hi / y.hi;
    r = r + (y * (-q2));
    const double q3 = r.hi / y.hi;
    DoubleDouble q = quick_two_sum(q1, q2);
    return q + DoubleDouble{q3, 0.0};
}

inline DoubleDouble dd_sum(double a, double b) { return two_sum(a, b); }

}  // namespace detail

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
/// Exactly zero once a factor hits zero (a a nonpositive integer with -a < k).
inline double pochhammer(double a, int k) {
    if (k < 0) throw DomainError("pochhammer: negative k");
    double p = 1.0;
    for (int j = 0; j < k; ++j) {
        const double f = a + j;
        if (f == 0.0) return 0.0;
        p *= f;
    }
    return p;
}

/// 2F1(-n, b; c; x) as the finite sum over k = 0..n.
///
/// Terms come from the ratio recurrence
///   t_{k+1} = t_k (k - n)(b + k) x / ((c + k)(k + 1)),
/// so no factorials are formed. In compensated mode the recurrence and the
/// sum run in double-double, which keeps the result accurate to a few ulps
/// even when the alternating terms cancel heavily.
inline double hyp2f1_terminating(int n, double b, double c, double x,
                                 const PolyEvalSettings& settings = {}) {
    if (n < 0) throw DomainError("hyp2f1_terminating: negative degree");
    if (n > settings.max_degree)
        throw DegreeError("hyp2f1_terminating: degree " + std::to_string(n) +
                          " exceeds max_degree " + std::to_string(settings.max_degree));
    for (int k = 0; k < n; ++k) {
        if (c + k == 0.0)
            throw DomainError("hyp2f1_terminating: (c)_k vanishes at k=" + std::to_string(k + 1));
    }

    if (settings.summation == Summation::plain) {
        double term = 1.0;
        double sum = 1.0;
        for (int k = 0; k < n; ++k) {
            term *= (k - n) * (b + k) * x / ((c + k) * (k + 1));
            sum += term;
        }
        return sum;
    }

    using detail::DoubleDouble;
    DoubleDouble term{1.0, 0.0};
    DoubleDouble sum{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        const DoubleDouble num = detail::dd_sum(b, static_cast<double>(k)) *
                                 static_cast<double>(k - n) * x;
        const DoubleDouble den = detail::dd_sum(c, static_cast<double>(k)) *
                                 static_cast<double>(k + 1);
        term = term * num / den;
        sum = sum + term;
    }
    return sum.hi + sum.lo;
}

}  // namespace pdem
