#pragma once

// Position-dependent mass families, their derivatives and the maps
// y = f(z) + shift with f' = sqrt(m).
//
//   I    m = [delta / (alpha + beta z + gamma z^2)]^2         z real
//   II   m = [alpha z / (beta^4 + gamma^4 z^4)]^2              z > 0
//   III  m = [alpha z^2 / (beta^2 + gamma^2 z^6)]^2            z real

#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "pdem/errors.hpp"
#include "pdem/interval.hpp"
#include "pdem/jet.hpp"
#include "pdem/quadrature.hpp"
#include "pdem/refmodels.hpp"

namespace pdem {

enum class MassKind { I, II, III };

inline const char* to_string(MassKind k) {
    switch (k) {
        case MassKind::I: return "I";
        case MassKind::II: return "II";
        case MassKind::III: return "III";
    }
    return "?";
}

struct MassParameters {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;  // kind I only

    [[nodiscard]] double discriminant() const { return 4.0 * alpha * gamma - beta * beta; }
};

struct Violation {
    std::string relation;  ///< e.g. "Delta > 0"
    double value = 0.0;    ///< offending value of the left-hand side
};

inline std::vector<Violation> validate(const MassParameters& p, MassKind kind) {
    std::vector<Violation> out;
    auto require = [&](bool ok, const char* rel, double v) {
        if (!ok) out.push_back({rel, v});
    };
    auto finite = std::isfinite(p.alpha) && std::isfinite(p.beta) && std::isfinite(p.gamma) &&
                  std::isfinite(p.delta);
    require(finite, "parameters finite", 0.0);
    switch (kind) {
        case MassKind::I:
            require(p.gamma > 0.0, "gamma > 0", p.gamma);
            require(p.delta > 0.0, "delta > 0", p.delta);
            require(p.discriminant() > 0.0, "Delta > 0", p.discriminant());
            break;
        case MassKind::II:
            require(p.alpha > 0.0, "alpha > 0", p.alpha);
            require(p.beta != 0.0, "beta != 0", p.beta);
            require(p.gamma != 0.0, "gamma != 0", p.gamma);
            break;
        case MassKind::III:
            require(p.alpha > 0.0, "alpha > 0", p.alpha);
            require(p.beta > 0.0, "beta > 0", p.beta);
            require(p.gamma > 0.0, "gamma > 0", p.gamma);
            break;
    }
    return out;
}

inline std::string describe(const std::vector<Violation>& v) {
    std::string s;
    for (const auto& x : v) {
        if (!s.empty()) s += "; ";
        s += x.relation + " violated (value " + std::to_string(x.value) + ")";
    }
    return s;
}

class MassProfile {
public:
    MassProfile(MassKind kind, MassParameters params, double shift = 0.0)
        : kind_(kind), params_(params), shift_(shift) {
        const auto v = validate(params, kind);
        if (!v.empty()) throw DomainError("MassProfile: " + describe(v));
        if (!std::isfinite(shift)) throw DomainError("MassProfile: shift must be finite");
    }

    [[nodiscard]] MassKind kind() const { return kind_; }
    [[nodiscard]] const MassParameters& params() const { return params_; }
    [[nodiscard]] double shift() const { return shift_; }
    [[nodiscard]] MassProfile with_shift(double s) const { return {kind_, params_, s}; }

    [[nodiscard]] Interval z_domain() const {
        return kind_ == MassKind::II ? Interval{0.0, kInf} : Interval{-kInf, kInf};
    }

    /// Point where f = 0 (before the shift).
    [[nodiscard]] double z_center() const {
        return kind_ == MassKind::I ? -params_.beta / (2.0 * params_.gamma) : 0.0;
    }

    /// Whether m vanishes somewhere inside the open z-domain.
    [[nodiscard]] bool vanishes_inside() const { return kind_ == MassKind::III; }

    void check_domain(double z, const char* who) const {
        if (!std::isfinite(z) || !z_domain().contains(z))
            throw DomainError(std::string(who) + ": z=" + std::to_string(z) +
                              " outside the mass domain");
    }

private:
    MassKind kind_;
    MassParameters params_;
    double shift_;
};

/// sqrt(m), generic over double and Jet.
template <class T>
T mass_sqrt(const MassProfile& profile, T z) {
    profile.check_domain(value_of(z), "mass_value");
    const MassParameters& p = profile.params();
    switch (profile.kind()) {
        case MassKind::I: return p.delta / (p.alpha + p.beta * z + p.gamma * z * z);
        case MassKind::II: {
            const T z2 = z * z;
            const double b2 = p.beta * p.beta;
            const double g2 = p.gamma * p.gamma;
            return p.alpha * z / (b2 * b2 + g2 * g2 * (z2 * z2));
        }
        case MassKind::III: {
            const T z2 = z * z;
            return p.alpha * z2 / (p.beta * p.beta + p.gamma * p.gamma * (z2 * z2 * z2));
        }
    }
    return T(0.0);
}

template <class T>
T mass_value(const MassProfile& profile, T z) {
    const T s = mass_sqrt(profile, z);
    return s * s;
}

namespace detail {

template <class T>
struct SqrtMassDerivs {
    T s;
    T s1;
    T s2;
};

template <std::floating_point T>
SqrtMassDerivs<T> sqrt_mass_derivs(const MassProfile& profile, T z) {
    profile.check_domain(static_cast<double>(z), "mass derivative");
    const MassParameters& p = profile.params();
    const T alpha = p.alpha;
    switch (profile.kind()) {
        case MassKind::I: {
            const T delta = p.delta;
            const T q = alpha + p.beta * z + p.gamma * z * z;
            const T q1 = p.beta + 2 * p.gamma * z;
            const T q2 = 2 * p.gamma;
            return {delta / q, -delta * q1 / (q * q),
                    delta * (2 * q1 * q1 / (q * q * q) - q2 / (q * q))};
        }
        case MassKind::II: {
            const T b4 = std::pow(T(p.beta), 4);
            const T g4 = std::pow(T(p.gamma), 4);
            const T z4 = std::pow(z, 4);
            const T D = b4 + g4 * z4;
            return {alpha * z / D, alpha * (b4 - 3 * g4 * z4) / (D * D),
                    alpha * g4 * z * z * z * (12 * g4 * z4 - 20 * b4) / (D * D * D)};
        }
        case MassKind::III: {
            const T b2 = T(p.beta) * p.beta;
            const T g2 = T(p.gamma) * p.gamma;
            const T z6 = std::pow(z, 6);
            const T D = b2 + g2 * z6;
            const T N = 2 * alpha * (b2 * z - 2 * g2 * z6 * z);
            const T N1 = 2 * alpha * (b2 - 14 * g2 * z6);
            const T D1 = 6 * g2 * std::pow(z, 5);
            return {alpha * z * z / D, N / (D * D), (N1 * D - 2 * N * D1) / (D * D * D)};
        }
    }
    return {0, 0, 0};
}

}  // namespace detail

template <std::floating_point T>
T mass_d1(const MassProfile& profile, T z) {
    const auto d = detail::sqrt_mass_derivs(profile, z);
    return 2 * d.s * d.s1;
}

template <std::floating_point T>
T mass_d2(const MassProfile& profile, T z) {
    const auto d = detail::sqrt_mass_derivs(profile, z);
    return 2 * (d.s1 * d.s1 + d.s * d.s2);
}

/// Range of f before the shift is applied.
inline Interval unshifted_range(const MassProfile& profile) {
    const MassParameters& p = profile.params();
    switch (profile.kind()) {
        case MassKind::I: {
            const double h = kPi * p.delta / std::sqrt(p.discriminant());
            return {-h, h};
        }
        case MassKind::II:
            return {0.0, p.alpha * kPi / (4.0 * p.beta * p.beta * p.gamma * p.gamma)};
        case MassKind::III: {
            const double h = p.alpha * kPi / (6.0 * p.beta * p.gamma);
            return {-h, h};
        }
    }
    return {};
}

inline Interval map_range(const MassProfile& profile) {
    const Interval r = unshifted_range(profile);
    return {r.lo + profile.shift(), r.hi + profile.shift()};
}

template <std::floating_point T>
T map_forward(const MassProfile& profile, T z) {
    profile.check_domain(static_cast<double>(z), "map_forward");
    const MassParameters& p = profile.params();
    T f = 0;
    switch (profile.kind()) {
        case MassKind::I: {
            const T sd = std::sqrt(T(p.discriminant()));
            f = 2 * T(p.delta) / sd * std::atan((p.beta + 2 * p.gamma * z) / sd);
            break;
        }
        case MassKind::II: {
            const T b2 = T(p.beta) * p.beta;
            const T g2 = T(p.gamma) * p.gamma;
            f = T(p.alpha) / (2 * b2 * g2) * std::atan(g2 * z * z / b2);
            break;
        }
        case MassKind::III:
            f = T(p.alpha) / (3 * T(p.beta) * p.gamma) * std::atan(p.gamma * z * z * z / p.beta);
            break;
    }
    return f + profile.shift();
}

/// Integral of sqrt(m) over [z_from, z_to] (either end may sit on the closure
/// of the domain, e.g. z = 0 for kind II).
inline double map_forward_quadrature(const MassProfile& profile, double z_from, double z_to,
                                     const QuadratureSettings& quad = {}) {
    const Interval dom = profile.z_domain();
    auto in_closure = [&](double z) { return std::isfinite(z) && z >= dom.lo && z <= dom.hi; };
    if (!in_closure(z_from) || !in_closure(z_to))
        throw DomainError("map_forward_quadrature: limits outside the mass domain");
    return integrate([&](double z) { return mass_sqrt(profile, z); }, Interval{z_from, z_to}, quad);
}

/// map_inverse by bisection on the monotone map, to 1e-12 in y.
inline double map_inverse_bisection(const MassProfile& profile, double y) {
    const Interval r = map_range(profile);
    if (!r.contains(y)) throw RangeError("map_inverse: y=" + std::to_string(y) + " outside range");
    const Interval dom = profile.z_domain();
    double lo = profile.kind() == MassKind::II ? 0.0 : profile.z_center() - 1.0;
    double hi = profile.z_center() + 1.0;
    auto f = [&](double z) { return z <= dom.lo ? r.lo : map_forward(profile, z); };
    for (int i = 0; i < 200 && f(hi) < y; ++i) hi = lo + 2.0 * (hi - lo);
    if (profile.kind() != MassKind::II)
        for (int i = 0; i < 200 && f(lo) > y; ++i) lo = hi - 2.0 * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm - y) <= 1e-12 || mid <= lo || mid >= hi) return mid;
        (fm < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double map_inverse(const MassProfile& profile, double y) {
    const Interval r = map_range(profile);
    if (!r.contains(y)) throw RangeError("map_inverse: y=" + std::to_string(y) + " outside range");
    const MassParameters& p = profile.params();
    const double u = y - profile.shift();
    double z = NAN;
    switch (profile.kind()) {
        case MassKind::I: {
            const double sd = std::sqrt(p.discriminant());
            z = (-p.beta + sd * std::tan(sd * u / (2.0 * p.delta))) / (2.0 * p.gamma);
            break;
        }
        case MassKind::II: {
            const double b2 = p.beta * p.beta;
            const double g2 = p.gamma * p.gamma;
            z = std::abs(p.beta) / std::abs(p.gamma) * std::sqrt(std::tan(2.0 * b2 * g2 * u / p.alpha));
            break;
        }
        case MassKind::III:
            z = std::cbrt(p.beta / p.gamma * std::tan(3.0 * p.beta * p.gamma * u / p.alpha));
            break;
    }
    if (!std::isfinite(z) || !profile.z_domain().contains(z)) return map_inverse_bisection(profile, y);
    return z;
}

/// Parameter relation and shift that make range(f) + shift equal the
/// reference domain at unit scale.
struct ConstraintSpec {
    MassKind kind = MassKind::I;
    ReferenceKind reference = ReferenceKind::STP;
    std::string parameter_relation;
    double shift = 0.0;

    /// Value the constrained parameter (delta for kind I, alpha otherwise) must take.
    [[nodiscard]] double required_value(const MassParameters& p) const {
        switch (kind) {
            case MassKind::I:
                return std::sqrt(p.discriminant()) / (reference == ReferenceKind::PTP ? 4.0 : 2.0);
            case MassKind::II:
                return (reference == ReferenceKind::PTP ? 2.0 : 4.0) * p.beta * p.beta * p.gamma *
                       p.gamma;
            case MassKind::III:
                return (reference == ReferenceKind::PTP ? 1.5 : 3.0) * p.beta * p.gamma;
        }
        return 0.0;
    }

    [[nodiscard]] double constrained_value(const MassParameters& p) const {
        return kind == MassKind::I ? p.delta : p.alpha;
    }

    [[nodiscard]] bool satisfied(const MassParameters& p) const {
        const double want = required_value(p);
        return std::isfinite(want) &&
               std::abs(constrained_value(p) - want) <= 1e-12 * std::abs(want);
    }

    /// Copy of p with the constrained parameter set to its required value.
    [[nodiscard]] MassParameters enforce(MassParameters p) const {
        (kind == MassKind::I ? p.delta : p.alpha) = required_value(p);
        return p;
    }
};

inline ConstraintSpec strict_constraint(MassKind kind, ReferenceKind ref) {
    ConstraintSpec c;
    c.kind = kind;
    c.reference = ref;
    switch (kind) {
        case MassKind::I:
            c.parameter_relation = ref == ReferenceKind::PTP ? "delta = sqrt(Delta)/4"
                                                             : "delta = sqrt(Delta)/2";
            c.shift = ref == ReferenceKind::STP ? 0.0 : (ref == ReferenceKind::SCP ? kPi / 2 : kPi / 4);
            break;
        case MassKind::II:
            c.parameter_relation = ref == ReferenceKind::PTP ? "alpha = 2 beta^2 gamma^2"
                                                             : "alpha = 4 beta^2 gamma^2";
            c.shift = ref == ReferenceKind::STP ? -kPi / 2 : 0.0;
            break;
        case MassKind::III:
            c.parameter_relation = ref == ReferenceKind::PTP ? "alpha = 3 beta gamma / 2"
                                                             : "alpha = 3 beta gamma";
            c.shift = ref == ReferenceKind::STP ? 0.0 : (ref == ReferenceKind::SCP ? kPi / 2 : kPi / 4);
            break;
    }
    return c;
}

}  // namespace pdem
