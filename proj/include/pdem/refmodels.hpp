#pragma once

// Exactly solvable constant-mass references on trigonometric domains:
//   STP  mu(mu-1) tan^2(a y)                     on (-pi/2a, pi/2a)
//   SCP  mu(mu-1) cot^2(a y)                     on (0, pi/a)
//   PTP  chi(chi-1)/sin^2(a y) + lam(lam-1)/cos^2(a y)   on (0, pi/2a)
// for H = -d^2/dy^2 + U. At scale a != 1 the strengths are kept and the
// effective exponents come from scaled_mu.

#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "pdem/errors.hpp"
#include "pdem/interval.hpp"
#include "pdem/quadrature.hpp"
#include "pdem/specfun.hpp"

namespace pdem {

enum class ReferenceKind { STP, SCP, PTP };
enum class Parity { even, odd, none };

inline const char* to_string(ReferenceKind k) {
    switch (k) {
        case ReferenceKind::STP: return "STP";
        case ReferenceKind::SCP: return "SCP";
        case ReferenceKind::PTP: return "PTP";
    }
    return "?";
}

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        case Parity::none: return "none";
    }
    return "?";
}

/// Root >= 1 of mu (mu - 1) = U0 / a^2.
inline double scaled_mu(double U0, double a) {
    if (!(U0 >= 0.0) || !(a > 0.0)) throw DomainError("scaled_mu: requires U0 >= 0 and a > 0");
    return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * U0 / (a * a)));
}

class ReferenceModel {
public:
    static ReferenceModel stp(double mu, double scale = 1.0) {
        return ReferenceModel(ReferenceKind::STP, mu, 0.0, 0.0, scale);
    }
    static ReferenceModel scp(double mu, double scale = 1.0) {
        return ReferenceModel(ReferenceKind::SCP, mu, 0.0, 0.0, scale);
    }
    static ReferenceModel ptp(double chi, double lambda, double scale = 1.0) {
        return ReferenceModel(ReferenceKind::PTP, 0.0, chi, lambda, scale);
    }

    [[nodiscard]] ReferenceKind kind() const { return kind_; }
    [[nodiscard]] double mu() const { return mu_; }
    [[nodiscard]] double chi() const { return chi_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double scale() const { return scale_; }

    [[nodiscard]] Interval domain() const {
        switch (kind_) {
            case ReferenceKind::STP: return {-kPi / (2 * scale_), kPi / (2 * scale_)};
            case ReferenceKind::SCP: return {0.0, kPi / scale_};
            case ReferenceKind::PTP: return {0.0, kPi / (2 * scale_)};
        }
        return {};
    }

    [[nodiscard]] ReferenceModel with_scale(double a) const {
        return ReferenceModel(kind_, mu_, chi_, lambda_, a);
    }

    /// Exponents of the unit-scale problem y' = a y, i.e. the ones entering
    /// the energies and eigenfunctions. Equal to mu (chi, lambda) at a = 1.
    [[nodiscard]] double effective_mu() const {
        return scale_ == 1.0 ? mu_ : scaled_mu(mu_ * (mu_ - 1.0), scale_);
    }
    [[nodiscard]] double effective_chi() const {
        return scale_ == 1.0 ? chi_ : scaled_mu(chi_ * (chi_ - 1.0), scale_);
    }
    [[nodiscard]] double effective_lambda() const {
        return scale_ == 1.0 ? lambda_ : scaled_mu(lambda_ * (lambda_ - 1.0), scale_);
    }

private:
    ReferenceModel(ReferenceKind kind, double mu, double chi, double lambda, double scale)
        : kind_(kind), mu_(mu), chi_(chi), lambda_(lambda), scale_(scale) {
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw DomainError("ReferenceModel: scale must be positive");
        if (kind == ReferenceKind::PTP) {
            if (!(chi >= 1.0) || !(lambda >= 1.0) || !std::isfinite(chi) || !std::isfinite(lambda))
                throw DomainError("ReferenceModel: PTP requires chi >= 1 and lambda >= 1");
        } else if (!(mu >= 1.0) || !std::isfinite(mu)) {
            throw DomainError("ReferenceModel: requires mu >= 1");
        }
    }

    ReferenceKind kind_;
    double mu_;
    double chi_;
    double lambda_;
    double scale_;
};

template <std::floating_point T>
T ref_potential(const ReferenceModel& model, T y) {
    if (!model.domain().contains(static_cast<double>(y)))
        throw DomainError("ref_potential: y=" + std::to_string(static_cast<double>(y)) +
                          " outside the open domain");
    const T t = static_cast<T>(model.scale()) * y;
    switch (model.kind()) {
        case ReferenceKind::STP: {
            const T tn = std::tan(t);
            return static_cast<T>(model.mu() * (model.mu() - 1.0)) * tn * tn;
        }
        case ReferenceKind::SCP: {
            const T ct = std::cos(t) / std::sin(t);
            return static_cast<T>(model.mu() * (model.mu() - 1.0)) * ct * ct;
        }
        case ReferenceKind::PTP: {
            const T s = std::sin(t);
            const T c = std::cos(t);
            return static_cast<T>(model.chi() * (model.chi() - 1.0)) / (s * s) +
                   static_cast<T>(model.lambda() * (model.lambda() - 1.0)) / (c * c);
        }
    }
    return 0;
}

/// Level k in ascending order (STP/SCP: even states at k = 2n, odd at 2n+1).
inline double ref_energy(const ReferenceModel& model, int k) {
    if (k < 0) throw DomainError("ref_energy: negative level index");
    const double a2 = model.scale() * model.scale();
    if (model.kind() == ReferenceKind::PTP) {
        const double s = 2.0 * k + model.effective_chi() + model.effective_lambda();
        return a2 * s * s;
    }
    const double mu = model.effective_mu();
    const int n = k / 2;
    const double e = (k % 2 == 0) ? 4.0 * n * (n + mu) + mu
                                  : (2.0 * n + 1.0) * (2.0 * n + 2.0 * mu + 1.0) + mu;
    return a2 * e;
}

inline Parity ref_parity(const ReferenceModel& model, int k) {
    if (model.kind() == ReferenceKind::PTP) return Parity::none;
    return k % 2 == 0 ? Parity::even : Parity::odd;
}

/// Unnormalized eigenfunction. SCP states are the STP ones moved by pi/2,
/// since cot^2 t = tan^2(t - pi/2); sin/cos are swapped rather than shifted
/// to keep full accuracy near the ends.
inline double ref_wavefunction_raw(const ReferenceModel& model, int k, double y,
                                   const PolyEvalSettings& poly = {}) {
    if (k < 0) throw DomainError("ref_wavefunction_raw: negative level index");
    if (!model.domain().contains(y))
        throw DomainError("ref_wavefunction_raw: y=" + std::to_string(y) +
                          " outside the open domain");
    const double t = model.scale() * y;
    const double s = std::sin(t);
    const double c = std::cos(t);
    const int n = k / 2;
    switch (model.kind()) {
        case ReferenceKind::STP: {
            const double mu = model.effective_mu();
            const double base = std::pow(c, mu);
            if (k % 2 == 0) return base * hyp2f1_terminating(n, n + mu, mu + 0.5, c * c, poly);
            return s * base * hyp2f1_terminating(n, n + mu + 1.0, mu + 0.5, c * c, poly);
        }
        case ReferenceKind::SCP: {
            const double mu = model.effective_mu();
            const double base = std::pow(s, mu);
            if (k % 2 == 0) return base * hyp2f1_terminating(n, n + mu, mu + 0.5, s * s, poly);
            return -c * base * hyp2f1_terminating(n, n + mu + 1.0, mu + 0.5, s * s, poly);
        }
        case ReferenceKind::PTP: {
            const double chi = model.effective_chi();
            const double lam = model.effective_lambda();
            return std::pow(s, chi) * std::pow(c, lam) *
                   hyp2f1_terminating(k, k + chi + lam, chi + 0.5, s * s, poly);
        }
    }
    return 0.0;
}

/// Printed SCP "antisymmetric" family at mu = 3:
///   sum_k (-n)_k (n+3)_k / (k! (7/2)_k) sin^{2k+3} y.
/// Kept for comparison only; it coincides with the even SCP state of level 2n.
inline double scp_printed_odd_mu3(const ReferenceModel& model, int n, double y) {
    if (model.kind() != ReferenceKind::SCP || model.mu() != 3.0 || model.scale() != 1.0)
        throw UnsupportedError("scp_printed_odd_mu3: only defined for SCP with mu = 3 at unit scale");
    if (n < 0) throw DomainError("scp_printed_odd_mu3: negative n");
    if (!model.domain().contains(y)) throw DomainError("scp_printed_odd_mu3: y outside domain");
    const double s = std::sin(y);
    double sum = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        sum += pochhammer(-n, k) * pochhammer(n + 3.0, k) / (fact * pochhammer(3.5, k)) *
               std::pow(s, 2 * k + 3);
    }
    return sum;
}

/// N > 0 with integral over the domain of (N Phi_raw)^2 equal to 1.
inline double ref_normalization(const ReferenceModel& model, int k,
                                const QuadratureSettings& quad = {}) {
    const double norm2 = integrate(
        [&](double y) {
            const double v = ref_wavefunction_raw(model, k, y);
            return v * v;
        },
        model.domain(), quad);
    if (!(norm2 > 0.0)) throw QuadratureError("ref_normalization: vanishing norm");
    return 1.0 / std::sqrt(norm2);
}

struct SpectrumLevel {
    int k = 0;
    double energy = 0.0;
    Parity parity = Parity::none;
};

struct SpectrumTable {
    std::vector<SpectrumLevel> levels;
};

inline SpectrumTable ref_spectrum_table(const ReferenceModel& model, int K) {
    if (K < 1) throw DomainError("ref_spectrum_table: K must be >= 1");
    SpectrumTable t;
    t.levels.reserve(K);
    for (int k = 0; k < K; ++k) t.levels.push_back({k, ref_energy(model, k), ref_parity(model, k)});
    return t;
}

}  // namespace pdem
