// Instance C: m = (1+z^2)^-2 with the STP mu=2 reference. The target
// potential is the constant -1 and the spectrum stays 2, 7, 14, 23.

#include <cstdio>

#include "pdem/pdem.hpp"

int main() {
    const pdem::MassProfile mass(pdem::MassKind::I, {1.0, 0.0, 1.0, 1.0});
    const pdem::TargetSystem ts = pdem::build_target(mass, pdem::ReferenceModel::stp(2.0));

    std::printf("%8s %12s %12s %14s\n", "z", "m(z)", "f(z)", "U_target(z)");
    for (double z : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
        std::printf("%8.3f %12.6f %12.6f %14.10f\n", z, pdem::mass_value(mass, z),
                    pdem::map_forward(ts.profile(), z), pdem::target_potential(ts, z));
    }

    pdem::VerifySettings s;
    s.states = false;
    const pdem::VerificationReport r = pdem::verify_target(ts, s);
    std::printf("\n%3s %10s %16s %10s\n", "k", "exact", "numeric", "rel err");
    for (const auto& row : r.rows)
        std::printf("%3d %10.4f %16.10f %10.2e\n", row.k, row.e_analytic, row.e_numeric, row.rel_err);
    std::printf("\nN = %d / %d on [%.1f, %.1f]\n", r.convergence.n_coarse, r.convergence.n_fine,
                r.convergence.z_lo, r.convergence.z_hi);
    return r.passed() ? 0 : 1;
}
