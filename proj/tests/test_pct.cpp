#include <catch_amalgamated.hpp>

#include <cmath>

#include "pdem/pct.hpp"

using namespace pdem;

namespace {

const MassProfile instance_c(MassKind::I, {1.0, 0.0, 1.0, 1.0});

// Closed forms of the quarter correction (derived with sympy).
double vm_kind_i(const MassParameters& p, double z) {
    return -(4 * p.alpha * p.gamma + p.beta * p.beta + 8 * p.beta * p.gamma * z + 8 * p.gamma * p.gamma * z * z) /
           (4 * p.delta * p.delta);
}
double vm_kind_ii(const MassParameters& p, double z) {
    const double b4 = std::pow(p.beta, 4), g4 = std::pow(p.gamma, 4), z4 = std::pow(z, 4);
    return -(5 * b4 * b4 + 10 * b4 * g4 * z4 + 21 * g4 * g4 * z4 * z4) / (4 * p.alpha * p.alpha * z4);
}
double vm_kind_iii(const MassParameters& p, double z) {
    const double z6 = std::pow(z, 6);
    const double D = p.beta * p.beta + p.gamma * p.gamma * z6;
    return -(4 * D * D / z6 - 3 * p.gamma * p.gamma * D + 9 * std::pow(p.gamma, 4) * z6) / (p.alpha * p.alpha);
}

}  // namespace

TEST_CASE("instance C target potential is constant") {
    const TargetSystem ts = build_target(instance_c, ReferenceModel::stp(2));
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double z = -5.0 + 10.0 * i / 1000;
        worst = std::max(worst, std::abs(target_potential(ts, z) + 1.0));
    }
    CHECK(worst <= 1e-12);
    CHECK(mass_correction(instance_c, 0.0) == Catch::Approx(-1.0).epsilon(1e-15));
    CHECK(mass_correction(instance_c, 1.0) == Catch::Approx(-3.0).epsilon(1e-15));
    CHECK(target_energy(ts, 3) == 23.0);

    const TargetSystem ts3 = build_target(instance_c, ReferenceModel::stp(3));
    for (double z : {-3.0, -0.5, 0.0, 1.7, 4.0})
        CHECK(target_potential(ts3, z) == Catch::Approx(4 * z * z - 1).epsilon(1e-12).margin(1e-12));
}

TEST_CASE("mass corrections match closed forms") {
    const MassParameters p1{1.3, 0.4, 0.9, 0.7};
    const MassParameters p2{2.0, 0.9, 1.3};
    const MassParameters p3{1.5, 1.1, 0.7};
    for (double z : {0.2, 0.9, 1.6, 2.5}) {
        CHECK(mass_correction(MassProfile(MassKind::I, p1), -z) == Catch::Approx(vm_kind_i(p1, -z)).epsilon(1e-12));
        CHECK(mass_correction(MassProfile(MassKind::II, p2), z) == Catch::Approx(vm_kind_ii(p2, z)).epsilon(1e-12));
        CHECK(mass_correction(MassProfile(MassKind::III, p3), z) == Catch::Approx(vm_kind_iii(p3, z)).epsilon(1e-12));
        CHECK(mass_correction(MassProfile(MassKind::III, p3), -z) == Catch::Approx(vm_kind_iii(p3, -z)).epsilon(1e-12));
        CHECK(mass_correction(MassProfile(MassKind::II, p2), z, CorrectionConvention::eighth) ==
              Catch::Approx(vm_kind_ii(p2, z) / 2).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mass_correction(MassProfile(MassKind::III, p3), 0.0), SingularError);
}

TEST_CASE("kind III strict STP potential") {
    const TargetSystem ts = build_target(MassProfile(MassKind::III, {3.0, 1.0, 1.0}), ReferenceModel::stp(2));
    for (double z : {-1.5, -0.3, 0.25, 0.8, 1.2})
        CHECK(target_potential(ts, z) ==
              Catch::Approx(2 * std::pow(z, 6) + vm_kind_iii({3.0, 1.0, 1.0}, z)).epsilon(1e-11));
    CHECK_THROWS_AS(target_potential(ts, 0.0), SingularError);
}

TEST_CASE("strict and scaled construction") {
    CHECK_THROWS_AS(build_target(MassProfile(MassKind::I, {1.0, 0.0, 1.0, 2.0}), ReferenceModel::stp(2)),
                    ConstraintError);
    CHECK_THROWS_AS(build_target(instance_c, ReferenceModel::stp(2, 2.0)), ConstraintError);
    const TargetSystem scp = build_target(instance_c, ReferenceModel::scp(2));
    CHECK(scp.profile().shift() == Catch::Approx(kPi / 2));
    const TargetSystem ptp = build_target(MassProfile(MassKind::I, {1.0, 0.0, 1.0, 0.5}), ReferenceModel::ptp(2, 2));
    CHECK(ptp.profile().shift() == Catch::Approx(kPi / 4));

    // range of f for delta = 2 is (-pi, pi), so the reference is squeezed by a = 1/2
    const TargetSystem sc = build_target(MassProfile(MassKind::I, {1.0, 0.0, 1.0, 2.0}), ReferenceModel::stp(2), Mode::scaled);
    CHECK(sc.reference().scale() == Catch::Approx(0.5));
    CHECK(sc.profile().shift() == Catch::Approx(0.0).margin(1e-15));
    const Interval r = map_range(sc.profile());
    CHECK(r.lo == Catch::Approx(sc.reference().domain().lo));
    CHECK(r.hi == Catch::Approx(sc.reference().domain().hi));
    const double mt = scaled_mu(2.0, 0.5);
    CHECK(target_energy(sc, 0) == Catch::Approx(0.25 * mt));
}

TEST_CASE("transported states") {
    const TargetSystem ts = build_target(instance_c, ReferenceModel::stp(2));
    // Psi_0 = N m^{1/4} cos^2(arctan z) = N (1+z^2)^{-3/2}, N^2 = 8 / (3 pi)
    const double n0 = std::sqrt(8.0 / (3.0 * kPi));
    for (double z : {-2.0, 0.0, 0.3, 5.0})
        CHECK(transport_wavefunction(ts, 0, z) == Catch::Approx(n0 * std::pow(1 + z * z, -1.5)).epsilon(1e-10));
    const TransportedState psi(ts, 2);
    CHECK(psi.energy() == 14.0);
    CHECK(psi.level() == 2);

    const TargetSystem t3 = build_target(MassProfile(MassKind::III, {3.0, 1.0, 1.0}), ReferenceModel::stp(2));
    CHECK(transport_raw(t3, 0, 0.0) == 0.0);
    CHECK(transport_raw(t3, 1, 0.5) != 0.0);
}
