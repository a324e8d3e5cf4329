#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtele/qtele.hpp"
#include "test_util.hpp"

using namespace qtele;

TEST_CASE("amplitude damping") {
    SUBCASE("q = 1 is the identity channel") {
        Rng rng(1);
        const DensityMatrix rho = qtest::random_density(1, rng);
        const DensityMatrix out = apply_channel(amplitude_damping(DampingStrength(1.0)), rho, {1});
        CHECK(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    SUBCASE("q = 0 decays everything to the ground state") {
        Rng rng(2);
        const DensityMatrix rho = qtest::random_density(1, rng);
        const DensityMatrix out = apply_channel(amplitude_damping(DampingStrength(0.0)), rho, {1});
        ComplexMatrix ground(2, 2);
        ground(1, 1) = 1.0;
        CHECK(out.matrix().max_abs_diff(ground) < 1e-12);
    }

    SUBCASE("sum rule") {
        const KrausChannel ch = amplitude_damping(DampingStrength(0.3));
        ComplexMatrix sum(2, 2);
        for (const ComplexMatrix& k : ch.ops()) sum += k.adjoint() * k;
        CHECK(sum.max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
    }

    CHECK_THROWS_AS(DampingStrength(-0.1), std::out_of_range);
    CHECK_THROWS_AS(DampingStrength(1.1), std::out_of_range);
}

TEST_CASE("correlated amplitude damping") {
    SUBCASE("sum rule at q = 0.25") {
        const KrausChannel ch = correlated_amplitude_damping(DampingStrength(0.25));
        ComplexMatrix sum(4, 4);
        for (const ComplexMatrix& k : ch.ops()) sum += k.adjoint() * k;
        CHECK(sum.max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
    }

    SUBCASE("q = 1 is the identity channel") {
        Rng rng(3);
        const DensityMatrix rho = qtest::random_density(2, rng);
        const DensityMatrix out =
            apply_channel(correlated_amplitude_damping(DampingStrength(1.0)), rho, {1, 2});
        CHECK(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    SUBCASE("|01><01| passes through untouched") {
        for (double q : {0.0, 0.3, 0.8}) {
            const DensityMatrix rho = DensityMatrix::from_pure(StateVector::basis_state(2, 1));
            const DensityMatrix out =
                apply_channel(correlated_amplitude_damping(DampingStrength(q)), rho, {1, 2});
            CHECK(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        }
    }
}

TEST_CASE("apply_channel") {
    SUBCASE("identity channel leaves states alone") {
        const KrausChannel id(2, {ComplexMatrix::identity(2)});
        Rng rng(5);
        const DensityMatrix rho = qtest::random_density(3, rng);
        const DensityMatrix out = apply_channel(id, rho, {2});
        CHECK(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    SUBCASE("damping qubit B of a Bell pair gives the xi family") {
        for (double q : {0.0, 0.2, 0.7, 1.0}) {
            const DensityMatrix viaChannel = apply_channel(
                amplitude_damping(DampingStrength(q)), DensityMatrix::from_pure(bell(0)), {2});
            CHECK(viaChannel.matrix().max_abs_diff(xi(q).matrix()) < 1e-12);
        }
    }

    SUBCASE("trace preserved and output positive on random states") {
        Rng rng(8);
        for (int trial = 0; trial < 100; ++trial) {
            const double q = rng.uniform01();
            const DensityMatrix rho = qtest::random_density(2, rng);
            const int target = rng.uniform01() < 0.5 ? 1 : 2;
            const DensityMatrix out =
                apply_channel(amplitude_damping(DampingStrength(q)), rho, {target});
            CHECK(std::abs(out.matrix().trace() - Complex{1.0, 0.0}) < 1e-10);
            CHECK(herm_eigenvalues(out.matrix()).front() > -1e-9);
        }
    }

    SUBCASE("errors") {
        const KrausChannel damp = amplitude_damping(DampingStrength(0.5));
        Rng rng(9);
        const DensityMatrix rho = qtest::random_density(2, rng);
        CHECK_THROWS_AS(apply_channel(damp, rho, {1, 2}), std::invalid_argument);  // dim mismatch
        const KrausChannel corr = correlated_amplitude_damping(DampingStrength(0.5));
        CHECK_THROWS_AS(apply_channel(corr, rho, {1, 1}), std::invalid_argument);  // repeated
        CHECK_THROWS_AS(apply_channel(damp, rho, {3}), std::out_of_range);
    }

    SUBCASE("constructed channels always satisfy the sum rule") {
        Rng rng(10);
        for (int trial = 0; trial < 100; ++trial) {
            const double q = rng.uniform01();
            CHECK_NOTHROW(amplitude_damping(DampingStrength(q)));
            CHECK_NOTHROW(correlated_amplitude_damping(DampingStrength(q)));
        }
    }

    SUBCASE("bad kraus set is rejected") {
        ComplexMatrix half = ComplexMatrix::identity(2) * Complex{0.5, 0.0};
        CHECK_THROWS_AS(KrausChannel(2, {half}), std::invalid_argument);
    }
}

TEST_CASE("xi family") {
    SUBCASE("singlet fraction follows (1 + sqrt(q))^2 / 4") {
        // Analytic overlap: (I (x) K0)|Bell0> = (sqrt(q)|00> + |11>)/sqrt(2),
        // so <Bell0|xi|Bell0> = ((1 + sqrt(q))/2)^2; the K1 branch is orthogonal.
        for (int i = 0; i < 20; ++i) {
            const double q = static_cast<double>(i) / 19.0;
            const double expected = (1.0 + std::sqrt(q)) * (1.0 + std::sqrt(q)) / 4.0;
            CHECK(singlet_fraction(xi(q)) == doctest::Approx(expected).epsilon(1e-10));
        }
    }

    SUBCASE("xi_prime is a valid state") {
        for (double q : {0.0, 0.05, 0.5, 1.0}) {
            const DensityMatrix rho = xi_prime(q);
            CHECK(std::abs(rho.matrix().trace() - Complex{1.0, 0.0}) < 1e-10);
            CHECK(herm_eigenvalues(rho.matrix()).front() > -1e-9);
        }
    }
}

TEST_CASE("big_xi") {
    SUBCASE("q = 1 keeps the pure resource") {
        const AnglePair angles(0.2, 0.2);
        const DensityMatrix rho = big_xi(0.2, 0.2, 1.0);
        const ComplexMatrix pure = upsilon00(angles).projector();
        CHECK(rho.matrix().max_abs_diff(pure) < 1e-12);
    }

    SUBCASE("matching-angle overlap is the closed form") {
        // (3 + sqrt(q))^2 / 16 at q = 0.5.
        const double expected = (3.0 + std::sqrt(0.5)) * (3.0 + std::sqrt(0.5)) / 16.0;
        const DensityMatrix rho = big_xi(0.2, 0.2, 0.5);
        CHECK(overlap_G(rho, AnglePair(0.2, 0.2)) == doctest::Approx(expected).epsilon(1e-10));
    }

    SUBCASE("valid density matrix") {
        const DensityMatrix rho = big_xi(0.3, -0.4, 0.3);
        CHECK(std::abs(rho.matrix().trace() - Complex{1.0, 0.0}) < 1e-10);
        CHECK(herm_eigenvalues(rho.matrix()).front() > -1e-9);
    }
}

TEST_CASE("big_xi_prime") {
    SUBCASE("zero-angle overlap at q = 0 is 5/8") {
        const DensityMatrix rho = big_xi_prime(0.0, 0.0, 0.0);
        CHECK(overlap_G(rho, AnglePair(0.0, 0.0)) == doctest::Approx(5.0 / 8.0).epsilon(1e-10));
    }

    SUBCASE("q = 1 equals big_xi at q = 1") {
        const DensityMatrix a = big_xi_prime(0.25, 0.1, 1.0);
        const DensityMatrix b = big_xi(0.25, 0.1, 1.0);
        CHECK(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }

    SUBCASE("valid density matrix at small q") {
        const DensityMatrix rho = big_xi_prime(0.1, 0.0, 0.02);
        CHECK(std::abs(rho.matrix().trace() - Complex{1.0, 0.0}) < 1e-10);
        CHECK(herm_eigenvalues(rho.matrix()).front() > -1e-9);
    }
}
