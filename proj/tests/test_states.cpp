#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtele/qtele.hpp"
#include "test_util.hpp"

using namespace qtele;

TEST_CASE("pauli operators") {
    CHECK(pauli(0).max_abs_diff(ComplexMatrix::identity(2)) == doctest::Approx(0.0));

    // u2 is the real matrix [[0, 1], [-1, 0]].
    const ComplexMatrix u2 = pauli(2);
    CHECK(std::abs(u2(0, 1) - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(u2(1, 0) - Complex{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(u2(0, 0)) < 1e-15);

    for (int mu = 0; mu < 4; ++mu) {
        const ComplexMatrix u = pauli(mu);
        CHECK((u * u.adjoint()).max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
    }

    CHECK_THROWS_AS(pauli(4), std::out_of_range);
    CHECK_THROWS_AS(pauli(-1), std::out_of_range);
}

TEST_CASE("bell states") {
    const StateVector b0 = bell(0);
    CHECK(std::abs(b0[0] - Complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
    CHECK(std::abs(b0[3] - Complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
    CHECK(std::abs(b0[1]) < 1e-12);

    const StateVector b1 = bell(1);
    CHECK(std::abs(b1[1] - Complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
    CHECK(std::abs(b1[2] - Complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);

    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const Complex overlap = inner(bell(mu), bell(nu));
            CHECK(std::abs(overlap - (mu == nu ? Complex{1.0, 0.0} : Complex{0.0, 0.0})) < 1e-12);
        }

    CHECK_THROWS_AS(bell(5), std::out_of_range);
}

TEST_CASE("S and T matrices") {
    CHECK(s_matrix(0.0, 0.0).max_abs_diff(ComplexMatrix::identity(4)) == doctest::Approx(0.0));

    const ComplexMatrix t0 = t_matrix(0.0, 0.0);
    const ComplexMatrix expected = ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                                             {0.0, 0.0, 1.0, 0.0},
                                                             {0.0, 1.0, 0.0, 0.0},
                                                             {0.0, 0.0, 0.0, 1.0}});
    CHECK(t0.max_abs_diff(expected) == doctest::Approx(0.0));

    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const double th = (2.0 * rng.uniform01() - 1.0) * pi;
        const double ph = (2.0 * rng.uniform01() - 1.0) * pi;
        const auto [s, t] = s_t_matrices(th, ph, 0.3 * th, -0.7 * ph);
        CHECK((s.transpose() * s).max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
        CHECK((t.transpose() * t).max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
    }
}

TEST_CASE("upsilon00") {
    SUBCASE("zero angles factor into two Bell pairs") {
        const StateVector u = upsilon00(AnglePair(0.0, 0.0));
        // (1/2)(|0000> + |0110> + |1001> + |1111>) over qubits A3 A4 B1 B2.
        for (std::size_t idx = 0; idx < 16; ++idx) {
            const bool hit = idx == 0b0000 || idx == 0b0110 || idx == 0b1001 || idx == 0b1111;
            CHECK(std::abs(u[idx] - (hit ? Complex{0.5, 0.0} : Complex{0.0, 0.0})) < 1e-12);
        }
    }

    SUBCASE("normalized for generic angles") {
        const StateVector u = upsilon00(AnglePair(0.7, -1.2));
        CHECK(std::abs(inner(u, u) - Complex{1.0, 0.0}) < 1e-12);
    }

    SUBCASE("depends only on angle differences") {
        Rng rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            const double t1 = (2.0 * rng.uniform01() - 1.0) * 1.5;
            const double p1 = (2.0 * rng.uniform01() - 1.0) * 1.5;
            const double t2 = (2.0 * rng.uniform01() - 1.0) * 1.5;
            const double p2 = (2.0 * rng.uniform01() - 1.0) * 1.5;
            const double dt = (2.0 * rng.uniform01() - 1.0);
            const double dp = (2.0 * rng.uniform01() - 1.0);
            const StateVector a = upsilon00_full(t1, p1, t2, p2);
            const StateVector b = upsilon00_full(t1 + dt, p1 + dp, t2 + dt, p2 + dp);
            double diff = 0.0;
            for (std::size_t i = 0; i < 16; ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
            CHECK(diff < 1e-10);
        }
    }
}

TEST_CASE("upsilon family is an orthonormal basis") {
    const AnglePair angles(0.4, -0.9);

    SUBCASE("index (0,0) reproduces upsilon00") {
        const StateVector a = upsilon00(angles);
        const StateVector b = upsilon_munu(0, 0, angles);
        for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
    }

    SUBCASE("Gram matrix is the identity") {
        std::vector<StateVector> family;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) family.push_back(upsilon_munu(mu, nu, angles));
        for (std::size_t a = 0; a < 16; ++a)
            for (std::size_t b = 0; b < 16; ++b) {
                const Complex g = inner(family[a], family[b]);
                CHECK(std::abs(g - (a == b ? Complex{1.0, 0.0} : Complex{0.0, 0.0})) < 1e-10);
            }
    }

    SUBCASE("completeness: projectors resolve the identity") {
        ComplexMatrix sum(16, 16);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) sum += upsilon_munu(mu, nu, angles).projector();
        CHECK(sum.max_abs_diff(ComplexMatrix::identity(16)) < 1e-10);
    }
}

TEST_CASE("measurement basis") {
    const AnglePair angles(-0.55, 0.8);
    const std::vector<StateVector> basis = pi_basis(angles);
    REQUIRE(basis.size() == 16);

    for (const StateVector& v : basis) CHECK(std::abs(inner(v, v) - Complex{1.0, 0.0}) < 1e-12);

    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t b = a + 1; b < 16; ++b)
            CHECK(std::abs(inner(basis[a], basis[b])) < 1e-10);

    SUBCASE("zero-angle expansion pairs the qubits Bell-style") {
        const StateVector p0 = pi_state(0, 0, AnglePair(0.0, 0.0));
        // (1/2)(|0000> + |0110> + |1001> + |1111>) over qubits A1 A2 A3 A4.
        for (std::size_t idx = 0; idx < 16; ++idx) {
            const bool hit = idx == 0b0000 || idx == 0b0110 || idx == 0b1001 || idx == 0b1111;
            CHECK(std::abs(p0[idx] - (hit ? Complex{0.5, 0.0} : Complex{0.0, 0.0})) < 1e-12);
        }
    }
}

TEST_CASE("input states") {
    const StateVector zero = input_state(0.0);
    CHECK(std::abs(zero[0] - Complex{1.0, 0.0}) < 1e-15);

    const StateVector bellish = input_state(pi / 4.0);
    const StateVector b0 = bell(0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(bellish[i] - b0[i]) < 1e-12);

    const StateVector mid = input_state(0.3);
    CHECK(std::abs(inner(mid, mid) - Complex{1.0, 0.0}) < 1e-12);

    CHECK_THROWS_AS(input_state(-0.1), std::out_of_range);
    CHECK_THROWS_AS(input_state(pi / 2.0), std::out_of_range);
}

TEST_CASE("haar random states") {
    SUBCASE("deterministic for a fixed seed") {
        const StateVector a = haar_random_state(3, 12345u);
        const StateVector b = haar_random_state(3, 12345u);
        for (std::size_t i = 0; i < a.dim(); ++i) CHECK(a[i] == b[i]);
    }

    SUBCASE("normalized") {
        Rng rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector v = haar_random_state(2, rng);
            CHECK(std::abs(inner(v, v) - Complex{1.0, 0.0}) < 1e-12);
        }
    }

    SUBCASE("single-qubit overlap moment matches the invariant measure") {
        // |<0|psi>|^2 is uniform on [0, 1]: mean 1/2, variance 1/12.
        const std::size_t n = 100000;
        Rng rng(2024);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const StateVector v = haar_random_state(1, rng);
            sum += std::norm(v[0]);
        }
        const double mean = sum / static_cast<double>(n);
        const double three_sigma = 3.0 * std::sqrt(1.0 / 12.0 / static_cast<double>(n));
        CHECK(std::abs(mean - 0.5) < three_sigma);
    }

    CHECK_THROWS_AS(haar_random_state(0, 1u), std::invalid_argument);
}

TEST_CASE("angle pair validation") {
    CHECK_THROWS_AS(AnglePair(pi / 2.0, 0.0), std::out_of_range);
    CHECK_THROWS_AS(AnglePair(0.0, -pi / 2.0), std::out_of_range);
    CHECK_NOTHROW(AnglePair(1.5, -1.5));
}
