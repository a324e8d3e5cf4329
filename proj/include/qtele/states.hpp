// states.hpp
// Constructors for the pure states and operator bases used by the
// teleportation machinery: Pauli-type operators, Bell states, the S/T
// rotation pair, the Upsilon resource family, the 16-element measurement
// basis, parametrized input states, and Haar-random states.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmat.hpp"

namespace qtele {

inline constexpr double pi = std::numbers::pi;

// theta12 / phi12 parameters of the Upsilon family; both live strictly
// inside (-pi/2, pi/2).
struct AnglePair {
    double theta12;
    double phi12;

    AnglePair(double theta, double phi) : theta12(theta), phi12(phi) {
        if (!(std::abs(theta) < pi / 2.0) || !(std::abs(phi) < pi / 2.0))
            throw std::out_of_range("AnglePair: angles must lie strictly inside (-pi/2, pi/2)");
    }
};

// u^0 = I, u^1 = sigma_x, u^2 = i sigma_y (real), u^3 = sigma_z.
inline ComplexMatrix pauli(int mu) {
    switch (mu) {
        case 0: return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
        case 1: return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        case 2: return ComplexMatrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}});
        case 3: return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
        default: throw std::out_of_range("pauli: index must be in 0..3");
    }
}

// U^{mu nu} = u^mu (x) u^nu.
inline ComplexMatrix pauli_pair(int mu, int nu) { return tensor(pauli(mu), pauli(nu)); }

// |Bell_mu> = (u^mu (x) u^0)(|00> + |11>)/sqrt(2).
inline StateVector bell(int mu) {
    const ComplexMatrix u = pauli(mu);  // validates the index
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Complex> base{r, 0.0, 0.0, r};
    std::vector<Complex> out(4, Complex{0.0, 0.0});
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t a2 = 0; a2 < 2; ++a2)
                out[2 * a + b] += u(a, a2) * base[2 * a2 + b];
    return StateVector(std::move(out));
}

inline ComplexMatrix s_matrix(double theta1, double phi1) {
    const double ct = std::cos(theta1), st = std::sin(theta1);
    const double cp = std::cos(phi1), sp = std::sin(phi1);
    return ComplexMatrix::from_rows({{ct, 0.0, 0.0, -st},
                                     {0.0, cp, -sp, 0.0},
                                     {0.0, sp, cp, 0.0},
                                     {st, 0.0, 0.0, ct}});
}

inline ComplexMatrix t_matrix(double theta2, double phi2) {
    const double ct = std::cos(theta2), st = std::sin(theta2);
    const double cp = std::cos(phi2), sp = std::sin(phi2);
    return ComplexMatrix::from_rows({{ct, 0.0, 0.0, -st},
                                     {0.0, sp, cp, 0.0},
                                     {0.0, cp, -sp, 0.0},
                                     {st, 0.0, 0.0, ct}});
}

inline std::pair<ComplexMatrix, ComplexMatrix> s_t_matrices(double theta1, double phi1,
                                                            double theta2, double phi2) {
    return {s_matrix(theta1, phi1), t_matrix(theta2, phi2)};
}

// |Upsilon^00> = (1/2) sum_J (S|J>) (x) (T|J>), with the S-basis labels on
// the first two qubits.  Depends on the four angles only through the
// differences theta1 - theta2 and phi1 - phi2.
inline StateVector upsilon00_full(double theta1, double phi1, double theta2, double phi2) {
    const ComplexMatrix m = s_matrix(theta1, phi1) * t_matrix(theta2, phi2).transpose();
    std::vector<Complex> amps(16);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) amps[4 * a + b] = 0.5 * m(a, b);
    return StateVector(std::move(amps));
}

// Canonical gauge: theta2 = phi2 = 0.
inline StateVector upsilon00(const AnglePair& angles) {
    return upsilon00_full(angles.theta12, angles.phi12, 0.0, 0.0);
}

// |Upsilon^{mu nu}> = (U^{mu nu dag} (x) U^00) |Upsilon^00>: the label
// rotation acts on the sender-side pair (the first tensor factor, carrying
// the S-basis labels).  This is the family whose overlaps weight the
// teleportation bichannel; the resulting output states carry the
// characteristic cos(4 alpha) dependence of the damped resource.
inline StateVector upsilon_munu(int mu, int nu, const AnglePair& angles) {
    const ComplexMatrix udag = pauli_pair(mu, nu).adjoint();
    const StateVector base = upsilon00(angles);
    std::vector<Complex> out(16, Complex{0.0, 0.0});
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t a2 = 0; a2 < 4; ++a2) {
            const Complex w = udag(a, a2);
            if (w == Complex{0.0, 0.0}) continue;
            for (std::size_t b = 0; b < 4; ++b) out[4 * a + b] += w * base[4 * a2 + b];
        }
    return StateVector(std::move(out));
}

// Variant with the label rotation on the receiver-side pair (second factor).
// The measurement-based protocol's outcome statistics follow this family;
// the two families coincide up to index order when the resource angles
// vanish but differ for generic angles.
inline StateVector upsilon_munu_receiver(int mu, int nu, const AnglePair& angles) {
    const ComplexMatrix udag = pauli_pair(mu, nu).adjoint();
    const StateVector base = upsilon00(angles);
    std::vector<Complex> out(16, Complex{0.0, 0.0});
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t b2 = 0; b2 < 4; ++b2) out[4 * a + b] += udag(b, b2) * base[4 * a + b2];
    return StateVector(std::move(out));
}

// |Pi^{mu nu}> = (U^{mu nu} (x) U^00) |Pi^00>, with
// |Pi^00> = (1/2) sum_K (T|K>) (x) (S|K>).
inline StateVector pi_state(int mu, int nu, const AnglePair& angles) {
    const ComplexMatrix m =
        t_matrix(0.0, 0.0) * s_matrix(angles.theta12, angles.phi12).transpose();
    const ComplexMatrix u = pauli_pair(mu, nu);
    std::vector<Complex> out(16, Complex{0.0, 0.0});
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            Complex v{0.0, 0.0};
            for (std::size_t a2 = 0; a2 < 4; ++a2) v += u(a, a2) * (0.5 * m(a2, b));
            out[4 * a + b] = v;
        }
    return StateVector(std::move(out));
}

// All 16 measurement-basis states, ordered by index 4*mu + nu.
inline std::vector<StateVector> pi_basis(const AnglePair& angles) {
    std::vector<StateVector> basis;
    basis.reserve(16);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) basis.push_back(pi_state(mu, nu, angles));
    return basis;
}

// cos(eps)|00> + sin(eps)|11>, eps in [0, pi/4].
inline StateVector input_state(double epsilon) {
    if (epsilon < 0.0 || epsilon > pi / 4.0)
        throw std::out_of_range("input_state: epsilon must lie in [0, pi/4]");
    std::vector<Complex> amps{std::cos(epsilon), 0.0, 0.0, std::sin(epsilon)};
    return StateVector(std::move(amps));
}

// ---------------------------------------------------------------------------
// Randomness.  The generator is mt19937_64; Gaussian variates come from a
// hand-rolled Box-Muller so sequences do not depend on the standard
// library's distribution implementations.  Owned by the caller; no global
// state.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Normalized vector drawn from the unitarily invariant measure: 2^{n+1}
// independent standard Gaussians, then normalize.
inline StateVector haar_random_state(int n_qubits, Rng& rng) {
    if (n_qubits < 1) throw std::invalid_argument("haar_random_state: need at least one qubit");
    const std::size_t d = std::size_t{1} << n_qubits;
    std::vector<Complex> amps(d);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            amps[i] = Complex{rng.gaussian(), rng.gaussian()};
            n2 += std::norm(amps[i]);
        }
    } while (n2 <= 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& a : amps) a *= inv;
    return StateVector(std::move(amps));
}

inline StateVector haar_random_state(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_state(n_qubits, rng);
}

}  // namespace qtele
