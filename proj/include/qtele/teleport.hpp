// teleport.hpp
// Teleportation dynamics: the generalized depolarizing channel (single
// qubit) and bichannel (two qubits) induced by mixed resources, an explicit
// measurement-based protocol simulation that must agree with the channel
// formulas, and Monte Carlo fidelity averages over Haar-random inputs.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "measures.hpp"
#include "qmat.hpp"
#include "states.hpp"

namespace qtele {

// rho_out = sum_mu <Bell_mu| chi |Bell_mu> u^{mu dag} rho u^mu.
inline DensityMatrix depolarizing_channel_T0(const DensityMatrix& chi,
                                             const DensityMatrix& input) {
    if (chi.n_qubits() != 2)
        throw std::invalid_argument("depolarizing_channel_T0: resource must be two qubits");
    if (input.n_qubits() != 1)
        throw std::invalid_argument("depolarizing_channel_T0: input must be one qubit");

    ComplexMatrix out(2, 2);
    for (int mu = 0; mu < 4; ++mu) {
        const StateVector b = bell(mu);
        Complex p{0.0, 0.0};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) p += std::conj(b[i]) * chi(i, j) * b[j];
        const ComplexMatrix u = pauli(mu);
        out += Complex{p.real(), 0.0} * (u.adjoint() * input.matrix() * u);
    }
    return DensityMatrix(std::move(out));
}

namespace detail {

inline double state_expectation(const DensityMatrix& rho, const StateVector& v) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (v[i] == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < v.dim(); ++j) s += std::conj(v[i]) * rho(i, j) * v[j];
    }
    return s.real();
}

}  // namespace detail

// The 16 resource overlaps p_{mu nu} = <Upsilon^{mu nu}(angles)| Xi |...>,
// indexed by 4*mu + nu.
inline std::array<double, 16> upsilon_overlaps(const DensityMatrix& Xi, const AnglePair& angles) {
    if (Xi.n_qubits() != 4)
        throw std::invalid_argument("upsilon_overlaps: resource must be four qubits");
    std::array<double, 16> p{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            p[static_cast<std::size_t>(4 * mu + nu)] =
                detail::state_expectation(Xi, upsilon_munu(mu, nu, angles));
    return p;
}

// Overlaps in the receiver-side family.  The measurement-based protocol's
// outcome mixture is exactly the Pauli-pair twirl with these weights.
inline std::array<double, 16> upsilon_overlaps_receiver(const DensityMatrix& Xi,
                                                        const AnglePair& angles) {
    if (Xi.n_qubits() != 4)
        throw std::invalid_argument("upsilon_overlaps_receiver: resource must be four qubits");
    std::array<double, 16> p{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            p[static_cast<std::size_t>(4 * mu + nu)] =
                detail::state_expectation(Xi, upsilon_munu_receiver(mu, nu, angles));
    return p;
}

// rho_out = sum_{mu nu} p_{mu nu} U^{mu nu dag} rho U^{mu nu} for a fixed
// overlap distribution.
inline DensityMatrix bichannel_from_overlaps(const std::array<double, 16>& p,
                                             const DensityMatrix& input) {
    if (input.n_qubits() != 2)
        throw std::invalid_argument("bichannel_from_overlaps: input must be two qubits");

    ComplexMatrix out(4, 4);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const double prob = p[static_cast<std::size_t>(4 * mu + nu)];
            if (std::abs(prob) < 1e-300) continue;
            const ComplexMatrix u = pauli_pair(mu, nu);
            out += Complex{prob, 0.0} * (u.adjoint() * input.matrix() * u);
        }
    return DensityMatrix(std::move(out));
}

// rho_out = sum_{mu nu} <Upsilon^{mu nu}|Xi|Upsilon^{mu nu}> U^{mu nu dag} rho U^{mu nu}.
inline DensityMatrix depolarizing_bichannel_E0(const DensityMatrix& Xi, const AnglePair& angles,
                                               const DensityMatrix& input) {
    return bichannel_from_overlaps(upsilon_overlaps(Xi, angles), input);
}

// Measurement statistics of the explicit protocol: outcome probabilities and
// Bob's recovered conditional states.  Outcomes with probability below the
// cutoff carry a zero matrix.
struct OutcomeDistribution {
    std::vector<double> probabilities;            // 16 entries, index 4*mu + nu
    std::vector<ComplexMatrix> conditional_outputs;  // recovered 4x4 states

    // Probability-weighted mixture of the conditional outputs.
    DensityMatrix mixture() const {
        ComplexMatrix m(4, 4);
        for (std::size_t k = 0; k < probabilities.size(); ++k) {
            if (probabilities[k] < tol::prob_cutoff) continue;
            m += Complex{probabilities[k], 0.0} * conditional_outputs[k];
        }
        return DensityMatrix(std::move(m));
    }
};

// Runs the measurement-based protocol: the six-qubit joint state carries the
// input on qubits 1-2 and the resource on qubits 3-6; qubits 1-4 are
// projected onto the 16-element measurement basis and Bob applies the
// recovery rotation U^{mu nu} for outcome (mu, nu).
inline OutcomeDistribution protocol_E0(const DensityMatrix& Xi, const AnglePair& angles,
                                       const StateVector& input) {
    if (Xi.n_qubits() != 4)
        throw std::invalid_argument("protocol_E0: resource must be four qubits");
    if (input.n_qubits() != 2)
        throw std::invalid_argument("protocol_E0: input must be two qubits");

    const ComplexMatrix joint = tensor(input.projector(), Xi.matrix());  // 64x64
    const std::vector<StateVector> basis = pi_basis(angles);

    OutcomeDistribution dist;
    dist.probabilities.assign(16, 0.0);
    dist.conditional_outputs.assign(16, ComplexMatrix(4, 4));

    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const std::size_t idx = static_cast<std::size_t>(4 * mu + nu);
            const StateVector& proj = basis[idx];

            // Bob's unnormalized state: <Pi|_{1..4} joint |Pi>_{1..4}.
            ComplexMatrix bob(4, 4);
            for (std::size_t a = 0; a < 16; ++a) {
                if (proj[a] == Complex{0.0, 0.0}) continue;
                for (std::size_t a2 = 0; a2 < 16; ++a2) {
                    if (proj[a2] == Complex{0.0, 0.0}) continue;
                    const Complex w = std::conj(proj[a]) * proj[a2];
                    for (std::size_t k = 0; k < 4; ++k)
                        for (std::size_t l = 0; l < 4; ++l)
                            bob(k, l) += w * joint(4 * a + k, 4 * a2 + l);
                }
            }

            const double prob = bob.trace().real();
            dist.probabilities[idx] = std::max(0.0, prob);
            if (prob < tol::prob_cutoff) continue;

            const ComplexMatrix recovery = pauli_pair(mu, nu);
            dist.conditional_outputs[idx] =
                (recovery * bob * recovery.adjoint()) * Complex{1.0 / prob, 0.0};
        }

    return dist;
}

struct MonteCarloEstimate {
    double mean;
    double std_error;
    std::size_t samples;
};

namespace detail {

// Per-sample seeds are derived with SplitMix64 so the stream is reproducible
// under any evaluation order.
inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
    return splitmix64(seed ^ splitmix64(0x9e3779b97f4a7c15ULL * (index + 1)));
}

inline MonteCarloEstimate summarize(double sum, double sum_sq, std::size_t n) {
    const double mean = sum / static_cast<double>(n);
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean) / static_cast<double>(n - 1);
    return MonteCarloEstimate{mean, std::sqrt(var), n};
}

}  // namespace detail

// Monte Carlo estimate of the average output fidelity of the bichannel over
// Haar-random two-qubit inputs.
inline MonteCarloEstimate avg_fidelity_mc(const DensityMatrix& Xi, const AnglePair& angles,
                                          std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 100) throw std::invalid_argument("avg_fidelity_mc: need at least 100 samples");
    const std::array<double, 16> p = upsilon_overlaps(Xi, angles);
    std::array<ComplexMatrix, 16> udag;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            udag[static_cast<std::size_t>(4 * mu + nu)] = pauli_pair(mu, nu).adjoint();

    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        Rng rng(detail::sample_seed(seed, s));
        const StateVector psi = haar_random_state(2, rng);
        double fid = 0.0;
        for (std::size_t k = 0; k < 16; ++k) {
            Complex amp{0.0, 0.0};
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    amp += std::conj(psi[i]) * udag[k](i, j) * psi[j];
            fid += p[k] * std::norm(amp);
        }
        sum += fid;
        sum_sq += fid * fid;
    }
    return detail::summarize(sum, sum_sq, n_samples);
}

// Single-qubit analogue over Haar-random one-qubit inputs.
inline MonteCarloEstimate avg_fidelity_mc_T0(const DensityMatrix& chi, std::size_t n_samples,
                                             std::uint64_t seed) {
    if (chi.n_qubits() != 2)
        throw std::invalid_argument("avg_fidelity_mc_T0: resource must be two qubits");
    if (n_samples < 100)
        throw std::invalid_argument("avg_fidelity_mc_T0: need at least 100 samples");

    std::array<double, 4> p{};
    std::array<ComplexMatrix, 4> udag;
    for (int mu = 0; mu < 4; ++mu) {
        const StateVector b = bell(mu);
        Complex s{0.0, 0.0};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) s += std::conj(b[i]) * chi(i, j) * b[j];
        p[static_cast<std::size_t>(mu)] = s.real();
        udag[static_cast<std::size_t>(mu)] = pauli(mu).adjoint();
    }

    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        Rng rng(detail::sample_seed(seed, s));
        const StateVector psi = haar_random_state(1, rng);
        double fid = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            Complex amp{0.0, 0.0};
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    amp += std::conj(psi[i]) * udag[k](i, j) * psi[j];
            fid += p[k] * std::norm(amp);
        }
        sum += fid;
        sum_sq += fid * fid;
    }
    return detail::summarize(sum, sum_sq, n_samples);
}

}  // namespace qtele
