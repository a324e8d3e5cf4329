// measures.hpp
// Figures of merit: von Neumann entropy, mutual information, negativity,
// singlet fractions (plain, unitarily maximized, generalized), teleportation
// fidelities, and quantum discord (parametrized, minimized, closed form).
// All logarithms are base 2 and 0 log 0 = 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "optimize.hpp"
#include "qmat.hpp"
#include "states.hpp"

namespace qtele {

namespace detail {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

// -tr[rho log2 rho], in bits.  Eigenvalues are clipped to [0, 1] before the
// logs to absorb PSD roundoff.
inline double entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : herm_eigenvalues(rho.matrix()))
        s -= detail::xlog2x(std::clamp(lambda, 0.0, 1.0));
    return s;
}

// S[rho_A] + S[rho_B] - S[rho_AB] for the bipartition (side_a | rest).
inline double mutual_information(const DensityMatrix& rho, const std::vector<int>& side_a) {
    const int n = rho.n_qubits();
    detail::check_qubit_subset(side_a, n, "mutual_information");
    const std::vector<int> side_b = detail::complement_qubits(side_a, n);
    if (side_b.empty())
        throw std::invalid_argument("mutual_information: bipartition needs a nonempty complement");
    return entropy(partial_trace(rho, side_a)) + entropy(partial_trace(rho, side_b)) -
           entropy(rho);
}

// max{0, -2 sum of negative eigenvalues} of the partial transpose over the
// listed qubits.
inline double negativity(const DensityMatrix& rho, const std::vector<int>& transposed) {
    detail::check_qubit_subset(transposed, rho.n_qubits(), "negativity");
    double neg = 0.0;
    for (double lambda : herm_eigenvalues(partial_transpose(rho, transposed)))
        if (lambda < 0.0) neg -= lambda;
    return std::max(0.0, 2.0 * neg);
}

// Two-qubit convenience: transpose over qubit B.
inline double negativity(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2) throw std::invalid_argument("negativity: expected a two-qubit state");
    return negativity(rho, {2});
}

// <Bell_0| chi |Bell_0>.
inline double singlet_fraction(const DensityMatrix& chi) {
    if (chi.n_qubits() != 2)
        throw std::invalid_argument("singlet_fraction: expected a two-qubit state");
    const StateVector b0 = bell(0);
    Complex v{0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) v += std::conj(b0[i]) * chi(i, j) * b0[j];
    return v.real();
}

// A figure of merit together with the optimizing angles that achieved it.
struct AngleResult {
    double value;
    std::vector<double> angles;
};

namespace detail {

// Phase-free SU(2) element Rz(a) Ry(b) Rz(c).
inline ComplexMatrix euler_unitary(double a, double b, double c) {
    const Complex eia = std::polar(1.0, -0.5 * a);
    const Complex eic = std::polar(1.0, -0.5 * c);
    const double cb = std::cos(0.5 * b), sb = std::sin(0.5 * b);
    ComplexMatrix u(2, 2);
    u(0, 0) = eia * cb * eic;
    u(0, 1) = -eia * sb * std::conj(eic);
    u(1, 0) = std::conj(eia) * sb * eic;
    u(1, 1) = std::conj(eia) * cb * std::conj(eic);
    return u;
}

}  // namespace detail

// max_u <Bell_0| (I (x) u) chi (I (x) u^dag) |Bell_0> over single-qubit
// unitaries u parametrized by three Euler angles.
inline AngleResult max_singlet_fraction(const DensityMatrix& chi) {
    if (chi.n_qubits() != 2)
        throw std::invalid_argument("max_singlet_fraction: expected a two-qubit state");

    auto objective = [&](const std::vector<double>& x) {
        const ComplexMatrix u = detail::euler_unitary(x[0], x[1], x[2]);
        // w = (I (x) u^dag) |Bell_0| ; amplitude layout (1/sqrt2)(|0>u^dag|0> + |1>u^dag|1>)
        const double r = 1.0 / std::sqrt(2.0);
        const Complex w[4] = {r * std::conj(u(0, 0)), r * std::conj(u(0, 1)),
                              r * std::conj(u(1, 0)), r * std::conj(u(1, 1))};
        Complex v{0.0, 0.0};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) v += std::conj(w[i]) * chi(i, j) * w[j];
        return -v.real();
    };

    const std::vector<double> lo{-pi, 0.0, -pi};
    const std::vector<double> hi{pi, pi, pi};
    const opt::Result r = opt::grid_then_simplex(objective, lo, hi, {8, 8, 8});
    return AngleResult{-r.value, r.x};
}

// Single-qubit teleportation fidelity from the singlet fraction.
inline double fidelity_from_F(double f) {
    if (f < -1e-9 || f > 1.0 + 1e-9)
        throw std::out_of_range("fidelity_from_F: singlet fraction must lie in [0, 1]");
    return 1.0 / 3.0 + 2.0 * f / 3.0;
}

// Two-qubit teleportation fidelity from the generalized singlet fraction.
inline double fidelity_from_G(double g) {
    if (g < -1e-9 || g > 1.0 + 1e-9)
        throw std::out_of_range("fidelity_from_G: generalized singlet fraction must lie in [0, 1]");
    return 1.0 / 5.0 + 4.0 * g / 5.0;
}

// <Upsilon00(angles)| Xi |Upsilon00(angles)>.
inline double overlap_G(const DensityMatrix& Xi, const AnglePair& angles) {
    if (Xi.n_qubits() != 4) throw std::invalid_argument("overlap_G: expected a four-qubit state");
    const StateVector v = upsilon00(angles);
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < 16; ++i) {
        if (v[i] == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < 16; ++j) s += std::conj(v[i]) * Xi(i, j) * v[j];
    }
    return s.real();
}

// max over (theta12, phi12) of overlap_G; 64x64 grid seed plus simplex
// refinement.  Warm starts (e.g. from a previous root-finding iterate) are
// added to the refinement starts.
inline AngleResult generalized_singlet_fraction(const DensityMatrix& Xi,
                                                const std::vector<AnglePair>& warm_starts = {}) {
    if (Xi.n_qubits() != 4)
        throw std::invalid_argument("generalized_singlet_fraction: expected a four-qubit state");

    const double bound = pi / 2.0 - tol::angle_clamp;
    auto objective = [&](const std::vector<double>& x) {
        return -overlap_G(Xi, AnglePair(x[0], x[1]));
    };
    std::vector<std::vector<double>> warm;
    warm.reserve(warm_starts.size());
    for (const AnglePair& w : warm_starts) warm.push_back({w.theta12, w.phi12});

    const opt::Result r = opt::grid_then_simplex(objective, {-bound, -bound}, {bound, bound},
                                                 {64, 64}, warm);
    return AngleResult{-r.value, r.x};
}

// Projective measurement direction on qubit B.
struct MeasurementAngles {
    double theta;
    double phi;
    MeasurementAngles(double t, double p) : theta(t), phi(p) {
        if (theta < -pi || theta > pi)
            throw std::out_of_range("MeasurementAngles: theta must lie in [-pi, pi]");
        if (phi < 0.0 || phi > 2.0 * pi)
            throw std::out_of_range("MeasurementAngles: phi must lie in [0, 2*pi]");
    }
};

// sum_m pi_m S[rho_{A|m}] + S[rho_B] - S[rho_AB] with projectors
// |pi0> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
// |pi1> = e^{-i phi} sin(theta)|0> - cos(theta)|1> on qubit B.
inline double discord(const DensityMatrix& rho, const MeasurementAngles& m) {
    if (rho.n_qubits() != 2) throw std::invalid_argument("discord: expected a two-qubit state");

    const Complex eip = std::polar(1.0, m.phi);
    const double ct = std::cos(m.theta), st = std::sin(m.theta);
    const Complex pi0[2] = {Complex{ct, 0.0}, eip * st};
    const Complex pi1[2] = {std::conj(eip) * st, Complex{-ct, 0.0}};

    double conditional = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        const Complex* k = outcome == 0 ? pi0 : pi1;
        // rho_{A|m} ~ <pi_m|_B rho |pi_m>_B, a 2x2 block contraction.
        ComplexMatrix cond(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                Complex v{0.0, 0.0};
                for (std::size_t b = 0; b < 2; ++b)
                    for (std::size_t b2 = 0; b2 < 2; ++b2)
                        v += std::conj(k[b]) * rho(2 * i + b, 2 * j + b2) * k[b2];
                cond(i, j) = v;
            }
        const double prob = cond.trace().real();
        if (prob < tol::prob_cutoff) continue;
        double s = 0.0;
        for (double lambda : herm_eigenvalues(cond * Complex{1.0 / prob, 0.0}))
            s -= detail::xlog2x(std::clamp(lambda, 0.0, 1.0));
        conditional += prob * s;
    }

    return conditional + entropy(partial_trace(rho, {2})) - entropy(rho);
}

// min over measurement directions of discord; 48x48 grid seed plus simplex
// refinement.
inline AngleResult min_discord(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2)
        throw std::invalid_argument("min_discord: expected a two-qubit state");

    auto objective = [&](const std::vector<double>& x) {
        return discord(rho, MeasurementAngles(x[0], x[1]));
    };
    const opt::Result r =
        opt::grid_then_simplex(objective, {-pi, 0.0}, {pi, 2.0 * pi}, {48, 48});
    return AngleResult{r.value, r.x};
}

// Two-qubit state supported on span{|00>, |11>} with a single coherence —
// the shape of every teleportation output here.
struct TauState {
    double t00;
    double t11;
    Complex t01;  // t10 is the conjugate

    TauState(double diag00, double diag11, Complex coherence)
        : t00(diag00), t11(diag11), t01(coherence) {
        if (std::abs(t00 + t11 - 1.0) > tol::unit_trace)
            throw std::invalid_argument("TauState: diagonal entries must sum to 1");
        if (t00 < -1e-12 || t11 < -1e-12)
            throw std::invalid_argument("TauState: negative diagonal entry");
        if (std::norm(t01) > t00 * t11 + 1e-12)
            throw std::invalid_argument("TauState: coherence violates positivity");
    }

    DensityMatrix to_density() const {
        ComplexMatrix m(4, 4);
        m(0, 0) = t00;
        m(3, 3) = t11;
        m(0, 3) = t01;
        m(3, 0) = std::conj(t01);
        return DensityMatrix(std::move(m));
    }
};

// Reads a tau-form state back out of a density matrix; throws if any
// off-pattern entry is non-negligible.
inline TauState tau_from_density(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2)
        throw std::invalid_argument("tau_from_density: expected a two-qubit state");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool on_pattern = (i == 0 || i == 3) && (j == 0 || j == 3);
            if (!on_pattern && std::abs(rho(i, j)) > tol::tau_pattern)
                throw std::invalid_argument("tau_from_density: state is not tau-form");
        }
    return TauState(rho(0, 0).real(), rho(3, 3).real(), rho(0, 3));
}

// Minimum discord of a tau-form state in closed form: the measurement
// |0>,|1> is optimal, giving H(diagonal) - H(eigenvalues).
inline double discord_tau_closed(const TauState& tau) {
    const double disc =
        std::sqrt((tau.t00 - tau.t11) * (tau.t00 - tau.t11) + 4.0 * std::norm(tau.t01));
    const double gamma_p = std::clamp(tau.t00, 0.0, 1.0);
    const double gamma_m = std::clamp(tau.t11, 0.0, 1.0);
    const double cap_p = std::clamp(0.5 * (1.0 + disc), 0.0, 1.0);
    const double cap_m = std::clamp(0.5 * (1.0 - disc), 0.0, 1.0);
    return -detail::xlog2x(gamma_p) - detail::xlog2x(gamma_m) + detail::xlog2x(cap_m) +
           detail::xlog2x(cap_p);
}

struct CorrelationSplit {
    double total;      // quantum mutual information
    double classical;  // mutual information of the computational-basis dephased state
    double quantum;    // total - classical
};

inline CorrelationSplit correlation_split(const TauState& tau) {
    const DensityMatrix rho = tau.to_density();
    const double total = mutual_information(rho, {1});

    ComplexMatrix dephased(4, 4);
    for (std::size_t i = 0; i < 4; ++i) dephased(i, i) = rho(i, i);
    const double classical = mutual_information(DensityMatrix(std::move(dephased)), {1});

    return CorrelationSplit{total, classical, total - classical};
}

}  // namespace qtele
