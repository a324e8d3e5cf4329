// channels.hpp
// Kraus-channel algebra and the noisy resource-state constructors.
//
// Convention: |0> is the excited state and |1> the ground state, so
// amplitude damping decays |0> -> |1> with strength 1 - q.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmat.hpp"
#include "states.hpp"

namespace qtele {

struct DampingStrength {
    double q;
    explicit DampingStrength(double value) : q(value) {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::out_of_range("DampingStrength: q must lie in [0, 1]");
    }
};

class KrausChannel {
public:
    KrausChannel(std::size_t dim, std::vector<ComplexMatrix> kraus_ops)
        : dim_(dim), ops_(std::move(kraus_ops)) {
        if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
        ComplexMatrix sum(dim_, dim_);
        for (const ComplexMatrix& k : ops_) {
            if (k.rows() != dim_ || k.cols() != dim_)
                throw std::invalid_argument("KrausChannel: operator dimension mismatch");
            sum += k.adjoint() * k;
        }
        if (sum.max_abs_diff(ComplexMatrix::identity(dim_)) > tol::kraus_sum)
            throw std::invalid_argument("KrausChannel: operators violate the sum rule");
    }

    std::size_t dim() const { return dim_; }
    const std::vector<ComplexMatrix>& ops() const { return ops_; }

private:
    std::size_t dim_;
    std::vector<ComplexMatrix> ops_;
};

// Single-qubit amplitude damping: K0 = diag(sqrt(q), 1),
// K1 has sqrt(1-q) at (1, 0).
inline KrausChannel amplitude_damping(DampingStrength strength) {
    const double q = strength.q;
    ComplexMatrix k0 = ComplexMatrix::from_rows({{std::sqrt(q), 0.0}, {0.0, 1.0}});
    ComplexMatrix k1 = ComplexMatrix::from_rows({{0.0, 0.0}, {std::sqrt(1.0 - q), 0.0}});
    return KrausChannel(2, {std::move(k0), std::move(k1)});
}

// Time-correlated two-qubit damping: only the |00> amplitude decays, jointly
// to |11>.
inline KrausChannel correlated_amplitude_damping(DampingStrength strength) {
    const double q = strength.q;
    ComplexMatrix k00(4, 4);
    k00(0, 0) = std::sqrt(q);
    k00(1, 1) = 1.0;
    k00(2, 2) = 1.0;
    k00(3, 3) = 1.0;
    ComplexMatrix k11(4, 4);
    k11(3, 0) = std::sqrt(1.0 - q);
    return KrausChannel(4, {std::move(k00), std::move(k11)});
}

namespace detail {

// Embeds a k-qubit operator onto the listed target qubits (1-based, first
// target = most significant operator bit) of an n-qubit system, as an
// explicit index map.
inline ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets,
                                    int n_qubits) {
    const std::size_t d = std::size_t{1} << n_qubits;
    const int k = static_cast<int>(targets.size());

    std::size_t target_mask = 0;
    for (int q : targets) target_mask |= std::size_t{1} << (n_qubits - q);

    ComplexMatrix out(d, d);
    const std::size_t dk = std::size_t{1} << k;
    for (std::size_t i = 0; i < d; ++i) {
        // Operator row index from the target bits of i, in target order.
        std::size_t a = 0;
        for (int j = 0; j < k; ++j)
            a = (a << 1) | ((i >> (n_qubits - targets[static_cast<std::size_t>(j)])) & 1u);
        const std::size_t rest = i & ~target_mask;
        for (std::size_t b = 0; b < dk; ++b) {
            const Complex v = op(a, b);
            if (v == Complex{0.0, 0.0}) continue;
            const std::size_t j = rest | scatter_bits(b, targets, n_qubits);
            out(i, j) = v;
        }
    }
    return out;
}

}  // namespace detail

// rho -> sum_nu (K^nu on targets) rho (...)^dag.
inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho,
                                   const std::vector<int>& targets) {
    const int n = rho.n_qubits();
    detail::check_qubit_subset(targets, n, "apply_channel");
    if (ch.dim() != (std::size_t{1} << targets.size()))
        throw std::invalid_argument("apply_channel: channel dimension does not match target count");

    ComplexMatrix out(rho.dim(), rho.dim());
    for (const ComplexMatrix& k : ch.ops()) {
        const ComplexMatrix ke = detail::embed_operator(k, targets, n);
        out += ke * rho.matrix() * ke.adjoint();
    }
    return DensityMatrix(std::move(out));
}

// One-parameter family: amplitude damping on qubit B of the reference Bell
// pair.
inline DensityMatrix xi(double q) {
    const DensityMatrix bell0 = DensityMatrix::from_pure(bell(0));
    return apply_channel(amplitude_damping(DampingStrength(q)), bell0, {2});
}

// xi with the same damping applied locally on qubit A as well.
inline DensityMatrix xi_prime(double q) {
    return apply_channel(amplitude_damping(DampingStrength(q)), xi(q), {1});
}

// Four-qubit resource: correlated damping on qubits B1B2 (positions 3, 4) of
// the pure Upsilon state.
inline DensityMatrix big_xi(double alpha, double beta, double q) {
    const AnglePair angles(alpha, beta);
    const DensityMatrix pure = DensityMatrix::from_pure(upsilon00(angles));
    return apply_channel(correlated_amplitude_damping(DampingStrength(q)), pure, {3, 4});
}

// big_xi with the same correlated damping applied to qubits A1A2
// (positions 1, 2) as well.
inline DensityMatrix big_xi_prime(double alpha, double beta, double q) {
    return apply_channel(correlated_amplitude_damping(DampingStrength(q)),
                         big_xi(alpha, beta, q), {1, 2});
}

}  // namespace qtele
