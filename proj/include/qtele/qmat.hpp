// qmat.hpp
// Dense complex linear algebra for few-qubit operators: tensor products,
// partial trace, partial transpose, and a cyclic-Jacobi eigensolver for
// Hermitian matrices.
//
// Conventions: qubits are labelled 1..n and qubit 1 is the most significant
// bit of a computational-basis index (big-endian).  All values are immutable
// after construction and every operation is a pure function.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tolerances.hpp"

namespace qtele {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t r = rows.size();
        if (r == 0) throw std::invalid_argument("ComplexMatrix::from_rows: empty");
        const std::size_t c = rows.begin()->size();
        ComplexMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c)
                throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
            std::size_t j = 0;
            for (const Complex& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_same_shape(o, "operator+");
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
        return m;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_same_shape(o, "operator-");
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
        return m;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("ComplexMatrix: inner dimensions do not match");
        ComplexMatrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex aik = data_[i * cols_ + k];
                if (aik == Complex{0.0, 0.0}) continue;
                const Complex* brow = &o.data_[k * o.cols_];
                Complex* mrow = &m.data_[i * o.cols_];
                for (std::size_t j = 0; j < o.cols_; ++j) mrow[j] += aik * brow[j];
            }
        }
        return m;
    }

    ComplexMatrix operator*(Complex s) const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
        return m;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

    ComplexMatrix transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
        return m;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    Complex trace() const {
        if (!is_square()) throw std::invalid_argument("trace: matrix not square");
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    // Largest entrywise |a_ij - b_ij|.
    double max_abs_diff(const ComplexMatrix& o) const {
        check_same_shape(o, "max_abs_diff");
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i)
            m = std::max(m, std::abs(data_[i] - o.data_[i]));
        return m;
    }

    double hermiticity_defect() const {
        if (!is_square()) throw std::invalid_argument("hermiticity_defect: matrix not square");
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_hermitian(double tolerance = tol::hermitian) const {
        return is_square() && hermiticity_defect() <= tolerance;
    }

private:
    void check_same_shape(const ComplexMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + what);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// Kronecker product; a's indices are most significant (qubit 1 is the
// leftmost tensor factor).
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("dimension is not a power of two");
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic Jacobi with complex rotations).
// Dimensions here are tiny (<= 64), so robustness beats speed.
// ---------------------------------------------------------------------------

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

inline EigenSystem herm_eigensystem(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("herm_eigensystem: matrix not square");
    if (m.hermiticity_defect() > tol::herm_input)
        throw std::invalid_argument("herm_eigensystem: input is not Hermitian within tolerance");

    const std::size_t n = m.rows();
    // Symmetrize away representation roundoff before iterating.
    ComplexMatrix a = (m + m.adjoint()) * Complex{0.5, 0.0};
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= tol::jacobi_off * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;

                // Phase factor takes the pivot real; then a real Givens
                // rotation annihilates it.
                const Complex u = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);

                // 2x2 unitary W = [[c*u, -s*u], [s, c]] applied on (p, q).
                const Complex w00 = c * u, w01 = -s * u;
                const Complex w10 = Complex{s, 0.0}, w11 = Complex{c, 0.0};

                for (std::size_t i = 0; i < n; ++i) {  // A <- A W (columns)
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * w00 + aiq * w10;
                    a(i, q) = aip * w01 + aiq * w11;
                }
                for (std::size_t j = 0; j < n; ++j) {  // A <- W^dag A (rows)
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = std::conj(w00) * apj + std::conj(w10) * aqj;
                    a(q, j) = std::conj(w01) * apj + std::conj(w11) * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {  // V <- V W
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * w00 + viq * w10;
                    v(i, q) = vip * w01 + viq * w11;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

// Real spectrum in ascending order.
inline std::vector<double> herm_eigenvalues(const ComplexMatrix& m) {
    return herm_eigensystem(m).values;
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

class StateVector {
public:
    explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        n_qubits_ = log2_exact(amps_.size());
        double n2 = 0.0;
        for (const Complex& a : amps_) n2 += std::norm(a);
        if (std::abs(std::sqrt(n2) - 1.0) > tol::state_norm)
            throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }

    static StateVector basis_state(int n_qubits, std::size_t index) {
        std::vector<Complex> a(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
        a.at(index) = 1.0;
        return StateVector(std::move(a));
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    ComplexMatrix projector() const {
        ComplexMatrix m(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) m(i, j) = amps_[i] * std::conj(amps_[j]);
        return m;
    }

private:
    std::vector<Complex> amps_;
    int n_qubits_ = 0;
};

inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
    return StateVector(std::move(amps));
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
        if (!m_.is_square()) throw std::invalid_argument("DensityMatrix: matrix not square");
        n_qubits_ = log2_exact(m_.rows());
        if (m_.hermiticity_defect() > tol::hermitian)
            throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
        if (std::abs(m_.trace() - Complex{1.0, 0.0}) > tol::unit_trace)
            throw std::invalid_argument("DensityMatrix: trace is not 1 within tolerance");
        const std::vector<double> ev = herm_eigenvalues(m_);
        if (ev.front() < tol::psd_floor)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                        std::to_string(ev.front()));
    }

    static DensityMatrix from_pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

    static DensityMatrix maximally_mixed(int n_qubits) {
        const std::size_t d = std::size_t{1} << n_qubits;
        ComplexMatrix m = ComplexMatrix::identity(d) * Complex{1.0 / static_cast<double>(d), 0.0};
        return DensityMatrix(std::move(m));
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    ComplexMatrix m_;
    int n_qubits_ = 0;
};

// ---------------------------------------------------------------------------
// Subsystem operations (1-based qubit labels)
// ---------------------------------------------------------------------------

namespace detail {

inline void check_qubit_subset(const std::vector<int>& qubits, int n, const char* what,
                               bool allow_empty = false) {
    if (!allow_empty && qubits.empty())
        throw std::invalid_argument(std::string(what) + ": empty qubit set");
    std::vector<int> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] > n)
            throw std::out_of_range(std::string(what) + ": qubit index out of range");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw std::invalid_argument(std::string(what) + ": repeated qubit index");
    }
}

// Places the k bits of `bits` (most significant first) at the 1-based qubit
// positions listed in `positions` of an n-qubit index.
inline std::size_t scatter_bits(std::size_t bits, const std::vector<int>& positions, int n) {
    std::size_t out = 0;
    const int k = static_cast<int>(positions.size());
    for (int j = 0; j < k; ++j) {
        const std::size_t b = (bits >> (k - 1 - j)) & std::size_t{1};
        out |= b << (n - positions[static_cast<std::size_t>(j)]);
    }
    return out;
}

inline std::vector<int> complement_qubits(const std::vector<int>& subset, int n) {
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> rest;
    for (int q = 1; q <= n; ++q)
        if (!std::binary_search(sorted.begin(), sorted.end(), q)) rest.push_back(q);
    return rest;
}

}  // namespace detail

// Reduced density matrix on the kept qubits; their relative order is
// preserved.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int n = rho.n_qubits();
    detail::check_qubit_subset(keep, n, "partial_trace");

    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    const std::vector<int> traced = detail::complement_qubits(kept, n);

    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t dt = std::size_t{1} << traced.size();

    ComplexMatrix out(dk, dk);
    for (std::size_t r = 0; r < dk; ++r) {
        const std::size_t rbase = detail::scatter_bits(r, kept, n);
        for (std::size_t c = 0; c < dk; ++c) {
            const std::size_t cbase = detail::scatter_bits(c, kept, n);
            Complex sum{0.0, 0.0};
            for (std::size_t e = 0; e < dt; ++e) {
                const std::size_t ebits = detail::scatter_bits(e, traced, n);
                sum += rho(rbase | ebits, cbase | ebits);
            }
            out(r, c) = sum;
        }
    }
    return DensityMatrix(std::move(out));
}

// Transpose applied only to the listed tensor factors.  The result is
// Hermitian but generally not positive, so it is returned as a plain matrix.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& subsystem) {
    if (!m.is_square()) throw std::invalid_argument("partial_transpose: matrix not square");
    const int n = log2_exact(m.rows());
    detail::check_qubit_subset(subsystem, n, "partial_transpose", /*allow_empty=*/true);

    std::size_t mask = 0;
    for (int q : subsystem) mask |= std::size_t{1} << (n - q);

    const std::size_t d = m.rows();
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t i2 = (i & ~mask) | (j & mask);
            const std::size_t j2 = (j & ~mask) | (i & mask);
            out(i2, j2) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subsystem) {
    return partial_transpose(rho.matrix(), subsystem);
}

}  // namespace qtele
