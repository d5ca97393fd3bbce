#pragma once

// Dense complex statevector and the primitive unitary actions the QAOA and
// QWOA engines are built from. Amplitudes are stored flat; bit k of a basis
// index is variable b_k, with bit value 1 meaning spin -1 and bit value 0
// meaning spin +1. This convention is fixed globally.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "setbal/common.hpp"

namespace setbal {

struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits; }
};

enum class Pauli : std::uint8_t { I, X, Y, Z };

struct PauliString {
    int n_qubits = 0;
    std::vector<Pauli> letters;

    bool is_identity() const {
        for (Pauli p : letters)
            if (p != Pauli::I) return false;
        return true;
    }
    int weight() const {
        int w = 0;
        for (Pauli p : letters) w += (p != Pauli::I);
        return w;
    }
    /// Parse a string such as "IXZY"; index 0 of the text is qubit 0.
    static PauliString parse(const std::string& text) {
        PauliString s;
        s.n_qubits = static_cast<int>(text.size());
        for (char c : text) {
            switch (c) {
                case 'I': s.letters.push_back(Pauli::I); break;
                case 'X': s.letters.push_back(Pauli::X); break;
                case 'Y': s.letters.push_back(Pauli::Y); break;
                case 'Z': s.letters.push_back(Pauli::Z); break;
                default: throw std::invalid_argument("pauli string: bad letter");
            }
        }
        return s;
    }
};

// 2x2 unitaries are stored row-major: {u00, u01, u10, u11}.
using Mat2 = std::array<cplx, 4>;

inline Mat2 hadamard_gate() {
    const double s = 1.0 / std::sqrt(2.0);
    return {cplx(s, 0), cplx(s, 0), cplx(s, 0), cplx(-s, 0)};
}
inline Mat2 s_gate() { return {cplx(1, 0), 0, 0, cplx(0, 1)}; }
inline Mat2 s_dagger_gate() { return {cplx(1, 0), 0, 0, cplx(0, -1)}; }
inline Mat2 rx_gate(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0)};
}
inline Mat2 rz_gate(double theta) {
    return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
}

inline bool is_unitary(const Mat2& u, double tol = unitary_tol) {
    // U U^dagger == I entrywise.
    const cplx a = u[0] * std::conj(u[0]) + u[1] * std::conj(u[1]);
    const cplx b = u[0] * std::conj(u[2]) + u[1] * std::conj(u[3]);
    const cplx c = u[2] * std::conj(u[0]) + u[3] * std::conj(u[1]);
    const cplx d = u[2] * std::conj(u[2]) + u[3] * std::conj(u[3]);
    return std::abs(a - 1.0) < tol && std::abs(b) < tol && std::abs(c) < tol &&
           std::abs(d - 1.0) < tol;
}

/// |+>^n: every amplitude 1/sqrt(2^n).
inline StateVector uniform_state(int n) {
    check_qubit_count(n);
    StateVector st;
    st.n_qubits = n;
    st.amplitudes.assign(std::uint64_t{1} << n, cplx(std::pow(2.0, -0.5 * n), 0));
    return st;
}

inline StateVector basis_state(int n, std::uint64_t x) {
    check_qubit_count(n);
    StateVector st;
    st.n_qubits = n;
    st.amplitudes.assign(std::uint64_t{1} << n, cplx(0, 0));
    st.amplitudes.at(x) = cplx(1, 0);
    return st;
}

/// a_x <- a_x * exp(-i * angles[x]); probabilities are untouched.
inline StateVector apply_diagonal_phase(StateVector state, std::span<const double> angles) {
    require(angles.size() == state.amplitudes.size(), "diagonal phase: length mismatch");
    for (std::uint64_t x = 0; x < state.amplitudes.size(); ++x)
        state.amplitudes[x] *= std::polar(1.0, -angles[x]);
    return state;
}

/// Apply a 2x2 unitary to one qubit (I (x) ... (x) u (x) ... (x) I).
inline StateVector apply_single_qubit(StateVector state, int qubit, const Mat2& u) {
    require(qubit >= 0 && qubit < state.n_qubits, "single-qubit gate: qubit out of range");
    if (!is_unitary(u)) throw std::invalid_argument("single-qubit gate: matrix not unitary");
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t x = 0; x < dim; ++x) {
        if (x & bit) continue;
        const cplx a0 = state.amplitudes[x];
        const cplx a1 = state.amplitudes[x | bit];
        state.amplitudes[x] = u[0] * a0 + u[1] * a1;
        state.amplitudes[x | bit] = u[2] * a0 + u[3] * a1;
    }
    return state;
}

inline StateVector apply_controlled_not(StateVector state, int control, int target) {
    require(control != target, "cnot: control equals target");
    require(control >= 0 && control < state.n_qubits, "cnot: control out of range");
    require(target >= 0 && target < state.n_qubits, "cnot: target out of range");
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t x = 0; x < dim; ++x)
        if ((x & cbit) && !(x & tbit)) std::swap(state.amplitudes[x], state.amplitudes[x | tbit]);
    return state;
}

/// Apply a 4x4 unitary (row-major, basis |q_hi q_lo> = |b a> with a = low qubit)
/// to the qubit pair (a, b). Used for the R_XX / R_YY / R_ZZ boxes.
inline StateVector apply_two_qubit(StateVector state, int qa, int qb,
                                   const std::array<cplx, 16>& u) {
    require(qa != qb, "two-qubit gate: identical qubits");
    require(qa >= 0 && qa < state.n_qubits && qb >= 0 && qb < state.n_qubits,
            "two-qubit gate: qubit out of range");
    const std::uint64_t abit = std::uint64_t{1} << qa;
    const std::uint64_t bbit = std::uint64_t{1} << qb;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t x = 0; x < dim; ++x) {
        if (x & (abit | bbit)) continue;
        const std::uint64_t i0 = x, i1 = x | abit, i2 = x | bbit, i3 = x | abit | bbit;
        const cplx a0 = state.amplitudes[i0], a1 = state.amplitudes[i1];
        const cplx a2 = state.amplitudes[i2], a3 = state.amplitudes[i3];
        state.amplitudes[i0] = u[0] * a0 + u[1] * a1 + u[2] * a2 + u[3] * a3;
        state.amplitudes[i1] = u[4] * a0 + u[5] * a1 + u[6] * a2 + u[7] * a3;
        state.amplitudes[i2] = u[8] * a0 + u[9] * a1 + u[10] * a2 + u[11] * a3;
        state.amplitudes[i3] = u[12] * a0 + u[13] * a1 + u[14] * a2 + u[15] * a3;
    }
    return state;
}

inline std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p(state.amplitudes.size());
    for (std::uint64_t x = 0; x < p.size(); ++x) p[x] = std::norm(state.amplitudes[x]);
    return p;
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    require(a.n_qubits == b.n_qubits, "inner product: shape mismatch");
    cplx acc(0, 0);
    for (std::uint64_t x = 0; x < a.amplitudes.size(); ++x)
        acc += std::conj(a.amplitudes[x]) * b.amplitudes[x];
    return acc;
}

inline double norm_squared(const StateVector& state) {
    double acc = 0;
    for (const cplx& a : state.amplitudes) acc += std::norm(a);
    return acc;
}

/// Equality modulo a global phase: fidelity |<a|b>| > 1 - tol.
inline bool equal_up_to_phase(const StateVector& a, const StateVector& b,
                              double tol = fidelity_tol) {
    return std::abs(inner_product(a, b)) > 1.0 - tol;
}

}  // namespace setbal
