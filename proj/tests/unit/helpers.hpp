#pragma once

// Shared test machinery: the two reference matrices, dense-matrix oracles
// (Kronecker products, series matrix exponential, unitary reconstruction from
// an action on basis states) and global-phase-quotient fidelity. Everything
// here is deliberately naive so it stays independent of the library's
// implementation paths.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "setbal/problem.hpp"
#include "setbal/qaoa.hpp"
#include "setbal/statevector.hpp"

namespace testutil {

using setbal::cplx;
using DenseMatrix = std::vector<cplx>;  // row-major dim x dim

inline setbal::SetBalancingInstance clinical_15x10() {
    static const int rows[15][10] = {
        {0, 1, 0, 1, 1, 1, 1, 0, 0, 1}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0},
        {1, 1, 0, 0, 1, 1, 1, 0, 1, 0}, {0, 1, 0, 1, 1, 0, 1, 0, 0, 1},
        {0, 0, 1, 1, 0, 1, 0, 0, 0, 1}, {0, 1, 1, 0, 0, 0, 1, 0, 1, 0},
        {1, 1, 1, 1, 1, 1, 1, 1, 0, 1}, {1, 1, 0, 1, 1, 0, 0, 1, 0, 1},
        {1, 1, 0, 0, 1, 0, 1, 0, 0, 1}, {1, 1, 0, 1, 1, 1, 0, 1, 1, 0},
        {1, 1, 0, 1, 0, 0, 0, 1, 0, 0}, {1, 1, 0, 0, 0, 1, 1, 0, 1, 0},
        {0, 0, 0, 0, 1, 1, 0, 1, 0, 0}, {1, 1, 0, 1, 0, 1, 0, 0, 0, 1},
        {0, 0, 0, 1, 1, 1, 0, 0, 0, 1}};
    setbal::SetBalancingInstance inst;
    inst.m = 15;
    inst.n = 10;
    for (const auto& row : rows)
        for (int v : row) inst.matrix.push_back(static_cast<std::uint8_t>(v));
    return inst;
}

inline setbal::SetBalancingInstance walk_10x10() {
    static const int rows[10][10] = {
        {0, 1, 1, 1, 0, 1, 1, 0, 1, 1}, {1, 1, 1, 0, 1, 1, 0, 1, 0, 1},
        {1, 0, 1, 1, 0, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 1, 1, 0, 1, 0, 1},
        {0, 1, 1, 1, 1, 1, 0, 0, 0, 1}, {0, 1, 1, 1, 1, 1, 1, 0, 0, 1},
        {0, 0, 0, 1, 1, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 1, 1, 1, 1, 0},
        {0, 1, 0, 0, 0, 1, 1, 0, 0, 0}, {1, 1, 1, 0, 1, 0, 0, 0, 1, 1}};
    setbal::SetBalancingInstance inst;
    inst.m = 10;
    inst.n = 10;
    for (const auto& row : rows)
        for (int v : row) inst.matrix.push_back(static_cast<std::uint8_t>(v));
    return inst;
}

/// Known optimal bicoloring of the 10x10 instance (objective 4).
inline setbal::Bicoloring walk_10x10_solution() {
    return {{-1, -1, 1, -1, 1, 1, 1, -1, 1, -1}};
}

inline DenseMatrix identity_matrix(std::size_t dim) {
    DenseMatrix m(dim * dim, cplx(0, 0));
    for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = cplx(1, 0);
    return m;
}

/// kron(a, b): qubit ordering matches basis index bits, so a acts on the
/// higher bits and b on the lower ones.
inline DenseMatrix kron(const DenseMatrix& a, std::size_t da, const DenseMatrix& b,
                        std::size_t db) {
    DenseMatrix out(da * db * da * db, cplx(0, 0));
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ja = 0; ja < da; ++ja)
            for (std::size_t ib = 0; ib < db; ++ib)
                for (std::size_t jb = 0; jb < db; ++jb)
                    out[(ia * db + ib) * da * db + (ja * db + jb)] =
                        a[ia * da + ja] * b[ib * db + jb];
    return out;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, std::size_t dim) {
    DenseMatrix out(dim * dim, cplx(0, 0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const cplx aik = a[i * dim + k];
            if (aik == cplx(0, 0)) continue;
            for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
        }
    return out;
}

inline std::vector<cplx> matvec(const DenseMatrix& a, const std::vector<cplx>& v) {
    const std::size_t dim = v.size();
    std::vector<cplx> out(dim, cplx(0, 0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out[i] += a[i * dim + j] * v[j];
    return out;
}

inline DenseMatrix pauli_matrix(setbal::Pauli p) {
    switch (p) {
        case setbal::Pauli::I: return {1, 0, 0, 1};
        case setbal::Pauli::X: return {0, 1, 1, 0};
        case setbal::Pauli::Y: return {0, cplx(0, -1), cplx(0, 1), 0};
        case setbal::Pauli::Z: return {1, 0, 0, cplx(-1, 0)};
    }
    return {1, 0, 0, 1};
}

/// Tensor product of the string's letters (letter k acts on bit k).
inline DenseMatrix pauli_string_matrix(const setbal::PauliString& s) {
    DenseMatrix acc = pauli_matrix(s.letters[s.n_qubits - 1]);
    std::size_t dim = 2;
    for (int q = s.n_qubits - 2; q >= 0; --q) {
        acc = kron(acc, dim, pauli_matrix(s.letters[q]), 2);
        dim *= 2;
    }
    return acc;
}

/// exp(i*theta*P) for an involution P (P^2 = I): cos(theta) I + i sin(theta) P.
inline DenseMatrix exp_involution(const DenseMatrix& p, std::size_t dim, double theta) {
    DenseMatrix out = identity_matrix(dim);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = std::cos(theta) * out[k] + cplx(0, std::sin(theta)) * p[k];
    return out;
}

/// Series matrix exponential with scaling and squaring; fine at dim <= 16.
inline DenseMatrix expm(DenseMatrix a, std::size_t dim) {
    double norm = 0;
    for (const cplx& v : a) norm = std::max(norm, std::abs(v));
    int squarings = 0;
    while (norm * dim > 0.5) {
        norm /= 2;
        ++squarings;
    }
    const double scale = std::pow(2.0, -squarings);
    for (cplx& v : a) v *= scale;

    DenseMatrix result = identity_matrix(dim);
    DenseMatrix term = identity_matrix(dim);
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, a, dim);
        for (cplx& v : term) v /= static_cast<double>(k);
        for (std::size_t i = 0; i < result.size(); ++i) result[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result, dim);
    return result;
}

/// Reconstruct the dense unitary of a state transformation by probing all
/// basis states.
inline DenseMatrix unitary_of(int n, const std::function<setbal::StateVector(setbal::StateVector)>& op) {
    const std::size_t dim = std::size_t{1} << n;
    DenseMatrix u(dim * dim, cplx(0, 0));
    for (std::size_t col = 0; col < dim; ++col) {
        const setbal::StateVector out = op(setbal::basis_state(n, col));
        for (std::size_t row = 0; row < dim; ++row) u[row * dim + col] = out.amplitudes[row];
    }
    return u;
}

/// |tr(U^dagger V)| / dim: 1 iff U = V up to a global phase.
inline double unitary_fidelity(const DenseMatrix& u, const DenseMatrix& v, std::size_t dim) {
    cplx tr(0, 0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) tr += std::conj(u[j * dim + i]) * v[j * dim + i];
    return std::abs(tr) / static_cast<double>(dim);
}

/// Embed a 4x4 gate (index order |q_b q_a>) acting on qubits (qa, qb) into
/// the full 2^n space.
inline DenseMatrix embed_two(const DenseMatrix& gate, int qa, int qb, int n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t abit = std::size_t{1} << qa, bbit = std::size_t{1} << qb;
    DenseMatrix out(dim * dim, cplx(0, 0));
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            if ((x & ~(abit | bbit)) != (y & ~(abit | bbit))) continue;
            const std::size_t row = ((x & bbit) ? 2 : 0) + ((x & abit) ? 1 : 0);
            const std::size_t col = ((y & bbit) ? 2 : 0) + ((y & abit) ? 1 : 0);
            out[x * dim + y] = gate[row * 4 + col];
        }
    }
    return out;
}

inline DenseMatrix embed_one(const DenseMatrix& gate, int q, int n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t bit = std::size_t{1} << q;
    DenseMatrix out(dim * dim, cplx(0, 0));
    for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) {
            if ((x & ~bit) != (y & ~bit)) continue;
            out[x * dim + y] = gate[((x & bit) ? 2 : 0) + ((y & bit) ? 1 : 0)];
        }
    return out;
}

inline DenseMatrix dense_rotation(setbal::Pauli letter, double theta) {
    // R_PP(theta) = exp(-i (theta/2) P@P), via the involution formula.
    setbal::PauliString s;
    s.n_qubits = 2;
    s.letters = {letter, letter};
    return exp_involution(pauli_string_matrix(s), 4, -theta / 2);
}

/// Dense unitary of one mixer layer, built from first principles: tensor
/// R_X for the X family, ordered per-pair products of R_XX/R_YY(/ZZ) for
/// XY and the SWAP families, and the exponential of I - 2|s><s| for the
/// Grover family.
inline DenseMatrix oracle_mixer_unitary(setbal::MixerFamily family, int n, double beta) {
    using setbal::MixerFamily;
    const std::size_t dim = std::size_t{1} << n;
    if (family == MixerFamily::X || family == MixerFamily::WarmStart) {
        const setbal::Mat2 rx = setbal::rx_gate(beta);
        DenseMatrix acc = {rx[0], rx[1], rx[2], rx[3]};
        std::size_t d = 2;
        for (int q = 1; q < n; ++q) {
            acc = kron(acc, d, DenseMatrix{rx[0], rx[1], rx[2], rx[3]}, 2);
            d *= 2;
        }
        return acc;
    }
    if (family == MixerFamily::Grover) {
        DenseMatrix h(dim * dim, cplx(0, 0));  // I - 2|s><s|
        for (std::size_t x = 0; x < dim; ++x)
            for (std::size_t y = 0; y < dim; ++y)
                h[x * dim + y] = (x == y ? 1.0 : 0.0) - 2.0 / static_cast<double>(dim);
        return exp_involution(h, dim, -beta);
    }
    std::vector<std::pair<int, int>> pairs;
    if (family == MixerFamily::XY || family == MixerFamily::RingSwap) {
        for (int q = n - 2; q >= 0; --q) pairs.emplace_back(q, q + 1);
        if (family == MixerFamily::RingSwap && n > 2) pairs.emplace_back(0, n - 1);
    } else {
        for (int i = n - 2; i >= 0; --i)
            for (int j = n - 1; j > i; --j) pairs.emplace_back(i, j);
    }
    DenseMatrix acc = identity_matrix(dim);
    for (auto [qa, qb] : pairs) {
        acc = matmul(embed_two(dense_rotation(setbal::Pauli::X, beta), qa, qb, n), acc, dim);
        acc = matmul(embed_two(dense_rotation(setbal::Pauli::Y, beta), qa, qb, n), acc, dim);
        if (family != MixerFamily::XY)
            acc = matmul(embed_two(dense_rotation(setbal::Pauli::Z, beta), qa, qb, n), acc, dim);
    }
    return acc;
}

inline setbal::SetBalancingInstance random_instance(int m, int n, std::mt19937_64& rng,
                                                    double density = 0.5) {
    setbal::SetBalancingInstance inst;
    inst.m = m;
    inst.n = n;
    inst.matrix.resize(static_cast<std::size_t>(m) * n);
    for (auto& e : inst.matrix) e = setbal::uniform01(rng) < density ? 1 : 0;
    return inst;
}

inline setbal::Bicoloring random_bicoloring(int n, std::mt19937_64& rng) {
    setbal::Bicoloring b;
    b.values.resize(n);
    for (int& v : b.values) v = setbal::uniform01(rng) < 0.5 ? 1 : -1;
    return b;
}

inline setbal::StateVector random_state(int n, std::mt19937_64& rng) {
    setbal::StateVector st;
    st.n_qubits = n;
    st.amplitudes.resize(std::size_t{1} << n);
    double norm = 0;
    for (cplx& a : st.amplitudes) {
        a = cplx(setbal::uniform01(rng) - 0.5, setbal::uniform01(rng) - 0.5);
        norm += std::norm(a);
    }
    for (cplx& a : st.amplitudes) a /= std::sqrt(norm);
    return st;
}

}  // namespace testutil
