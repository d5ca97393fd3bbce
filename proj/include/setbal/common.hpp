#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace setbal {

using cplx = std::complex<double>;

/// Raised when an instance or register exceeds a compiled size cap.
struct size_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Statevector register cap (2^n amplitudes); overridable at build time.
#ifndef SETBAL_MAX_QUBITS
#define SETBAL_MAX_QUBITS 26
#endif
inline constexpr int max_qubits = SETBAL_MAX_QUBITS;

// Exhaustive enumeration cap, kept below the register cap so desk-scale
// brute-force runs stay under minutes.
inline constexpr int max_enumeration_qubits = 24;

inline constexpr double unitary_tol = 1e-10;
inline constexpr double norm_tol = 1e-9;
inline constexpr double fidelity_tol = 1e-9;

/// SplitMix64 step; used to derive independent child seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) built directly from the generator output, so
/// results do not depend on the standard library's distribution internals.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline void require(bool cond, const std::string& message) {
    if (!cond) throw std::invalid_argument(message);
}

inline void check_qubit_count(int n) {
    if (n < 1 || n > max_qubits)
        throw size_cap_error("qubit count " + std::to_string(n) + " outside [1, " +
                             std::to_string(max_qubits) + "]");
}

}  // namespace setbal
