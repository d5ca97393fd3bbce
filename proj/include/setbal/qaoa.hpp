#pragma once

// Alternating-ansatz QAOA: cost phases from the objective table, six mixer
// families in two circuit-realization modes, exact expectation, multinomial
// sampling and the approximation-ratio metric.
//
// Mixer layers are per-pair products of R_XX / R_YY / R_ZZ rotations,
// applied in a fixed order (see detail::mixer_pairs). The Grover family's
// normative unitary is exp(-i*beta*(I - 2|s><s|)); its subset circuits are
// kept for validation and cost accounting.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "setbal/nelder_mead.hpp"
#include "setbal/pauli_compile.hpp"
#include "setbal/problem.hpp"
#include "setbal/statevector.hpp"

namespace setbal {

enum class MixerFamily { X, XY, FullSwap, RingSwap, Grover, WarmStart };
enum class MixerRealization { GateDecomposition, PauliExponential };

struct MixerSpec {
    MixerFamily family = MixerFamily::X;
    MixerRealization realization = MixerRealization::GateDecomposition;
    std::optional<Bicoloring> warm_start_solution;
    double warm_start_epsilon = 0.25;

    void validate(int n_qubits) const {
        if (family == MixerFamily::WarmStart) {
            require(warm_start_solution.has_value(), "mixer: warm start requires a solution");
            require(warm_start_solution->size() == n_qubits, "mixer: warm start solution length");
            require(warm_start_epsilon > 0 && warm_start_epsilon <= 0.5,
                    "mixer: warm start epsilon must be in (0, 0.5]");
        } else {
            require(!warm_start_solution.has_value(),
                    "mixer: warm start solution only valid for the warm-start family");
        }
    }
};

inline std::string mixer_family_name(MixerFamily f) {
    switch (f) {
        case MixerFamily::X: return "x";
        case MixerFamily::XY: return "xy";
        case MixerFamily::FullSwap: return "full-swap";
        case MixerFamily::RingSwap: return "ring-swap";
        case MixerFamily::Grover: return "grover";
        case MixerFamily::WarmStart: return "warm-start";
    }
    return "?";
}

inline MixerFamily mixer_family_from_name(const std::string& name) {
    for (MixerFamily f : {MixerFamily::X, MixerFamily::XY, MixerFamily::FullSwap,
                          MixerFamily::RingSwap, MixerFamily::Grover, MixerFamily::WarmStart})
        if (mixer_family_name(f) == name) return f;
    throw std::invalid_argument("unknown mixer '" + name +
                                "' (valid: x, xy, full-swap, ring-swap, grover, warm-start)");
}

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int depth() const { return static_cast<int>(gammas.size()); }
    void validate() const {
        require(gammas.size() == betas.size(), "qaoa params: gammas and betas length mismatch");
    }
};

struct EnergyDistribution {
    int n_qubits = 0;
    std::vector<double> probabilities;  // 2^n
    std::vector<double> objectives;     // 2^n, copied from the cost diagonal
    double expectation = 0;

    struct Entry {
        std::uint64_t index;
        double probability;
        double objective;
    };
    /// Entries with probability above the floor, ascending basis index.
    std::vector<Entry> entries(double min_probability = 0.0) const {
        std::vector<Entry> out;
        for (std::uint64_t x = 0; x < probabilities.size(); ++x)
            if (probabilities[x] > min_probability) out.push_back({x, probabilities[x], objectives[x]});
        return out;
    }
    double min_supported_objective(double min_probability = 1e-12) const {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t x = 0; x < probabilities.size(); ++x)
            if (probabilities[x] > min_probability) best = std::min(best, objectives[x]);
        return best;
    }
};

inline EnergyDistribution make_distribution(const StateVector& state, const CostDiagonal& diag) {
    require(state.n_qubits == diag.n_qubits, "distribution: shape mismatch");
    EnergyDistribution dist;
    dist.n_qubits = state.n_qubits;
    dist.probabilities = probabilities(state);
    dist.objectives = diag.values;
    dist.expectation = 0;
    for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x)
        dist.expectation += dist.probabilities[x] * dist.objectives[x];
    return dist;
}

/// a_x <- a_x * exp(-i * gamma * f(x)).
inline StateVector cost_layer(StateVector state, double gamma, const CostDiagonal& diag) {
    require(state.amplitudes.size() == diag.values.size(), "cost layer: shape mismatch");
    for (std::uint64_t x = 0; x < state.amplitudes.size(); ++x)
        state.amplitudes[x] *= std::polar(1.0, -gamma * diag.values[x]);
    return state;
}

// Two-qubit rotation gates in the |q_hi q_lo> = (i2,i1) index order used by
// apply_two_qubit.
inline std::array<cplx, 16> rxx_gate(double theta) {
    const cplx c(std::cos(theta / 2), 0), js(0, -std::sin(theta / 2));
    return {c, 0, 0, js, 0, c, js, 0, 0, js, c, 0, js, 0, 0, c};
}
inline std::array<cplx, 16> ryy_gate(double theta) {
    const cplx c(std::cos(theta / 2), 0), js(0, -std::sin(theta / 2));
    return {c, 0, 0, -js, 0, c, js, 0, 0, js, c, 0, -js, 0, 0, c};
}
inline std::array<cplx, 16> rzz_gate(double theta) {
    const cplx lo = std::polar(1.0, -theta / 2), hi = std::polar(1.0, theta / 2);
    return {lo, 0, 0, 0, 0, hi, 0, 0, 0, 0, hi, 0, 0, 0, 0, lo};
}

namespace detail {

/// Qubit pairs in first-applied order:
/// XY and the ring chain run (q_{n-2},q_{n-1}) down to (q_0,q_1); the ring
/// then closes with the wrap pair; full connectivity runs descending
/// lexicographically, i.e. (q1,q2), (q0,q2), (q0,q1) for three qubits.
inline std::vector<std::pair<int, int>> mixer_pairs(MixerFamily family, int n) {
    std::vector<std::pair<int, int>> pairs;
    switch (family) {
        case MixerFamily::XY:
            for (int q = n - 2; q >= 0; --q) pairs.emplace_back(q, q + 1);
            break;
        case MixerFamily::FullSwap:
            for (int i = n - 2; i >= 0; --i)
                for (int j = n - 1; j > i; --j) pairs.emplace_back(i, j);
            break;
        case MixerFamily::RingSwap:
            for (int q = n - 2; q >= 0; --q) pairs.emplace_back(q, q + 1);
            if (n > 2) pairs.emplace_back(0, n - 1);  // wrap pair, applied last
            break;
        default: break;
    }
    return pairs;
}

inline PauliString two_qubit_string(int n, int qa, int qb, Pauli letter) {
    PauliString s;
    s.n_qubits = n;
    s.letters.assign(n, Pauli::I);
    s.letters[qa] = letter;
    s.letters[qb] = letter;
    return s;
}

inline StateVector apply_pair_rotation(StateVector state, int qa, int qb, Pauli letter,
                                       double beta, MixerRealization realization) {
    if (realization == MixerRealization::GateDecomposition) {
        switch (letter) {
            case Pauli::X: return apply_two_qubit(std::move(state), qa, qb, rxx_gate(beta));
            case Pauli::Y: return apply_two_qubit(std::move(state), qa, qb, ryy_gate(beta));
            default: return apply_two_qubit(std::move(state), qa, qb, rzz_gate(beta));
        }
    }
    const PauliString factor = two_qubit_string(state.n_qubits, qa, qb, letter);
    return apply_pauli_exponential(std::move(state), factor, beta / 2);
}

}  // namespace detail

// The gate-level Grover mixer applies one X-subset rotation of angle
// -4*beta/2^n per subset (-beta/4 each on three qubits); up to a global
// phase that circuit equals exp(-i*(beta/2)*(I-2|s><s|)), so the circuit
// parameter runs at twice the generator angle. Fixed once, never tuned.
inline constexpr double grover_circuit_angle_scale = 2.0;

/// Gate-level Grover layer: one exp(i*(scale*beta/2^n)*X_S) factor per
/// non-empty qubit subset S, realized as R_X / R_XX gates or as the
/// H-conjugated CNOT-chain R_Z pattern for weight >= 3 (gate mode), or as
/// compiled Pauli-exponential plans (pauli mode). Equals the normative Grover
/// layer at angle beta up to a global phase.
inline StateVector grover_subset_circuit(StateVector state, double beta,
                                         MixerRealization realization) {
    const int n = state.n_qubits;
    const double phi = grover_circuit_angle_scale * beta / static_cast<double>(std::uint64_t{1} << n);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        std::vector<int> qubits;
        for (int q = 0; q < n; ++q)
            if ((mask >> q) & 1) qubits.push_back(q);
        if (realization == MixerRealization::PauliExponential) {
            PauliString s;
            s.n_qubits = n;
            s.letters.assign(n, Pauli::I);
            for (int q : qubits) s.letters[q] = Pauli::X;
            state = apply_pauli_exponential(std::move(state), s, -phi);
            continue;
        }
        if (qubits.size() == 1) {
            state = apply_single_qubit(std::move(state), qubits[0], rx_gate(-2.0 * phi));
        } else if (qubits.size() == 2) {
            state = apply_two_qubit(std::move(state), qubits[0], qubits[1], rxx_gate(-2.0 * phi));
        } else {
            for (int q : qubits) state = apply_single_qubit(std::move(state), q, hadamard_gate());
            for (std::size_t k = qubits.size() - 1; k >= 1; --k)
                state = apply_controlled_not(std::move(state), qubits[k], qubits[k - 1]);
            state = apply_single_qubit(std::move(state), qubits[0], rz_gate(-2.0 * phi));
            for (std::size_t k = 1; k < qubits.size(); ++k)
                state = apply_controlled_not(std::move(state), qubits[k], qubits[k - 1]);
            for (int q : qubits) state = apply_single_qubit(std::move(state), q, hadamard_gate());
        }
    }
    return state;
}

/// One mixer layer at angle beta.
inline StateVector mixer_layer(StateVector state, double beta, const MixerSpec& spec) {
    spec.validate(state.n_qubits);
    const int n = state.n_qubits;
    switch (spec.family) {
        case MixerFamily::X:
        case MixerFamily::WarmStart:
            for (int q = 0; q < n; ++q) {
                if (spec.realization == MixerRealization::GateDecomposition) {
                    state = apply_single_qubit(std::move(state), q, rx_gate(beta));
                } else {
                    PauliString s;
                    s.n_qubits = n;
                    s.letters.assign(n, Pauli::I);
                    s.letters[q] = Pauli::X;
                    state = apply_pauli_exponential(std::move(state), s, beta / 2);
                }
            }
            return state;
        case MixerFamily::XY:
            for (auto [qa, qb] : detail::mixer_pairs(MixerFamily::XY, n)) {
                state = detail::apply_pair_rotation(std::move(state), qa, qb, Pauli::X, beta, spec.realization);
                state = detail::apply_pair_rotation(std::move(state), qa, qb, Pauli::Y, beta, spec.realization);
            }
            return state;
        case MixerFamily::FullSwap:
        case MixerFamily::RingSwap:
            for (auto [qa, qb] : detail::mixer_pairs(spec.family, n)) {
                state = detail::apply_pair_rotation(std::move(state), qa, qb, Pauli::X, beta, spec.realization);
                state = detail::apply_pair_rotation(std::move(state), qa, qb, Pauli::Y, beta, spec.realization);
                state = detail::apply_pair_rotation(std::move(state), qa, qb, Pauli::Z, beta, spec.realization);
            }
            return state;
        case MixerFamily::Grover: {
            // exp(-i*beta*(I-2P)) = e^{-i beta}(I-P) + e^{i beta} P with
            // P = |s><s|; both circuit realizations equal this up to a global
            // phase (checked in the equivalence tests), so the engine applies
            // the eigenstructure directly.
            cplx mean(0, 0);
            for (const cplx& a : state.amplitudes) mean += a;
            mean /= static_cast<double>(state.dim());
            const cplx lo = std::polar(1.0, -beta);
            const cplx kick = (std::polar(1.0, beta) - lo) * mean;
            for (cplx& a : state.amplitudes) a = lo * a + kick;
            return state;
        }
    }
    return state;
}

/// Product state biased toward a classical solution: the suggested value of
/// each qubit carries probability 1-epsilon. epsilon = 0.5 is |+>^n.
inline StateVector warm_start_initial_state(const Bicoloring& solution, double epsilon) {
    require(epsilon > 0 && epsilon <= 0.5, "warm start: epsilon must be in (0, 0.5]");
    solution.validate();
    const int n = solution.size();
    check_qubit_count(n);
    const double hi = std::sqrt(1.0 - epsilon), lo = std::sqrt(epsilon);
    StateVector st;
    st.n_qubits = n;
    st.amplitudes.resize(std::uint64_t{1} << n);
    for (std::uint64_t x = 0; x < st.amplitudes.size(); ++x) {
        double amp = 1.0;
        for (int k = 0; k < n; ++k) {
            const bool bit = (x >> k) & 1;
            const bool suggested = solution.values[k] == -1;  // bit 1 <-> spin -1
            amp *= (bit == suggested) ? hi : lo;
        }
        st.amplitudes[x] = cplx(amp, 0);
    }
    return st;
}

inline StateVector qaoa_state(const CostDiagonal& diag, const MixerSpec& spec,
                              const QaoaParams& params) {
    params.validate();
    spec.validate(diag.n_qubits);
    StateVector state = spec.family == MixerFamily::WarmStart
                            ? warm_start_initial_state(*spec.warm_start_solution,
                                                       spec.warm_start_epsilon)
                            : uniform_state(diag.n_qubits);
    for (int k = 0; k < params.depth(); ++k) {
        state = cost_layer(std::move(state), params.gammas[k], diag);
        state = mixer_layer(std::move(state), params.betas[k], spec);
    }
    return state;
}

inline EnergyDistribution run_qaoa(const CostDiagonal& diag, const MixerSpec& spec,
                                   const QaoaParams& params) {
    return make_distribution(qaoa_state(diag, spec, params), diag);
}

inline EnergyDistribution run_qaoa(const SetBalancingInstance& inst, const MixerSpec& spec,
                                   const QaoaParams& params) {
    return run_qaoa(cost_diagonal(inst), spec, params);
}

struct QaoaRun {
    QaoaParams params;
    EnergyDistribution distribution;
    std::vector<double> trace;
    int evals = 0;
};

/// Optimize the 2p angles [gamma_0, beta_0, gamma_1, beta_1, ...] with
/// Nelder-Mead on the exact expectation. Default start is all 0.5.
inline QaoaRun optimize_qaoa(const CostDiagonal& diag, const MixerSpec& spec, int depth,
                             OptimizerConfig config = {}) {
    require(depth >= 1, "optimize_qaoa: depth must be >= 1");
    spec.validate(diag.n_qubits);
    const int dim = 2 * depth;
    auto unpack = [depth](std::span<const double> x) {
        QaoaParams p;
        for (int k = 0; k < depth; ++k) {
            p.gammas.push_back(x[2 * k]);
            p.betas.push_back(x[2 * k + 1]);
        }
        return p;
    };
    const LossFn loss = [&](std::span<const double> x) {
        return run_qaoa(diag, spec, unpack(x)).expectation;
    };
    const OptimizeResult res = minimize(loss, dim, config);
    QaoaRun run;
    run.params = unpack(res.point);
    run.distribution = run_qaoa(diag, spec, run.params);
    run.trace = res.trace;
    run.evals = res.evals;
    return run;
}

inline QaoaRun optimize_qaoa(const SetBalancingInstance& inst, const MixerSpec& spec, int depth,
                             OptimizerConfig config = {}) {
    return optimize_qaoa(cost_diagonal(inst), spec, depth, std::move(config));
}

/// Multinomial draw; counts sum to shots, deterministic per seed.
inline std::map<std::uint64_t, std::uint64_t> sample(const EnergyDistribution& dist, int shots,
                                                     std::uint64_t seed) {
    require(shots >= 1, "sample: shots must be >= 1");
    std::vector<double> cdf(dist.probabilities.size());
    double acc = 0;
    for (std::uint64_t x = 0; x < cdf.size(); ++x) {
        acc += dist.probabilities[x];
        cdf[x] = acc;
    }
    std::mt19937_64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (int s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t x = it == cdf.end() ? cdf.size() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
        counts[x] += 1;
    }
    return counts;
}

/// alpha = ground / found, with 0/0 treated as a perfect hit.
inline double approximation_ratio(double ground, double found) {
    require(ground >= 0, "approximation ratio: ground must be >= 0");
    if (found < ground - 1e-9)
        throw std::runtime_error("approximation ratio: found value below ground truth");
    if (found <= ground) return 1.0;
    return ground / found;
}

inline nlohmann::json qaoa_result_to_json(const QaoaRun& run, std::optional<double> alpha,
                                          std::optional<double> best_sampled,
                                          double min_probability = 1e-9) {
    nlohmann::json j;
    j["params"] = {{"gammas", run.params.gammas}, {"betas", run.params.betas}};
    j["expectation"] = run.distribution.expectation;
    auto entries = nlohmann::json::array();
    for (const auto& e : run.distribution.entries(min_probability))
        entries.push_back({{"bitstring", bitstring(e.index, run.distribution.n_qubits)},
                           {"probability", e.probability},
                           {"objective", e.objective}});
    j["distribution"] = std::move(entries);
    if (best_sampled) j["best_sampled_objective"] = *best_sampled;
    if (alpha) j["alpha"] = *alpha;
    j["trace"] = run.trace;
    return j;
}

/// Entangling-gate count of one mixer layer under the stated accounting:
/// every two-qubit rotation box costs 2 CNOTs in gate mode; compiled plans
/// cost 2(weight-1) CNOTs per factor.
inline std::int64_t mixer_layer_cnot_count(MixerFamily family, MixerRealization realization,
                                           int n) {
    const std::int64_t pairs = static_cast<std::int64_t>(detail::mixer_pairs(
        family == MixerFamily::WarmStart ? MixerFamily::X : family, n).size());
    switch (family) {
        case MixerFamily::X:
        case MixerFamily::WarmStart: return 0;
        case MixerFamily::XY: return pairs * 2 * 2;
        case MixerFamily::FullSwap:
        case MixerFamily::RingSwap: return pairs * 3 * 2;
        case MixerFamily::Grover: {
            std::int64_t total = 0;
            const std::uint64_t full = (std::uint64_t{1} << n) - 1;
            for (std::uint64_t mask = 1; mask <= full; ++mask) {
                const int w = std::popcount(mask);
                if (realization == MixerRealization::PauliExponential) total += 2 * (w - 1);
                else total += w == 1 ? 0 : (w == 2 ? 2 : 2 * (w - 1));
            }
            return total;
        }
    }
    return 0;
}

}  // namespace setbal
