#pragma once

// Star-topology compilation of exp(i*theta*sigma) for an arbitrary Pauli
// string sigma: conjugate each support letter to X (H for Z, S-dagger for Y),
// fold the support onto an anchor qubit with CNOTs controlled by the anchor,
// rotate the anchor, undo. Only H, phase-type gates and CNOTs appear, and
// every CNOT touches the anchor.

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "setbal/statevector.hpp"

namespace setbal {

enum class PlanGateKind : std::uint8_t { Hadamard, SDagger, SGate, Cnot };

struct PlanGate {
    PlanGateKind kind;
    int target = 0;
    int control = -1;  // only meaningful for Cnot
};

struct PauliRotationPlan {
    PauliString target;
    std::vector<PlanGate> pre_ops;
    int core_qubit = 0;
    std::vector<PlanGate> post_ops;
};

/// Plan for exp(i*theta*sigma): pre_ops, then exp(i*theta*X) on core_qubit,
/// then post_ops. The anchor is the highest-index non-identity qubit.
inline PauliRotationPlan compile_pauli_exponential(const PauliString& sigma) {
    if (sigma.is_identity())
        throw std::invalid_argument("pauli exponential: all-identity string is a global phase");
    PauliRotationPlan plan;
    plan.target = sigma;

    std::vector<int> support;
    for (int q = 0; q < sigma.n_qubits; ++q)
        if (sigma.letters[q] != Pauli::I) support.push_back(q);
    const int anchor = support.back();
    plan.core_qubit = anchor;

    for (int q : support) {
        switch (sigma.letters[q]) {
            case Pauli::X: break;
            case Pauli::Y: plan.pre_ops.push_back({PlanGateKind::SDagger, q}); break;  // Y -> X
            case Pauli::Z: plan.pre_ops.push_back({PlanGateKind::Hadamard, q}); break;  // Z -> X
            default: break;
        }
    }
    for (int q : support)
        if (q != anchor) plan.pre_ops.push_back({PlanGateKind::Cnot, q, anchor});

    // Exact inverse sequence; S-dagger inverts to S, H and CNOT are involutions.
    for (auto it = plan.pre_ops.rbegin(); it != plan.pre_ops.rend(); ++it) {
        PlanGate g = *it;
        if (g.kind == PlanGateKind::SDagger) g.kind = PlanGateKind::SGate;
        plan.post_ops.push_back(g);
    }
    return plan;
}

namespace detail {
inline StateVector apply_plan_gate(StateVector state, const PlanGate& g) {
    switch (g.kind) {
        case PlanGateKind::Hadamard: return apply_single_qubit(std::move(state), g.target, hadamard_gate());
        case PlanGateKind::SDagger: return apply_single_qubit(std::move(state), g.target, s_dagger_gate());
        case PlanGateKind::SGate: return apply_single_qubit(std::move(state), g.target, s_gate());
        case PlanGateKind::Cnot: return apply_controlled_not(std::move(state), g.control, g.target);
    }
    return state;
}
}  // namespace detail

/// Execute the plan: state <- exp(i*theta*sigma) state.
inline StateVector apply_plan(StateVector state, const PauliRotationPlan& plan, double theta) {
    require(state.n_qubits == plan.target.n_qubits, "pauli plan: shape mismatch");
    for (const PlanGate& g : plan.pre_ops) state = detail::apply_plan_gate(std::move(state), g);
    state = apply_single_qubit(std::move(state), plan.core_qubit, rx_gate(-2.0 * theta));
    for (const PlanGate& g : plan.post_ops) state = detail::apply_plan_gate(std::move(state), g);
    return state;
}

/// state <- exp(-i*theta*sigma) state (mixer sign convention).
inline StateVector apply_pauli_exponential(StateVector state, const PauliString& sigma,
                                           double theta) {
    return apply_plan(std::move(state), compile_pauli_exponential(sigma), -theta);
}

/// (cnots, singles) over pre_ops + core rotation + post_ops.
inline std::pair<int, int> gate_count(const PauliRotationPlan& plan) {
    int cnots = 0, singles = 1;  // the core rotation
    for (const auto* ops : {&plan.pre_ops, &plan.post_ops})
        for (const PlanGate& g : *ops)
            (g.kind == PlanGateKind::Cnot ? cnots : singles) += 1;
    return {cnots, singles};
}

inline nlohmann::json plan_to_json(const PauliRotationPlan& plan) {
    auto gate_json = [](const PlanGate& g) {
        nlohmann::json j;
        switch (g.kind) {
            case PlanGateKind::Hadamard: j["gate"] = "h"; break;
            case PlanGateKind::SDagger: j["gate"] = "sdg"; break;
            case PlanGateKind::SGate: j["gate"] = "s"; break;
            case PlanGateKind::Cnot: j["gate"] = "cnot"; break;
        }
        j["target"] = g.target;
        if (g.kind == PlanGateKind::Cnot) j["control"] = g.control;
        return j;
    };
    auto gates = nlohmann::json::array();
    for (const PlanGate& g : plan.pre_ops) gates.push_back(gate_json(g));
    gates.push_back({{"gate", "rx_core"}, {"target", plan.core_qubit}});
    for (const PlanGate& g : plan.post_ops) gates.push_back(gate_json(g));
    return gates;
}

}  // namespace setbal
