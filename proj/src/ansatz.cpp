#include "qsumm/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsumm/errors.hpp"

namespace qsumm {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

void push_gate(Circuit& c, GateKind kind, int q0, int q1 = -1, Real angle = 0.0) {
    c.ops.push_back(Gate{kind, q0, q1, angle});
}

// RY(angle) on `target` iff `control` is 1: two CNOTs and two half-angle RYs.
void push_cry(Circuit& c, Real angle, int control, int target) {
    push_gate(c, GateKind::RY, target, -1, angle / 2.0);
    push_gate(c, GateKind::CNOT, control, target);
    push_gate(c, GateKind::RY, target, -1, -angle / 2.0);
    push_gate(c, GateKind::CNOT, control, target);
}

// RY(angle) on `target` iff c1 = 1 and c2 = 1.
void push_ccry(Circuit& c, Real angle, int c1, int c2, int target) {
    push_cry(c, angle / 2.0, c2, target);
    push_gate(c, GateKind::CNOT, c1, c2);
    push_cry(c, -angle / 2.0, c2, target);
    push_gate(c, GateKind::CNOT, c1, c2);
    push_cry(c, angle / 2.0, c1, target);
}

// Excitation splitter on (source, target): with angle = -2 asin(sqrt(w)),
// |1_s 0_t> -> sqrt(1-w) |1_s 0_t> + sqrt(w) |0_s 1_t>, while |00> and |11>
// are fixed.
void push_split(Circuit& c, Real angle, int source, int target) {
    push_gate(c, GateKind::CNOT, source, target);
    push_cry(c, angle, target, source);
    push_gate(c, GateKind::CNOT, source, target);
}

// Splitter active only when `guard` is 0. RY(pi)/RY(-pi) conjugation turns
// the doubly controlled rotation into a negative control with no phase
// residue.
void push_guarded_split(Circuit& c, Real angle, int guard, int source, int target) {
    push_gate(c, GateKind::CNOT, source, target);
    push_gate(c, GateKind::RY, guard, -1, kPi);
    push_ccry(c, angle, guard, target, source);
    push_gate(c, GateKind::RY, guard, -1, -kPi);
    push_gate(c, GateKind::CNOT, source, target);
}

void check_layer_params(const AnsatzParams& params, AnsatzKind expected) {
    if (params.kind != expected)
        throw Error(Errc::param_mismatch, "ansatz kind does not match the builder");
    if (params.p < 1) throw Error(Errc::param_mismatch, "layer count p must be >= 1");
    if (params.gammas.size() != params.p || params.betas.size() != params.p)
        throw Error(Errc::param_mismatch, "gammas/betas must have length p");
}

}  // namespace

std::vector<std::pair<int, int>> objective_couplings(const ProblemInstance& instance,
                                                     ObjectiveKind kind) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < instance.n; ++i) {
        for (int j = i + 1; j < instance.n; ++j) {
            const Real coeff = kind == ObjectiveKind::Raw
                                   ? instance.lambda * instance.beta(i, j)
                                   : instance.lambda * instance.beta(i, j) + instance.gamma;
            if (coeff != 0.0) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

Circuit build_qaoa(const ProblemInstance& instance, const AnsatzParams& params,
                   ObjectiveKind objective) {
    check_layer_params(params, AnsatzKind::QAOA);
    Circuit circuit;
    circuit.n_qubits = instance.n;
    for (int q = 0; q < instance.n; ++q) push_gate(circuit, GateKind::H, q);
    const auto couplings = objective_couplings(instance, objective);
    for (int layer = 0; layer < params.p; ++layer) {
        circuit.ops.push_back(PhaseLayer{objective, params.gammas[layer], couplings});
        // e^{-i beta X} per qubit.
        for (int q = 0; q < instance.n; ++q)
            push_gate(circuit, GateKind::RX, q, -1, 2.0 * params.betas[layer]);
    }
    return circuit;
}

Circuit build_dicke(int n_qubits, int m) {
    if (n_qubits < 2 || m <= 0 || m >= n_qubits)
        throw Error(Errc::infeasible_constraint, "build_dicke: weight m must satisfy 0 < m < n");
    Circuit circuit;
    circuit.n_qubits = n_qubits;
    // Seed |1^m 0^(n-m)>; RY(pi) maps |0> to +|1> exactly.
    for (int q = 0; q < m; ++q) push_gate(circuit, GateKind::RY, q, -1, kPi);
    // Peel qubits n-1 down to 1. Stage q maps each packed prefix
    // |1^l 0^(q-l)> to sqrt((q-l)/q) |1^l 0...0> + sqrt(l/q) |1^(l-1) 0...1>,
    // which is the Dicke recursion on the last qubit of the prefix. Block j
    // moves the excitation at j-1 and fires only for the weight-j component,
    // enforced by the guard qubit j sitting at 0 exactly then.
    for (int q = n_qubits; q >= 2; --q) {
        const int target = q - 1;
        const int top = std::min(m, q - 1);
        for (int j = top; j >= 1; --j) {
            const Real angle =
                -2.0 * std::asin(std::sqrt(static_cast<Real>(j) / static_cast<Real>(q)));
            const int source = j - 1;
            if (j == q - 1)
                push_split(circuit, angle, source, target);
            else
                push_guarded_split(circuit, angle, j, source, target);
        }
    }
    return circuit;
}

Circuit build_xy_qaoa(const ProblemInstance& instance, const AnsatzParams& params,
                      MixerTopology topology, ObjectiveKind objective) {
    check_layer_params(params, AnsatzKind::XY_QAOA);
    Circuit circuit = build_dicke(instance.n, instance.m);
    const auto couplings = objective_couplings(instance, objective);
    for (int layer = 0; layer < params.p; ++layer) {
        circuit.ops.push_back(PhaseLayer{objective, params.gammas[layer], couplings});
        // Sequential ascending pair order: the XY exponentials do not all
        // commute, so the order is part of the contract.
        for (int k = 0; k + 1 < instance.n; ++k)
            push_gate(circuit, GateKind::RXXplusYY, k, k + 1, params.betas[layer]);
        if (topology == MixerTopology::Ring && instance.n > 2)
            push_gate(circuit, GateKind::RXXplusYY, instance.n - 1, 0, params.betas[layer]);
    }
    return circuit;
}

int lvqe_param_count(int n_qubits, int p) {
    return n_qubits + 4 * p * (n_qubits - 1);
}

Circuit build_lvqe(int n_qubits, int p, const RealVector& thetas) {
    if (n_qubits < 2) throw Error(Errc::param_mismatch, "build_lvqe: need at least 2 qubits");
    if (p < 1) throw Error(Errc::param_mismatch, "build_lvqe: layer count p must be >= 1");
    if (thetas.size() != lvqe_param_count(n_qubits, p))
        throw Error(Errc::param_mismatch,
                    "build_lvqe: expected " + std::to_string(lvqe_param_count(n_qubits, p)) +
                        " angles, got " + std::to_string(thetas.size()));
    Circuit circuit;
    circuit.n_qubits = n_qubits;
    Eigen::Index next = 0;
    for (int q = 0; q < n_qubits; ++q) push_gate(circuit, GateKind::RY, q, -1, thetas[next++]);
    const auto pair_block = [&](int k) {
        push_gate(circuit, GateKind::RY, k, -1, thetas[next++]);
        push_gate(circuit, GateKind::RY, k + 1, -1, thetas[next++]);
        push_gate(circuit, GateKind::CNOT, k, k + 1);
        push_gate(circuit, GateKind::RY, k, -1, thetas[next++]);
        push_gate(circuit, GateKind::RY, k + 1, -1, thetas[next++]);
        push_gate(circuit, GateKind::CNOT, k, k + 1);
    };
    // Brickwork: even pairs then odd pairs; two CNOTs per block gives
    // two-qubit depth 4 per layer.
    for (int layer = 0; layer < p; ++layer) {
        for (int k = 0; k + 1 < n_qubits; k += 2) pair_block(k);
        for (int k = 1; k + 1 < n_qubits; k += 2) pair_block(k);
    }
    return circuit;
}

GateStats gate_stats(const Circuit& circuit, GateCountConvention convention) {
    GateStats stats;
    stats.convention = convention;
    std::vector<std::int64_t> last_layer(static_cast<std::size_t>(circuit.n_qubits), 0);
    const int units_per_entangler = convention == GateCountConvention::CnotDecomposed ? 2 : 1;
    const auto schedule = [&](int qa, int qb, int units) {
        for (int u = 0; u < units; ++u) {
            const std::int64_t layer =
                1 + std::max(last_layer[static_cast<std::size_t>(qa)],
                             last_layer[static_cast<std::size_t>(qb)]);
            last_layer[static_cast<std::size_t>(qa)] = layer;
            last_layer[static_cast<std::size_t>(qb)] = layer;
            stats.two_qubit_depth = std::max(stats.two_qubit_depth, layer);
        }
        stats.two_qubit_count += units;
    };
    for (const auto& op : circuit.ops) {
        if (const Gate* gate = std::get_if<Gate>(&op)) {
            if (!gate->is_two_qubit()) continue;
            schedule(gate->q0, gate->q1, gate->kind == GateKind::CNOT ? 1 : units_per_entangler);
        } else {
            const auto& layer = std::get<PhaseLayer>(op);
            for (const auto& [i, j] : layer.couplings) schedule(i, j, units_per_entangler);
        }
    }
    return stats;
}

}  // namespace qsumm
