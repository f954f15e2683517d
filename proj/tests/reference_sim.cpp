#include "reference_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace qsumm::testing {

namespace {

// Local two-qubit basis index: bit 0 = first gate qubit, bit 1 = second.
ComplexMatrix local_matrix(const Gate& gate) {
    const Real half = gate.angle / 2.0;
    const Complex i(0.0, 1.0);
    switch (gate.kind) {
        case GateKind::RX: {
            ComplexMatrix u(2, 2);
            u << std::cos(half), -i * std::sin(half), -i * std::sin(half), std::cos(half);
            return u;
        }
        case GateKind::RY: {
            ComplexMatrix u(2, 2);
            u << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
            return u;
        }
        case GateKind::RZ: {
            ComplexMatrix u(2, 2);
            u << std::exp(-i * half), Complex(0, 0), Complex(0, 0), std::exp(i * half);
            return u;
        }
        case GateKind::H: {
            ComplexMatrix u(2, 2);
            const Real s = 1.0 / std::sqrt(2.0);
            u << s, s, s, -s;
            return u;
        }
        case GateKind::CNOT: {
            ComplexMatrix u = ComplexMatrix::Zero(4, 4);
            u(0, 0) = 1;  // |00>
            u(2, 2) = 1;  // |01> (control 0, target 1)
            u(3, 1) = 1;  // |10> -> |11>
            u(1, 3) = 1;  // |11> -> |10>
            return u;
        }
        case GateKind::RZZ: {
            ComplexMatrix u = ComplexMatrix::Zero(4, 4);
            const Complex same = std::exp(-i * half);
            const Complex diff = std::exp(i * half);
            u(0, 0) = same;
            u(3, 3) = same;
            u(1, 1) = diff;
            u(2, 2) = diff;
            return u;
        }
        case GateKind::RXXplusYY: {
            // exp(-i (theta/2)(XX+YY)) from its eigendecomposition on the
            // one-excitation subspace.
            ComplexMatrix u = ComplexMatrix::Zero(4, 4);
            u(0, 0) = 1;
            u(3, 3) = 1;
            u(1, 1) = std::cos(gate.angle);
            u(2, 2) = std::cos(gate.angle);
            u(1, 2) = -i * std::sin(gate.angle);
            u(2, 1) = -i * std::sin(gate.angle);
            return u;
        }
    }
    throw std::logic_error("unknown gate kind");
}

}  // namespace

ComplexMatrix embedded_gate_matrix(const Gate& gate, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
    const ComplexMatrix u = local_matrix(gate);
    if (!gate.is_two_qubit()) {
        const BasisIndex mask = BasisIndex{1} << gate.q0;
        for (Eigen::Index col = 0; col < dim; ++col) {
            const int b = (static_cast<BasisIndex>(col) & mask) ? 1 : 0;
            for (int bp = 0; bp < 2; ++bp) {
                const Eigen::Index row = static_cast<Eigen::Index>(
                    bp ? (static_cast<BasisIndex>(col) | mask)
                       : (static_cast<BasisIndex>(col) & ~mask));
                full(row, col) += u(bp, b);
            }
        }
        return full;
    }
    const BasisIndex mask_a = BasisIndex{1} << gate.q0;
    const BasisIndex mask_b = BasisIndex{1} << gate.q1;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const BasisIndex c = static_cast<BasisIndex>(col);
        const int local = ((c & mask_a) ? 1 : 0) + ((c & mask_b) ? 2 : 0);
        for (int lp = 0; lp < 4; ++lp) {
            BasisIndex r = c & ~(mask_a | mask_b);
            if (lp & 1) r |= mask_a;
            if (lp & 2) r |= mask_b;
            full(static_cast<Eigen::Index>(r), col) += u(lp, local);
        }
    }
    return full;
}

Real objective_raw_reference(const ProblemInstance& instance, BasisIndex x) {
    Real value = 0.0;
    for (int i = 0; i < instance.n; ++i) {
        const Real xi = ((x >> i) & 1u) ? 1.0 : 0.0;
        value += instance.mu[i] * xi;
        for (int j = 0; j < instance.n; ++j) {
            if (i == j) continue;
            const Real xj = ((x >> j) & 1u) ? 1.0 : 0.0;
            value -= instance.lambda * instance.beta(i, j) * xi * xj;
        }
    }
    return value;
}

Real objective_penalized_reference(const ProblemInstance& instance, BasisIndex x) {
    Real weight = 0.0;
    for (int i = 0; i < instance.n; ++i) weight += ((x >> i) & 1u) ? 1.0 : 0.0;
    const Real slack = weight - static_cast<Real>(instance.m);
    return objective_raw_reference(instance, x) - instance.gamma * slack * slack;
}

ComplexVector run_circuit_reference(const Circuit& circuit, const ProblemInstance* instance) {
    const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
    ComplexVector state = ComplexVector::Zero(dim);
    state[0] = Complex(1.0, 0.0);
    for (const auto& op : circuit.ops) {
        if (const Gate* gate = std::get_if<Gate>(&op)) {
            state = (embedded_gate_matrix(*gate, circuit.n_qubits) * state).eval();
        } else {
            const auto& layer = std::get<PhaseLayer>(op);
            if (!instance) throw std::logic_error("phase layer needs a problem instance");
            ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
            for (Eigen::Index x = 0; x < dim; ++x) {
                const Real f = layer.objective == ObjectiveKind::Raw
                                   ? objective_raw_reference(*instance, static_cast<BasisIndex>(x))
                                   : objective_penalized_reference(*instance,
                                                                   static_cast<BasisIndex>(x));
                diag(x, x) = std::exp(Complex(0.0, -layer.angle * f));
            }
            state = (diag * state).eval();
        }
    }
    return state;
}

Real expectation_reference(const ComplexVector& amplitudes,
                           const std::function<Real(BasisIndex)>& f) {
    Real acc = 0.0;
    for (Eigen::Index x = 0; x < amplitudes.size(); ++x) {
        const Real p = std::norm(amplitudes[x]);
        acc += p * f(static_cast<BasisIndex>(x));
    }
    return acc;
}

}  // namespace qsumm::testing
