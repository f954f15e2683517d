#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsumm/problem.hpp"
#include "qsumm/statevector.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

enum class AnsatzKind { QAOA, XY_QAOA, LVQE };

// Pair layout of the XY mixer. Path applies the n-1 adjacent pairs
// (k, k+1); Ring additionally closes with (n-1, 0).
enum class MixerTopology { Path, Ring };

struct AnsatzParams {
    AnsatzKind kind = AnsatzKind::QAOA;
    int p = 1;
    RealVector gammas;  // length p (QAOA / XY-QAOA)
    RealVector betas;   // length p (QAOA / XY-QAOA)
    RealVector thetas;  // length lvqe_param_count(n, p) (L-VQE)
};

enum class GateCountConvention { Native2q, CnotDecomposed };

struct GateStats {
    std::int64_t two_qubit_count = 0;
    std::int64_t two_qubit_depth = 0;
    GateCountConvention convention = GateCountConvention::CnotDecomposed;
};

// Quadratic pairs (i < j) with nonzero coefficient under the given
// objective; these are the RZZ locations of the phase operator's gate-level
// decomposition.
std::vector<std::pair<int, int>> objective_couplings(const ProblemInstance& instance,
                                                     ObjectiveKind kind);

// H on all qubits, then p layers of [phase(gamma_j), RX(2 beta_j) on every
// qubit]. The phase encodes the penalized objective by default.
Circuit build_qaoa(const ProblemInstance& instance, const AnsatzParams& params,
                   ObjectiveKind objective = ObjectiveKind::Penalized);

// Maps |0...0> to the Dicke state: uniform positive amplitude on every
// weight-m basis state. Built from X/RY/CNOT excitation-splitting blocks;
// correctness is checked amplitude-wise in tests.
Circuit build_dicke(int n_qubits, int m);

// Dicke initial state, then p layers of [phase(gamma_j) over the raw
// objective, RXXplusYY(beta_j) on mixer pairs in ascending order].
Circuit build_xy_qaoa(const ProblemInstance& instance, const AnsatzParams& params,
                      MixerTopology topology = MixerTopology::Path,
                      ObjectiveKind objective = ObjectiveKind::Raw);

int lvqe_param_count(int n_qubits, int p);

// RY on every qubit, then per layer a brickwork of pair blocks
// [RY, RY, CNOT, RY, RY, CNOT] over even pairs then odd pairs. Two-qubit
// depth is exactly 4 per layer.
Circuit build_lvqe(int n_qubits, int p, const RealVector& thetas);

// Two-qubit gate count and ASAP-layered depth. Under CnotDecomposed each
// RZZ / RXXplusYY / phase coupling counts as two native two-qubit gates;
// under Native2q each counts once. One-qubit gates are free.
GateStats gate_stats(const Circuit& circuit, GateCountConvention convention);

}  // namespace qsumm
