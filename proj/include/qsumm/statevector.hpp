#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qsumm/problem.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

inline constexpr int kMaxQubits = 24;

// Dense statevector over 2^n amplitudes. Bit i of the basis index is qubit
// i's value (qubit 0 = least significant bit).
struct Statevector {
    int n_qubits = 0;
    ComplexVector amps;

    Eigen::Index dim() const { return amps.size(); }
};

enum class GateKind { RX, RY, RZ, H, CNOT, RZZ, RXXplusYY };

// RX/RY/RZ(theta) = exp(-i theta P / 2); RZZ(theta) = exp(-i (theta/2) ZZ);
// RXXplusYY(theta) = exp(-i (theta/2) (XX + YY)). CNOT: q0 = control,
// q1 = target.
struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    Real angle = 0.0;

    bool is_two_qubit() const { return q1 >= 0; }
};

// exp(-i angle f(x)) applied as an exact diagonal pass over the basis.
// `couplings` lists the quadratic pairs (i < j) with nonzero coefficient;
// they exist only for gate accounting (one RZZ-equivalent per pair).
struct PhaseLayer {
    ObjectiveKind objective = ObjectiveKind::Penalized;
    Real angle = 0.0;
    std::vector<std::pair<int, int>> couplings;
};

using CircuitOp = std::variant<Gate, PhaseLayer>;

struct Circuit {
    int n_qubits = 0;
    std::vector<CircuitOp> ops;

    bool has_phase_layers() const;
    void append(const Circuit& other);
};

// Stochastic Pauli noise. After each one-qubit gate a uniformly random
// non-identity Pauli is inserted with probability p1, after each two-qubit
// gate a uniformly random non-identity two-qubit Pauli (15 choices) with
// probability p2; measured bits flip independently with probability p_spam.
// Phase layers are exact diagonals, not gates, and acquire no noise.
struct NoiseModel {
    Real p1 = 0.0;
    Real p2 = 0.0;
    Real p_spam = 0.0;

    bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0 && p_spam == 0.0; }

    // Typical H1-1 rates: 1q infidelity 5e-5, 2q infidelity 3e-3, SPAM 3e-3.
    static NoiseModel h1_defaults() { return NoiseModel{5e-5, 3e-3, 3e-3}; }
};

struct SampleSet {
    int n_qubits = 0;
    std::uint64_t shots = 0;
    std::map<BasisIndex, std::uint64_t> counts;
};

Statevector init_zero(int n_qubits);
Statevector init_plus(int n_qubits);

void apply(Statevector& state, const Gate& gate);

// Multiplies amplitude of basis state x by exp(-i angle * values[x]).
void apply_phase_operator(Statevector& state, const RealVector& values, Real angle);

// sum_x |a_x|^2 f(x) for a diagonal observable.
Real expectation_diagonal(const Statevector& state, const RealVector& values);

template <class F>
Real expectation_diagonal_fn(const Statevector& state, F&& f) {
    Real acc = 0.0;
    for (Eigen::Index x = 0; x < state.dim(); ++x) {
        const Real p = std::norm(state.amps[x]);
        acc += p * f(static_cast<BasisIndex>(x));
    }
    return acc;
}

// Runs the circuit on |0...0>. Circuits containing phase layers need the
// instance's diagonal objective.
Statevector run_circuit(const Circuit& circuit, const DiagonalObjective* diagonal = nullptr);
void apply_circuit(Statevector& state, const Circuit& circuit,
                   const DiagonalObjective* diagonal = nullptr);

// i.i.d. measurement samples from |a_x|^2. Shot t draws from a stream
// derived from (seed, t), so the result is independent of thread count.
SampleSet sample(const Statevector& state, std::uint64_t shots, std::uint64_t seed,
                 int threads = 1);

// Noise-trajectory sampling: one trajectory per shot, Pauli insertions and
// SPAM flips from per-trajectory streams. With all rates zero this returns
// exactly sample(run_circuit(circuit), shots, seed).
SampleSet run_noisy(const Circuit& circuit, const NoiseModel& noise, std::uint64_t shots,
                    std::uint64_t seed, const DiagonalObjective* diagonal = nullptr,
                    int threads = 1);

// Textual dump, one op per line: `KIND q0[,q1][,angle]`; phase layers print
// as `PHASE objective,angle`.
std::string dump_circuit(const Circuit& circuit);

}  // namespace qsumm
