#include "qsumm/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qsumm/errors.hpp"
#include "qsumm/parallel.hpp"
#include "qsumm/rng.hpp"

namespace qsumm {

namespace {

void check_qubit(const Statevector& state, int q, const char* what) {
    if (q < 0 || q >= state.n_qubits)
        throw Error(Errc::index_out_of_range,
                    std::string(what) + ": qubit index " + std::to_string(q) + " out of range");
}

// Applies the 2x2 matrix {{u00, u01}, {u10, u11}} to qubit q.
void apply_1q(Statevector& state, int q, Complex u00, Complex u01, Complex u10, Complex u11) {
    Complex* a = state.amps.data();
    const BasisIndex dim = static_cast<BasisIndex>(state.dim());
    const BasisIndex mask = BasisIndex{1} << q;
    for (BasisIndex x = 0; x < dim; ++x) {
        if (x & mask) continue;
        const BasisIndex x1 = x | mask;
        const Complex a0 = a[x];
        const Complex a1 = a[x1];
        a[x] = u00 * a0 + u01 * a1;
        a[x1] = u10 * a0 + u11 * a1;
    }
}

void apply_cnot(Statevector& state, int control, int target) {
    Complex* a = state.amps.data();
    const BasisIndex dim = static_cast<BasisIndex>(state.dim());
    const BasisIndex cmask = BasisIndex{1} << control;
    const BasisIndex tmask = BasisIndex{1} << target;
    for (BasisIndex x = 0; x < dim; ++x) {
        if ((x & cmask) && !(x & tmask)) std::swap(a[x], a[x | tmask]);
    }
}

void apply_rzz(Statevector& state, int qa, int qb, Real angle) {
    Complex* a = state.amps.data();
    const BasisIndex dim = static_cast<BasisIndex>(state.dim());
    const Complex same = std::polar(1.0, -angle / 2.0);   // ZZ eigenvalue +1
    const Complex diff = std::polar(1.0, +angle / 2.0);   // ZZ eigenvalue -1
    for (BasisIndex x = 0; x < dim; ++x) {
        const bool ba = (x >> qa) & 1u;
        const bool bb = (x >> qb) & 1u;
        a[x] *= (ba == bb) ? same : diff;
    }
}

// exp(-i (theta/2) (XX+YY)) acts as identity on |00>, |11> and rotates the
// single-excitation pair: |10> -> cos(theta)|10> - i sin(theta)|01>.
void apply_rxx_plus_yy(Statevector& state, int qa, int qb, Real angle) {
    Complex* a = state.amps.data();
    const BasisIndex dim = static_cast<BasisIndex>(state.dim());
    const BasisIndex amask = BasisIndex{1} << qa;
    const BasisIndex bmask = BasisIndex{1} << qb;
    const Real c = std::cos(angle);
    const Complex mis(0.0, -std::sin(angle));
    for (BasisIndex x = 0; x < dim; ++x) {
        if ((x & amask) && !(x & bmask)) {
            const BasisIndex y = (x ^ amask) | bmask;  // qa=0, qb=1 partner
            const Complex a10 = a[x];
            const Complex a01 = a[y];
            a[x] = c * a10 + mis * a01;
            a[y] = mis * a10 + c * a01;
        }
    }
}

void apply_pauli(Statevector& state, int q, int pauli) {
    // pauli: 1 = X, 2 = Y, 3 = Z
    Complex* a = state.amps.data();
    const BasisIndex dim = static_cast<BasisIndex>(state.dim());
    const BasisIndex mask = BasisIndex{1} << q;
    switch (pauli) {
        case 1:
            for (BasisIndex x = 0; x < dim; ++x)
                if (!(x & mask)) std::swap(a[x], a[x | mask]);
            break;
        case 2:
            for (BasisIndex x = 0; x < dim; ++x) {
                if (x & mask) continue;
                const BasisIndex x1 = x | mask;
                const Complex a0 = a[x];
                const Complex a1 = a[x1];
                a[x] = Complex(0.0, -1.0) * a1;  // Y|1> = -i|0>
                a[x1] = Complex(0.0, 1.0) * a0;  // Y|0> = +i|1>
            }
            break;
        case 3:
            for (BasisIndex x = 0; x < dim; ++x)
                if (x & mask) a[x] = -a[x];
            break;
        default:
            break;
    }
}

std::vector<Real> cumulative_probabilities(const Statevector& state) {
    std::vector<Real> cdf(static_cast<std::size_t>(state.dim()));
    Real acc = 0.0;
    for (Eigen::Index x = 0; x < state.dim(); ++x) {
        acc += std::norm(state.amps[x]);
        cdf[static_cast<std::size_t>(x)] = acc;
    }
    return cdf;
}

BasisIndex draw_index(const std::vector<Real>& cdf, RandomEngine& rng) {
    const Real u = uniform_unit(rng) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<BasisIndex>(std::min<std::ptrdiff_t>(
        std::distance(cdf.begin(), it), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

BasisIndex spam_flip(BasisIndex x, int n_qubits, Real p_spam, RandomEngine& rng) {
    if (p_spam <= 0.0) return x;
    for (int i = 0; i < n_qubits; ++i)
        if (uniform_unit(rng) < p_spam) x ^= BasisIndex{1} << i;
    return x;
}

SampleSet merge_shot_outcomes(int n_qubits, const std::vector<BasisIndex>& outcomes) {
    SampleSet set;
    set.n_qubits = n_qubits;
    set.shots = outcomes.size();
    for (BasisIndex x : outcomes) ++set.counts[x];
    return set;
}

}  // namespace

bool Circuit::has_phase_layers() const {
    for (const auto& op : ops)
        if (std::holds_alternative<PhaseLayer>(op)) return true;
    return false;
}

void Circuit::append(const Circuit& other) {
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

Statevector init_zero(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw Error(Errc::too_many_qubits, "init_zero: qubit count must be in [1, " +
                                               std::to_string(kMaxQubits) + "]");
    Statevector state;
    state.n_qubits = n_qubits;
    state.amps = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
    state.amps[0] = Complex(1.0, 0.0);
    return state;
}

Statevector init_plus(int n_qubits) {
    Statevector state = init_zero(n_qubits);
    const Real amp = std::pow(2.0, -0.5 * n_qubits);
    state.amps.setConstant(Complex(amp, 0.0));
    return state;
}

void apply(Statevector& state, const Gate& gate) {
    check_qubit(state, gate.q0, "apply");
    if (gate.is_two_qubit()) {
        check_qubit(state, gate.q1, "apply");
        if (gate.q0 == gate.q1)
            throw Error(Errc::index_out_of_range, "apply: two-qubit gate needs distinct qubits");
    }
    const Real half = gate.angle / 2.0;
    switch (gate.kind) {
        case GateKind::RX:
            apply_1q(state, gate.q0, Complex(std::cos(half), 0.0), Complex(0.0, -std::sin(half)),
                     Complex(0.0, -std::sin(half)), Complex(std::cos(half), 0.0));
            break;
        case GateKind::RY:
            apply_1q(state, gate.q0, Complex(std::cos(half), 0.0), Complex(-std::sin(half), 0.0),
                     Complex(std::sin(half), 0.0), Complex(std::cos(half), 0.0));
            break;
        case GateKind::RZ:
            apply_1q(state, gate.q0, std::polar(1.0, -half), Complex(0.0, 0.0), Complex(0.0, 0.0),
                     std::polar(1.0, half));
            break;
        case GateKind::H: {
            const Real s = 1.0 / std::sqrt(2.0);
            apply_1q(state, gate.q0, Complex(s, 0.0), Complex(s, 0.0), Complex(s, 0.0),
                     Complex(-s, 0.0));
            break;
        }
        case GateKind::CNOT:
            apply_cnot(state, gate.q0, gate.q1);
            break;
        case GateKind::RZZ:
            apply_rzz(state, gate.q0, gate.q1, gate.angle);
            break;
        case GateKind::RXXplusYY:
            apply_rxx_plus_yy(state, gate.q0, gate.q1, gate.angle);
            break;
    }
}

void apply_phase_operator(Statevector& state, const RealVector& values, Real angle) {
    if (values.size() != state.dim())
        throw Error(Errc::dimension_mismatch,
                    "apply_phase_operator: diagonal size does not match state dimension");
    if (angle == 0.0) return;
    Complex* a = state.amps.data();
    const Real* f = values.data();
    const Eigen::Index dim = state.dim();
    for (Eigen::Index x = 0; x < dim; ++x) a[x] *= std::polar(1.0, -angle * f[x]);
}

Real expectation_diagonal(const Statevector& state, const RealVector& values) {
    if (values.size() != state.dim())
        throw Error(Errc::dimension_mismatch,
                    "expectation_diagonal: diagonal size does not match state dimension");
    return state.amps.array().abs2().matrix().dot(values);
}

void apply_circuit(Statevector& state, const Circuit& circuit, const DiagonalObjective* diagonal) {
    if (circuit.n_qubits != state.n_qubits)
        throw Error(Errc::dimension_mismatch, "apply_circuit: qubit count mismatch");
    for (const auto& op : circuit.ops) {
        if (const Gate* gate = std::get_if<Gate>(&op)) {
            apply(state, *gate);
        } else {
            const auto& layer = std::get<PhaseLayer>(op);
            if (!diagonal)
                throw Error(Errc::dimension_mismatch,
                            "apply_circuit: circuit has phase layers but no diagonal objective");
            apply_phase_operator(state, diagonal->of(layer.objective), layer.angle);
        }
    }
}

Statevector run_circuit(const Circuit& circuit, const DiagonalObjective* diagonal) {
    Statevector state = init_zero(circuit.n_qubits);
    apply_circuit(state, circuit, diagonal);
    return state;
}

SampleSet sample(const Statevector& state, std::uint64_t shots, std::uint64_t seed, int threads) {
    if (shots < 1) throw Error(Errc::empty_input, "sample: shots must be >= 1");
    const auto cdf = cumulative_probabilities(state);
    std::vector<BasisIndex> outcomes(shots);
    parallel_for(shots, threads, [&](std::size_t t) {
        RandomEngine rng = make_engine(derive_stream(seed, t, 0));
        outcomes[t] = draw_index(cdf, rng);
    });
    return merge_shot_outcomes(state.n_qubits, outcomes);
}

SampleSet run_noisy(const Circuit& circuit, const NoiseModel& noise, std::uint64_t shots,
                    std::uint64_t seed, const DiagonalObjective* diagonal, int threads) {
    if (shots < 1) throw Error(Errc::empty_input, "run_noisy: shots must be >= 1");
    std::vector<BasisIndex> outcomes(shots);
    if (noise.p1 == 0.0 && noise.p2 == 0.0) {
        // All trajectories share the ideal state; only measurement and SPAM
        // streams differ per shot.
        const Statevector state = run_circuit(circuit, diagonal);
        const auto cdf = cumulative_probabilities(state);
        parallel_for(shots, threads, [&](std::size_t t) {
            RandomEngine meas = make_engine(derive_stream(seed, t, 0));
            RandomEngine noise_rng = make_engine(derive_stream(seed, t, 1));
            const BasisIndex x = draw_index(cdf, meas);
            outcomes[t] = spam_flip(x, circuit.n_qubits, noise.p_spam, noise_rng);
        });
        return merge_shot_outcomes(circuit.n_qubits, outcomes);
    }
    parallel_for(shots, threads, [&](std::size_t t) {
        RandomEngine meas = make_engine(derive_stream(seed, t, 0));
        RandomEngine noise_rng = make_engine(derive_stream(seed, t, 1));
        Statevector state = init_zero(circuit.n_qubits);
        for (const auto& op : circuit.ops) {
            if (const Gate* gate = std::get_if<Gate>(&op)) {
                apply(state, *gate);
                if (gate->is_two_qubit()) {
                    if (noise.p2 > 0.0 && uniform_unit(noise_rng) < noise.p2) {
                        // 15 non-identity two-qubit Paulis.
                        const auto choice = uniform_index(noise_rng, 15) + 1;
                        const int pa = static_cast<int>(choice % 4);
                        const int pb = static_cast<int>(choice / 4);
                        if (pa != 0) apply_pauli(state, gate->q0, pa);
                        if (pb != 0) apply_pauli(state, gate->q1, pb);
                    }
                } else if (noise.p1 > 0.0 && uniform_unit(noise_rng) < noise.p1) {
                    const auto pauli = uniform_index(noise_rng, 3) + 1;
                    apply_pauli(state, gate->q0, static_cast<int>(pauli));
                }
            } else {
                const auto& layer = std::get<PhaseLayer>(op);
                if (!diagonal)
                    throw Error(Errc::dimension_mismatch,
                                "run_noisy: circuit has phase layers but no diagonal objective");
                apply_phase_operator(state, diagonal->of(layer.objective), layer.angle);
            }
        }
        const auto cdf = cumulative_probabilities(state);
        const BasisIndex x = draw_index(cdf, meas);
        outcomes[t] = spam_flip(x, circuit.n_qubits, noise.p_spam, noise_rng);
    });
    return merge_shot_outcomes(circuit.n_qubits, outcomes);
}

std::string dump_circuit(const Circuit& circuit) {
    std::ostringstream out;
    char buf[64];
    const auto angle_str = [&buf](Real angle) {
        std::snprintf(buf, sizeof(buf), "%.17g", angle);
        return std::string(buf);
    };
    for (const auto& op : circuit.ops) {
        if (const Gate* gate = std::get_if<Gate>(&op)) {
            switch (gate->kind) {
                case GateKind::RX: out << "RX " << gate->q0 << "," << angle_str(gate->angle); break;
                case GateKind::RY: out << "RY " << gate->q0 << "," << angle_str(gate->angle); break;
                case GateKind::RZ: out << "RZ " << gate->q0 << "," << angle_str(gate->angle); break;
                case GateKind::H: out << "H " << gate->q0; break;
                case GateKind::CNOT: out << "CNOT " << gate->q0 << "," << gate->q1; break;
                case GateKind::RZZ:
                    out << "RZZ " << gate->q0 << "," << gate->q1 << "," << angle_str(gate->angle);
                    break;
                case GateKind::RXXplusYY:
                    out << "RXXplusYY " << gate->q0 << "," << gate->q1 << ","
                        << angle_str(gate->angle);
                    break;
            }
        } else {
            const auto& layer = std::get<PhaseLayer>(op);
            out << "PHASE "
                << (layer.objective == ObjectiveKind::Raw ? "raw" : "penalized") << ","
                << angle_str(layer.angle);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qsumm
