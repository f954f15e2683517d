#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qsumm/ansatz.hpp"
#include "qsumm/metrics.hpp"
#include "qsumm/rng.hpp"
#include "reference_sim.hpp"

using namespace qsumm;

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

ProblemInstance random_instance(int n, int m, RandomEngine& rng) {
    RealVector mu(n);
    for (int i = 0; i < n; ++i) mu[i] = uniform_in(rng, 0.1, 1.0);
    RealMatrix beta = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) beta(i, j) = beta(j, i) = uniform_in(rng, 0.0, 1.0);
    return build_instance(mu, beta, 0.075, m);
}

AnsatzParams angle_params(AnsatzKind kind, std::initializer_list<Real> gammas,
                          std::initializer_list<Real> betas) {
    AnsatzParams params;
    params.kind = kind;
    params.p = static_cast<int>(gammas.size());
    params.gammas.resize(params.p);
    params.betas.resize(params.p);
    int i = 0;
    for (const Real g : gammas) params.gammas[i++] = g;
    i = 0;
    for (const Real b : betas) params.betas[i++] = b;
    return params;
}

Real weight_m_mass(const Statevector& state, int m) {
    Real mass = 0.0;
    for (Eigen::Index x = 0; x < state.dim(); ++x)
        if (hamming_weight(static_cast<BasisIndex>(x)) == m) mass += std::norm(state.amps[x]);
    return mass;
}

}  // namespace

TEST_CASE("qaoa at zero angles is the uniform superposition") {
    RandomEngine rng = make_engine(1);
    const ProblemInstance instance = random_instance(5, 2, rng);
    const DiagonalObjective diag = build_diagonal_objective(instance);
    const Circuit circuit =
        build_qaoa(instance, angle_params(AnsatzKind::QAOA, {0.0}, {0.0}));
    const Statevector state = run_circuit(circuit, &diag);
    for (Eigen::Index x = 0; x < state.dim(); ++x)
        REQUIRE(std::norm(state.amps[x]) == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("single-qubit qaoa keeps uniform magnitudes from |+>") {
    RealVector mu(2);
    mu << 1.0, 0.0;  // f(x) = x_0: expectation 0.5 on the uniform state
    ProblemInstance instance = build_instance(mu, RealMatrix::Zero(2, 2), 0.0, 1);
    instance.gamma = 0.0;
    const DiagonalObjective diag = build_diagonal_objective(instance);
    const Circuit circuit =
        build_qaoa(instance, angle_params(AnsatzKind::QAOA, {0.0}, {0.77}));
    const Statevector state = run_circuit(circuit, &diag);
    CHECK(expectation_diagonal(state, diag.raw) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("qaoa expectation matches the dense-matrix oracle") {
    RandomEngine rng = make_engine(2);
    for (int trial = 0; trial < 3; ++trial) {
        const ProblemInstance instance = random_instance(4, 2, rng);
        const DiagonalObjective diag = build_diagonal_objective(instance);
        const AnsatzParams params = angle_params(
            AnsatzKind::QAOA, {uniform_in(rng, 0, kPi)}, {uniform_in(rng, 0, kPi)});
        const Circuit circuit = build_qaoa(instance, params);
        const Statevector state = run_circuit(circuit, &diag);
        const ComplexVector reference = testing::run_circuit_reference(circuit, &instance);
        const Real expect = expectation_diagonal(state, diag.penalized);
        const Real expect_ref = testing::expectation_reference(reference, [&](BasisIndex x) {
            return testing::objective_penalized_reference(instance, x);
        });
        REQUIRE(expect == doctest::Approx(expect_ref).epsilon(1e-9));
        REQUIRE((state.amps - reference).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("qaoa distribution is periodic in beta with period pi") {
    RandomEngine rng = make_engine(3);
    const ProblemInstance instance = random_instance(4, 2, rng);
    const DiagonalObjective diag = build_diagonal_objective(instance);
    const Real gamma = 0.31;
    const Real beta = 0.47;
    const Statevector a = run_circuit(
        build_qaoa(instance, angle_params(AnsatzKind::QAOA, {gamma}, {beta})), &diag);
    const Statevector b = run_circuit(
        build_qaoa(instance, angle_params(AnsatzKind::QAOA, {gamma}, {beta + kPi})), &diag);
    const RealVector pa = a.amps.array().abs2();
    const RealVector pb = b.amps.array().abs2();
    CHECK((pa - pb).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("dicke state for small cases") {
    const Statevector two = run_circuit(build_dicke(2, 1));
    CHECK(std::abs(two.amps[1] - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(two.amps[2] - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(two.amps[0]) < 1e-12);
    CHECK(std::abs(two.amps[3]) < 1e-12);

    const Statevector four = run_circuit(build_dicke(4, 2));
    for (Eigen::Index x = 0; x < 16; ++x) {
        const Real expected =
            hamming_weight(static_cast<BasisIndex>(x)) == 2 ? 1.0 / 6.0 : 0.0;
        REQUIRE(std::norm(four.amps[x]) == doctest::Approx(expected).epsilon(1e-10));
    }

    CHECK_THROWS_AS(build_dicke(4, 0), Error);
    CHECK_THROWS_AS(build_dicke(4, 4), Error);
}

TEST_CASE("dicke amplitudes are uniform, positive and confined for n <= 8") {
    for (int n = 2; n <= 8; ++n) {
        for (int m = 1; m < n; ++m) {
            const Statevector state = run_circuit(build_dicke(n, m));
            const Real expected = 1.0 / std::sqrt(binomial_coefficient(n, m));
            for (Eigen::Index x = 0; x < state.dim(); ++x) {
                if (hamming_weight(static_cast<BasisIndex>(x)) == m) {
                    REQUIRE(std::abs(state.amps[x] - Complex(expected, 0.0)) < 1e-9);
                } else {
                    REQUIRE(std::abs(state.amps[x]) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("dicke 14 choose 8 support is uniform") {
    const Statevector state = run_circuit(build_dicke(14, 8));
    const Real expected_prob = 1.0 / binomial_coefficient(14, 8);  // support 3003
    int support = 0;
    for (Eigen::Index x = 0; x < state.dim(); ++x) {
        const Real p = std::norm(state.amps[x]);
        if (hamming_weight(static_cast<BasisIndex>(x)) == 8) {
            REQUIRE(p == doctest::Approx(expected_prob).epsilon(1e-9));
            ++support;
        } else {
            REQUIRE(p < 1e-18);
        }
    }
    CHECK(support == 3003);
}

TEST_CASE("xy-qaoa stays in the weight-m subspace and matches the oracle") {
    RandomEngine rng = make_engine(4);
    const ProblemInstance instance = random_instance(4, 2, rng);
    const DiagonalObjective diag = build_diagonal_objective(instance);

    const Circuit zero = build_xy_qaoa(instance, angle_params(AnsatzKind::XY_QAOA, {0.0}, {0.0}));
    const Statevector dicke = run_circuit(build_dicke(4, 2));
    const Statevector zero_state = run_circuit(zero, &diag);
    CHECK((zero_state.amps - dicke.amps).cwiseAbs().maxCoeff() < 1e-12);

    const AnsatzParams params = angle_params(
        AnsatzKind::XY_QAOA, {uniform_in(rng, 0, kPi)}, {uniform_in(rng, 0, kPi)});
    const Circuit circuit = build_xy_qaoa(instance, params);
    const Statevector state = run_circuit(circuit, &diag);
    CHECK(weight_m_mass(state, 2) >= 1.0 - 1e-9);

    const ComplexVector reference = testing::run_circuit_reference(circuit, &instance);
    const Real expect = expectation_diagonal(state, diag.raw);
    const Real expect_ref = testing::expectation_reference(reference, [&](BasisIndex x) {
        return testing::objective_raw_reference(instance, x);
    });
    REQUIRE(expect == doctest::Approx(expect_ref).epsilon(1e-9));
}

TEST_CASE("xy-qaoa constraint preservation across random draws") {
    RandomEngine rng = make_engine(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(uniform_index(rng, 5));
        const int m = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
        const int p = 1 + static_cast<int>(uniform_index(rng, 3));
        const ProblemInstance instance = random_instance(n, m, rng);
        const DiagonalObjective diag = build_diagonal_objective(instance);
        AnsatzParams params;
        params.kind = AnsatzKind::XY_QAOA;
        params.p = p;
        params.gammas.resize(p);
        params.betas.resize(p);
        for (int j = 0; j < p; ++j) {
            params.gammas[j] = uniform_in(rng, 0, kPi);
            params.betas[j] = uniform_in(rng, 0, kPi);
        }
        const MixerTopology topology =
            (trial % 2 == 0) ? MixerTopology::Path : MixerTopology::Ring;
        const Statevector state = run_circuit(build_xy_qaoa(instance, params, topology), &diag);
        REQUIRE(weight_m_mass(state, m) >= 1.0 - 1e-9);
    }
}

TEST_CASE("lvqe identity and basis-state expressiveness") {
    const int n = 6;
    const RealVector zeros = RealVector::Zero(lvqe_param_count(n, 1));
    const Statevector vacuum = run_circuit(build_lvqe(n, 1, zeros));
    CHECK(std::abs(vacuum.amps[0] - Complex(1.0, 0.0)) < 1e-12);

    // RY(pi) on a chosen weight-m subset maps |0...0> to that basis state.
    RealVector thetas = RealVector::Zero(lvqe_param_count(n, 1));
    thetas[1] = kPi;
    thetas[3] = kPi;
    thetas[4] = kPi;
    const Statevector state = run_circuit(build_lvqe(n, 1, thetas));
    const BasisIndex target = (1u << 1) | (1u << 3) | (1u << 4);
    CHECK(std::norm(state.amps[static_cast<Eigen::Index>(target)]) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(build_lvqe(n, 1, RealVector::Zero(3)), Error);
}

TEST_CASE("lvqe parameter count formula") {
    CHECK(lvqe_param_count(14, 1) == 66);
    CHECK(lvqe_param_count(20, 2) == 172);
    CHECK(lvqe_param_count(6, 3) == 66);
}

TEST_CASE("lvqe matches the dense-matrix oracle") {
    RandomEngine rng = make_engine(6);
    const int n = 4;
    RealVector thetas(lvqe_param_count(n, 2));
    for (Eigen::Index i = 0; i < thetas.size(); ++i) thetas[i] = uniform_in(rng, -kPi, kPi);
    const Circuit circuit = build_lvqe(n, 2, thetas);
    const Statevector state = run_circuit(circuit);
    const ComplexVector reference = testing::run_circuit_reference(circuit, nullptr);
    REQUIRE((state.amps - reference).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("gate counts reproduce the published table") {
    RandomEngine rng = make_engine(7);

    // QAOA with dense quadratic terms: 2 * C(n,2) under cnot decomposition.
    const ProblemInstance inst14 = random_instance(14, 8, rng);
    const DiagonalObjective diag14 = build_diagonal_objective(inst14);
    const Circuit qaoa14 = build_qaoa(inst14, angle_params(AnsatzKind::QAOA, {0.4}, {0.3}));
    CHECK(gate_stats(qaoa14, GateCountConvention::CnotDecomposed).two_qubit_count == 182);

    const ProblemInstance inst20 = random_instance(20, 8, rng);
    const Circuit qaoa20 = build_qaoa(inst20, angle_params(AnsatzKind::QAOA, {0.4}, {0.3}));
    CHECK(gate_stats(qaoa20, GateCountConvention::CnotDecomposed).two_qubit_count == 380);

    // L-VQE: 26 gates at (14,1), 76 at (20,2), depth 4p.
    const Circuit lvqe14 = build_lvqe(14, 1, RealVector::Zero(lvqe_param_count(14, 1)));
    const GateStats lvqe14_stats = gate_stats(lvqe14, GateCountConvention::CnotDecomposed);
    CHECK(lvqe14_stats.two_qubit_count == 26);
    CHECK(lvqe14_stats.two_qubit_depth == 4);

    const Circuit lvqe20 = build_lvqe(20, 2, RealVector::Zero(lvqe_param_count(20, 2)));
    const GateStats lvqe20_stats = gate_stats(lvqe20, GateCountConvention::CnotDecomposed);
    CHECK(lvqe20_stats.two_qubit_count == 76);
    CHECK(lvqe20_stats.two_qubit_depth == 8);

    // XY mixer contribution per layer: 2 (n-1) on the path topology.
    const Circuit xy14 = build_xy_qaoa(inst14, angle_params(AnsatzKind::XY_QAOA, {0.4}, {0.3}));
    const Circuit dicke14 = build_dicke(14, 8);
    const auto xy_full = gate_stats(xy14, GateCountConvention::CnotDecomposed).two_qubit_count;
    const auto dicke_count =
        gate_stats(dicke14, GateCountConvention::CnotDecomposed).two_qubit_count;
    CHECK(xy_full - dicke_count - 182 == 26);  // mixer alone

    const Circuit xy20 = build_xy_qaoa(inst20, angle_params(AnsatzKind::XY_QAOA, {0.4}, {0.3}));
    const Circuit dicke20 = build_dicke(20, 8);
    const auto xy20_full = gate_stats(xy20, GateCountConvention::CnotDecomposed).two_qubit_count;
    const auto dicke20_count =
        gate_stats(dicke20, GateCountConvention::CnotDecomposed).two_qubit_count;
    CHECK(xy20_full - dicke20_count - 380 == 38);
}

TEST_CASE("lvqe depth is 4p for a range of sizes") {
    for (int n = 3; n <= 9; ++n) {
        for (int p = 1; p <= 3; ++p) {
            const Circuit circuit = build_lvqe(n, p, RealVector::Zero(lvqe_param_count(n, p)));
            CHECK(gate_stats(circuit, GateCountConvention::CnotDecomposed).two_qubit_depth ==
                  4 * p);
        }
    }
}

TEST_CASE("gate_stats conventions and empty circuit") {
    Circuit empty;
    empty.n_qubits = 3;
    const GateStats none = gate_stats(empty, GateCountConvention::CnotDecomposed);
    CHECK(none.two_qubit_count == 0);
    CHECK(none.two_qubit_depth == 0);

    Circuit mixed;
    mixed.n_qubits = 4;
    mixed.ops.push_back(Gate{GateKind::RZZ, 0, 1, 0.5});
    mixed.ops.push_back(Gate{GateKind::RXXplusYY, 2, 3, 0.5});
    mixed.ops.push_back(Gate{GateKind::CNOT, 1, 2});
    CHECK(gate_stats(mixed, GateCountConvention::CnotDecomposed).two_qubit_count == 5);
    CHECK(gate_stats(mixed, GateCountConvention::Native2q).two_qubit_count == 3);
    // RZZ(0,1) and RXXplusYY(2,3) overlap nowhere: depth 2 decomposed, then
    // the CNOT bridges both pairs.
    CHECK(gate_stats(mixed, GateCountConvention::CnotDecomposed).two_qubit_depth == 3);
    CHECK(gate_stats(mixed, GateCountConvention::Native2q).two_qubit_depth == 2);

    // Ring topology adds one mixer pair.
    RandomEngine rng = make_engine(8);
    const ProblemInstance instance = random_instance(6, 2, rng);
    const auto path_count =
        gate_stats(build_xy_qaoa(instance, angle_params(AnsatzKind::XY_QAOA, {0.1}, {0.2}),
                                 MixerTopology::Path),
                   GateCountConvention::CnotDecomposed)
            .two_qubit_count;
    const auto ring_count =
        gate_stats(build_xy_qaoa(instance, angle_params(AnsatzKind::XY_QAOA, {0.1}, {0.2}),
                                 MixerTopology::Ring),
                   GateCountConvention::CnotDecomposed)
            .two_qubit_count;
    CHECK(ring_count - path_count == 2);
}

TEST_CASE("param validation") {
    RandomEngine rng = make_engine(9);
    const ProblemInstance instance = random_instance(4, 2, rng);
    AnsatzParams bad;
    bad.kind = AnsatzKind::QAOA;
    bad.p = 2;
    bad.gammas = RealVector::Zero(1);
    bad.betas = RealVector::Zero(2);
    CHECK_THROWS_AS(build_qaoa(instance, bad), Error);
    bad.kind = AnsatzKind::XY_QAOA;
    CHECK_THROWS_AS(build_xy_qaoa(instance, bad), Error);
}
