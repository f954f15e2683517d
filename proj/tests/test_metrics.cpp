#include <cmath>

#include <doctest.h>

#include "qsumm/ansatz.hpp"
#include "qsumm/metrics.hpp"
#include "qsumm/rng.hpp"

using namespace qsumm;

namespace {

ProblemInstance random_instance(int n, int m, RandomEngine& rng) {
    RealVector mu(n);
    for (int i = 0; i < n; ++i) mu[i] = uniform_in(rng, 0.1, 1.0);
    RealMatrix beta = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) beta(i, j) = beta(j, i) = uniform_in(rng, 0.0, 1.0);
    return build_instance(mu, beta, 0.075, m);
}

SampleSet make_samples(int n, std::map<BasisIndex, std::uint64_t> counts) {
    SampleSet set;
    set.n_qubits = n;
    set.counts = std::move(counts);
    for (const auto& [x, c] : set.counts) set.shots += c;
    return set;
}

}  // namespace

TEST_CASE("approximation_ratio fixtures at 1e-12") {
    CHECK(std::abs(approximation_ratio(6.0, -2.0, 6.0) - 1.0) < 1e-12);
    CHECK(std::abs(approximation_ratio(-2.0, -2.0, 6.0) - 0.0) < 1e-12);
    CHECK(std::abs(approximation_ratio(4.0, -2.0, 6.0) - 0.75) < 1e-12);
    CHECK_THROWS_AS(approximation_ratio(1.0, 2.0, 2.0), Error);
}

TEST_CASE("in_constraint_probability on samples and states") {
    const SampleSet all_in = make_samples(4, {{0b0011, 7}, {0b0101, 3}});
    CHECK(in_constraint_probability(all_in, 2) == doctest::Approx(1.0));
    const SampleSet none_in = make_samples(4, {{0b0111, 5}});
    CHECK(in_constraint_probability(none_in, 2) == doctest::Approx(0.0));

    // Uniform distribution over 2^20 strings: C(20,8)/2^20.
    Statevector uniform = init_plus(20);
    CHECK(in_constraint_probability(uniform, 8) ==
          doctest::Approx(binomial_coefficient(20, 8) / 1048576.0).epsilon(1e-12));
}

TEST_CASE("mean_in_constraint_objective") {
    RandomEngine rng = make_engine(200);
    const ProblemInstance instance = random_instance(4, 2, rng);
    const SampleSet single = make_samples(4, {{0b0011, 13}});
    CHECK(*mean_in_constraint_objective(single, instance) ==
          doctest::Approx(objective_raw(instance, 0b0011)));
    const SampleSet none = make_samples(4, {{0b0001, 4}});
    CHECK(!mean_in_constraint_objective(none, instance).has_value());
}

TEST_CASE("exact conditional mean agrees with the brute-force oracle on the uniform state") {
    RandomEngine rng = make_engine(201);
    const ProblemInstance instance = random_instance(8, 3, rng);
    const OracleResult oracle = brute_force(instance);
    const Statevector uniform = init_plus(8);
    const auto mean = mean_in_constraint_objective(uniform, instance);
    REQUIRE(mean.has_value());
    CHECK(*mean == doctest::Approx(oracle.mean_feasible).epsilon(1e-10));
}

TEST_CASE("hamming distance distribution") {
    const SampleSet all_m = make_samples(4, {{0b0011, 10}});
    const auto hist = hamming_distance_distribution(all_m, 2);
    REQUIRE(hist.size() == 1);
    CHECK(hist.at(0) == doctest::Approx(1.0));

    const SampleSet split = make_samples(2, {{0b00, 1}, {0b11, 1}});
    const auto hist2 = hamming_distance_distribution(split, 1);
    REQUIRE(hist2.size() == 1);
    CHECK(hist2.at(1) == doctest::Approx(1.0));

    const SampleSet uniform = make_samples(2, {{0b00, 1}, {0b01, 1}, {0b10, 1}, {0b11, 1}});
    const auto hist3 = hamming_distance_distribution(uniform, 1);
    CHECK(hist3.at(0) == doctest::Approx(0.5));
    CHECK(hist3.at(1) == doctest::Approx(0.5));
}

TEST_CASE("random hamming baseline") {
    const auto base = random_hamming_baseline(2, 1);
    CHECK(base.at(0) == doctest::Approx(0.5));
    CHECK(base.at(1) == doctest::Approx(0.5));

    const auto big = random_hamming_baseline(20, 8);
    Real total = 0.0;
    for (const auto& [d, p] : big) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(big.at(0) == doctest::Approx(binomial_coefficient(20, 8) / 1048576.0).epsilon(1e-12));
}

TEST_CASE("icp equals the hamming histogram at distance zero") {
    RandomEngine rng = make_engine(202);
    for (int trial = 0; trial < 10; ++trial) {
        std::map<BasisIndex, std::uint64_t> counts;
        const int n = 5;
        for (int k = 0; k < 20; ++k) counts[uniform_index(rng, 32)] += 1 + uniform_index(rng, 9);
        const SampleSet samples = make_samples(n, std::move(counts));
        const int m = 2;
        const auto hist = hamming_distance_distribution(samples, m);
        const Real at_zero = hist.count(0) ? hist.at(0) : 0.0;
        CHECK(in_constraint_probability(samples, m) == doctest::Approx(at_zero).epsilon(1e-12));
        Real total = 0.0;
        for (const auto& [d, p] : hist) {
            total += p;
            CHECK(p >= 0.0);
            CHECK(p <= 1.0 + 1e-12);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("noiseless xy state has unit ICP and a point histogram") {
    RandomEngine rng = make_engine(203);
    const ProblemInstance instance = random_instance(6, 3, rng);
    const DiagonalObjective diag = build_diagonal_objective(instance);
    AnsatzParams params;
    params.kind = AnsatzKind::XY_QAOA;
    params.p = 1;
    params.gammas = RealVector::Constant(1, 0.6);
    params.betas = RealVector::Constant(1, 0.9);
    const Statevector state = run_circuit(build_xy_qaoa(instance, params), &diag);
    CHECK(in_constraint_probability(state, 3) >= 1.0 - 1e-9);
    const auto hist = hamming_distance_distribution(state, 3);
    CHECK(hist.at(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("metric report composition") {
    RandomEngine rng = make_engine(204);
    const ProblemInstance instance = random_instance(5, 2, rng);
    const OracleResult oracle = brute_force(instance);

    // AR of the argmax is 1.
    const SampleSet argmax_samples = make_samples(5, {{oracle.argmax, 100}});
    const MetricReport top = compute_metrics(argmax_samples, instance, oracle);
    REQUIRE(top.approx_ratio.has_value());
    CHECK(*top.approx_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(top.icp == doctest::Approx(1.0));

    // Uniform feasible mixture reproduces the random baseline AR.
    const Statevector uniform = init_plus(5);
    const MetricReport random_like = compute_metrics(uniform, instance, oracle);
    REQUIRE(random_like.approx_ratio.has_value());
    const Real baseline_ar =
        (oracle.mean_feasible - oracle.f_min) / (oracle.f_max - oracle.f_min);
    CHECK(*random_like.approx_ratio == doctest::Approx(baseline_ar).epsilon(1e-10));

    // Zero in-constraint mass leaves AR undefined.
    const SampleSet out = make_samples(5, {{0b00001, 5}});
    const MetricReport undefined = compute_metrics(out, instance, oracle);
    CHECK(!undefined.approx_ratio.has_value());
    CHECK(!undefined.f_observed.has_value());
    CHECK(undefined.icp == doctest::Approx(0.0));

    // Degenerate feasible range reports AR 1 with the flag set.
    const ProblemInstance flat =
        build_instance(RealVector::Constant(4, 0.5), RealMatrix::Zero(4, 4), 0.075, 2);
    const OracleResult flat_oracle = brute_force(flat);
    const SampleSet feasible = make_samples(4, {{0b0011, 10}});
    const MetricReport degenerate = compute_metrics(feasible, flat, flat_oracle);
    REQUIRE(degenerate.approx_ratio.has_value());
    CHECK(*degenerate.approx_ratio == doctest::Approx(1.0));
    CHECK(degenerate.degenerate_range);
}
