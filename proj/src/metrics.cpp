#include "qsumm/metrics.hpp"

#include <cmath>

#include "qsumm/errors.hpp"

namespace qsumm {

namespace {

template <class AddMass>
std::map<int, Real> normalized_histogram(const AddMass& add_mass) {
    std::map<int, Real> hist;
    Real total = 0.0;
    add_mass(hist, total);
    for (auto& [d, p] : hist) p /= total;
    return hist;
}

MetricReport make_report(Real icp, std::optional<Real> f_observed, const OracleResult& oracle,
                         std::map<int, Real> hist) {
    MetricReport report;
    report.icp = icp;
    report.f_observed = f_observed;
    report.hamming_hist = std::move(hist);
    if (f_observed.has_value()) {
        if (oracle.f_max > oracle.f_min) {
            report.approx_ratio = approximation_ratio(*f_observed, oracle.f_min, oracle.f_max);
        } else {
            report.approx_ratio = 1.0;
            report.degenerate_range = true;
        }
    }
    return report;
}

}  // namespace

Real approximation_ratio(Real f_observed, Real f_min, Real f_max) {
    if (!(f_max > f_min))
        throw Error(Errc::degenerate_range,
                    "approximation_ratio: f_max must exceed f_min (degenerate feasible set)");
    return (f_observed - f_min) / (f_max - f_min);
}

Real in_constraint_probability(const SampleSet& samples, int m) {
    if (samples.shots < 1) throw Error(Errc::empty_input, "in_constraint_probability: no shots");
    std::uint64_t hits = 0;
    for (const auto& [x, count] : samples.counts)
        if (hamming_weight(x) == m) hits += count;
    return static_cast<Real>(hits) / static_cast<Real>(samples.shots);
}

Real in_constraint_probability(const Statevector& state, int m) {
    Real mass = 0.0;
    for (Eigen::Index x = 0; x < state.dim(); ++x)
        if (hamming_weight(static_cast<BasisIndex>(x)) == m) mass += std::norm(state.amps[x]);
    return mass;
}

std::optional<Real> mean_in_constraint_objective(const SampleSet& samples,
                                                 const ProblemInstance& instance) {
    std::uint64_t hits = 0;
    Real sum = 0.0;
    for (const auto& [x, count] : samples.counts) {
        if (hamming_weight(x) != instance.m) continue;
        hits += count;
        sum += static_cast<Real>(count) * objective_raw(instance, x);
    }
    if (hits == 0) return std::nullopt;
    return sum / static_cast<Real>(hits);
}

std::optional<Real> mean_in_constraint_objective(const Statevector& state,
                                                 const ProblemInstance& instance) {
    Real mass = 0.0;
    Real sum = 0.0;
    for (Eigen::Index x = 0; x < state.dim(); ++x) {
        if (hamming_weight(static_cast<BasisIndex>(x)) != instance.m) continue;
        const Real p = std::norm(state.amps[x]);
        mass += p;
        sum += p * objective_raw(instance, static_cast<BasisIndex>(x));
    }
    if (mass <= 0.0) return std::nullopt;
    return sum / mass;
}

std::map<int, Real> hamming_distance_distribution(const SampleSet& samples, int m) {
    return normalized_histogram([&](std::map<int, Real>& hist, Real& total) {
        for (const auto& [x, count] : samples.counts) {
            hist[std::abs(hamming_weight(x) - m)] += static_cast<Real>(count);
            total += static_cast<Real>(count);
        }
    });
}

std::map<int, Real> hamming_distance_distribution(const Statevector& state, int m) {
    return normalized_histogram([&](std::map<int, Real>& hist, Real& total) {
        for (Eigen::Index x = 0; x < state.dim(); ++x) {
            const Real p = std::norm(state.amps[x]);
            if (p == 0.0) continue;
            hist[std::abs(hamming_weight(static_cast<BasisIndex>(x)) - m)] += p;
            total += p;
        }
    });
}

Real binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    unsigned long long c = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned long long>(n - k + i) / i;
    return static_cast<Real>(c);
}

std::map<int, Real> random_hamming_baseline(int n, int m) {
    if (m <= 0 || m >= n)
        throw Error(Errc::infeasible_constraint, "random_hamming_baseline: need 0 < m < n");
    std::map<int, Real> hist;
    const Real denom = std::pow(2.0, n);
    for (int w = 0; w <= n; ++w) hist[std::abs(w - m)] += binomial_coefficient(n, w) / denom;
    return hist;
}

MetricReport compute_metrics(const SampleSet& samples, const ProblemInstance& instance,
                             const OracleResult& oracle) {
    return make_report(in_constraint_probability(samples, instance.m),
                       mean_in_constraint_objective(samples, instance), oracle,
                       hamming_distance_distribution(samples, instance.m));
}

MetricReport compute_metrics(const Statevector& state, const ProblemInstance& instance,
                             const OracleResult& oracle) {
    return make_report(in_constraint_probability(state, instance.m),
                       mean_in_constraint_objective(state, instance), oracle,
                       hamming_distance_distribution(state, instance.m));
}

}  // namespace qsumm
