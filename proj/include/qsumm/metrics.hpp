#pragma once

#include <map>
#include <optional>

#include "qsumm/problem.hpp"
#include "qsumm/statevector.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

struct MetricReport {
    std::optional<Real> approx_ratio;  // absent iff no in-constraint mass
    bool degenerate_range = false;     // f_max == f_min: AR reported as 1
    Real icp = 0.0;
    std::optional<Real> f_observed;
    std::map<int, Real> hamming_hist;  // |wt(x) - m| -> probability, nonzero bins
};

// (f_observed - f_min) / (f_max - f_min). Throws DegenerateRange when
// f_max == f_min; report builders handle that case as AR = 1 with the
// degeneracy flag set.
Real approximation_ratio(Real f_observed, Real f_min, Real f_max);

Real in_constraint_probability(const SampleSet& samples, int m);
Real in_constraint_probability(const Statevector& state, int m);

std::optional<Real> mean_in_constraint_objective(const SampleSet& samples,
                                                 const ProblemInstance& instance);
std::optional<Real> mean_in_constraint_objective(const Statevector& state,
                                                 const ProblemInstance& instance);

std::map<int, Real> hamming_distance_distribution(const SampleSet& samples, int m);
std::map<int, Real> hamming_distance_distribution(const Statevector& state, int m);

// P(d) = sum_{w : |w-m| = d} C(n, w) / 2^n for uniformly random bitstrings.
std::map<int, Real> random_hamming_baseline(int n, int m);

MetricReport compute_metrics(const SampleSet& samples, const ProblemInstance& instance,
                             const OracleResult& oracle);
MetricReport compute_metrics(const Statevector& state, const ProblemInstance& instance,
                             const OracleResult& oracle);

Real binomial_coefficient(int n, int k);

}  // namespace qsumm
