#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qsumm/ansatz.hpp"
#include "qsumm/problem.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

struct GridPoint {
    Real gamma = 0.0;
    Real beta = 0.0;
    Real approx_ratio = 0.0;  // meaningful only when ar_defined
    bool ar_defined = false;
    Real icp = 0.0;
    Real penalized_expectation = 0.0;
};

enum class GridEvaluation { Exact, Sampled };

struct GridSearchConfig {
    GridEvaluation evaluation = GridEvaluation::Exact;
    std::uint64_t shots = 1000;  // used in Sampled mode
    std::uint64_t seed = 0;
    int threads = 1;
    ObjectiveKind phase_objective = ObjectiveKind::Penalized;
};

// Single-layer QAOA over the cartesian grid (row-major: gamma outer, beta
// inner). Each point reports the in-constraint probability, the
// in-constraint approximation ratio (undefined when no in-constraint mass),
// and the expectation of the penalized objective.
std::vector<GridPoint> grid_search_qaoa(const ProblemInstance& instance,
                                        const std::vector<Real>& gammas,
                                        const std::vector<Real>& betas,
                                        const GridSearchConfig& config,
                                        const OracleResult* oracle = nullptr);

// a dominates b iff a.AR >= b.AR and a.ICP >= b.ICP with at least one
// strict. Returns the non-dominated points sorted by ascending ICP (AR is
// then non-increasing). Points with undefined AR are ignored.
std::vector<GridPoint> pareto_frontier(const std::vector<GridPoint>& points);

// Among points with ICP strictly above the threshold, the one with maximal
// AR; ties broken by higher ICP, then smaller (gamma, beta).
GridPoint select_qaoa_params(const std::vector<GridPoint>& points, Real icp_threshold);

struct LocalOptResult {
    RealVector params;
    Real value = 0.0;
    std::int64_t evaluations = 0;
};

// Derivative-free ascent (Nelder-Mead on -objective). Never returns a value
// below the initial evaluation; deterministic given the initial point.
LocalOptResult local_optimize(const std::function<Real(const RealVector&)>& objective,
                              const RealVector& initial, std::int64_t budget,
                              Real x_tol = 1e-9, Real f_tol = 1e-12);

struct ParamRange {
    Real lo = 0.0;
    Real hi = 1.0;
};

struct MultistartEntry {
    RealVector initial_params;
    RealVector final_params;
    Real final_value = 0.0;
};

struct OptimizationRun {
    RealVector best_params;
    Real best_value = 0.0;
    std::int64_t evaluations = 0;
    std::vector<MultistartEntry> starts;
};

// Start i draws its initial point from a stream derived from (seed, i);
// results are deterministic and monotone in n_starts for a fixed seed.
OptimizationRun multistart(const std::function<Real(const RealVector&)>& objective,
                           int n_starts, const std::vector<ParamRange>& ranges,
                           std::uint64_t seed, std::int64_t budget_per_start,
                           int threads = 1);

}  // namespace qsumm
