#include "qsumm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsumm/errors.hpp"
#include "qsumm/metrics.hpp"
#include "qsumm/parallel.hpp"
#include "qsumm/rng.hpp"
#include "qsumm/statevector.hpp"

namespace qsumm {

namespace {

struct PointMetrics {
    Real icp = 0.0;
    bool ar_defined = false;
    Real approx_ratio = 0.0;
    Real penalized_expectation = 0.0;
};

Real ratio_or_degenerate(Real f_observed, const OracleResult& oracle) {
    if (oracle.f_max > oracle.f_min)
        return (f_observed - oracle.f_min) / (oracle.f_max - oracle.f_min);
    return 1.0;  // all feasible solutions tie
}

PointMetrics evaluate_state(const Statevector& state, const ProblemInstance& instance,
                            const DiagonalObjective& diag, const OracleResult& oracle) {
    PointMetrics pm;
    Real mass = 0.0;
    Real f_ic = 0.0;
    const Eigen::Index dim = state.dim();
    for (Eigen::Index x = 0; x < dim; ++x) {
        const Real p = std::norm(state.amps[x]);
        pm.penalized_expectation += p * diag.penalized[x];
        if (hamming_weight(static_cast<BasisIndex>(x)) == instance.m) {
            mass += p;
            f_ic += p * diag.raw[x];
        }
    }
    pm.icp = mass;
    if (mass > 0.0) {
        pm.ar_defined = true;
        pm.approx_ratio = ratio_or_degenerate(f_ic / mass, oracle);
    }
    return pm;
}

PointMetrics evaluate_samples(const SampleSet& samples, const ProblemInstance& instance,
                              const OracleResult& oracle) {
    PointMetrics pm;
    std::uint64_t in_constraint = 0;
    Real f_ic = 0.0;
    for (const auto& [x, count] : samples.counts) {
        const Real f = objective_raw(instance, x);
        pm.penalized_expectation += static_cast<Real>(count) * objective_penalized(instance, x);
        if (hamming_weight(x) == instance.m) {
            in_constraint += count;
            f_ic += static_cast<Real>(count) * f;
        }
    }
    pm.penalized_expectation /= static_cast<Real>(samples.shots);
    pm.icp = static_cast<Real>(in_constraint) / static_cast<Real>(samples.shots);
    if (in_constraint > 0) {
        pm.ar_defined = true;
        pm.approx_ratio = ratio_or_degenerate(f_ic / static_cast<Real>(in_constraint), oracle);
    }
    return pm;
}

bool select_better(const GridPoint& candidate, const GridPoint& incumbent) {
    if (candidate.approx_ratio != incumbent.approx_ratio)
        return candidate.approx_ratio > incumbent.approx_ratio;
    if (candidate.icp != incumbent.icp) return candidate.icp > incumbent.icp;
    if (candidate.gamma != incumbent.gamma) return candidate.gamma < incumbent.gamma;
    return candidate.beta < incumbent.beta;
}

}  // namespace

std::vector<GridPoint> grid_search_qaoa(const ProblemInstance& instance,
                                        const std::vector<Real>& gammas,
                                        const std::vector<Real>& betas,
                                        const GridSearchConfig& config,
                                        const OracleResult* oracle) {
    if (gammas.empty() || betas.empty())
        throw Error(Errc::empty_input, "grid_search_qaoa: empty parameter grid");
    OracleResult local_oracle;
    if (!oracle) {
        local_oracle = brute_force(instance);
        oracle = &local_oracle;
    }
    const DiagonalObjective diag = build_diagonal_objective(instance);
    std::vector<GridPoint> points(gammas.size() * betas.size());
    parallel_for(points.size(), config.threads, [&](std::size_t idx) {
        const std::size_t gi = idx / betas.size();
        const std::size_t bi = idx % betas.size();
        AnsatzParams params;
        params.kind = AnsatzKind::QAOA;
        params.p = 1;
        params.gammas = RealVector::Constant(1, gammas[gi]);
        params.betas = RealVector::Constant(1, betas[bi]);
        const Circuit circuit = build_qaoa(instance, params, config.phase_objective);
        const Statevector state = run_circuit(circuit, &diag);
        PointMetrics pm;
        if (config.evaluation == GridEvaluation::Exact) {
            pm = evaluate_state(state, instance, diag, *oracle);
        } else {
            const SampleSet samples =
                sample(state, config.shots, derive_stream(config.seed, idx), 1);
            pm = evaluate_samples(samples, instance, *oracle);
        }
        GridPoint& point = points[idx];
        point.gamma = gammas[gi];
        point.beta = betas[bi];
        point.icp = pm.icp;
        point.ar_defined = pm.ar_defined;
        point.approx_ratio = pm.ar_defined ? pm.approx_ratio : std::numeric_limits<Real>::quiet_NaN();
        point.penalized_expectation = pm.penalized_expectation;
    });
    return points;
}

std::vector<GridPoint> pareto_frontier(const std::vector<GridPoint>& points) {
    std::vector<GridPoint> defined;
    defined.reserve(points.size());
    for (const auto& p : points)
        if (p.ar_defined) defined.push_back(p);
    if (defined.empty())
        throw Error(Errc::empty_input, "pareto_frontier: no points with a defined AR");
    std::sort(defined.begin(), defined.end(), [](const GridPoint& a, const GridPoint& b) {
        if (a.icp != b.icp) return a.icp > b.icp;
        return a.approx_ratio > b.approx_ratio;
    });
    std::vector<GridPoint> frontier;
    Real best_ar = -std::numeric_limits<Real>::infinity();
    Real best_ar_icp = 0.0;
    for (const auto& p : defined) {
        if (p.approx_ratio > best_ar) {
            best_ar = p.approx_ratio;
            best_ar_icp = p.icp;
            frontier.push_back(p);
        } else if (p.approx_ratio == best_ar && p.icp == best_ar_icp) {
            frontier.push_back(p);  // exact duplicate in both metrics
        }
    }
    std::reverse(frontier.begin(), frontier.end());
    return frontier;
}

GridPoint select_qaoa_params(const std::vector<GridPoint>& points, Real icp_threshold) {
    const GridPoint* best = nullptr;
    for (const auto& p : points) {
        if (!p.ar_defined || p.icp <= icp_threshold) continue;
        if (!best || select_better(p, *best)) best = &p;
    }
    if (!best)
        throw Error(Errc::no_feasible_point,
                    "select_qaoa_params: no grid point has ICP above the threshold");
    return *best;
}

LocalOptResult local_optimize(const std::function<Real(const RealVector&)>& objective,
                              const RealVector& initial, std::int64_t budget, Real x_tol,
                              Real f_tol) {
    if (budget < 1) throw Error(Errc::empty_input, "local_optimize: budget must be >= 1");
    const Eigen::Index dim = initial.size();
    LocalOptResult result;
    result.params = initial;

    std::int64_t evals = 0;
    RealVector best_x = initial;
    Real best_f = -std::numeric_limits<Real>::infinity();
    const auto minimize_me = [&](const RealVector& x) {
        const Real f = objective(x);
        ++evals;
        if (f > best_f) {
            best_f = f;
            best_x = x;
        }
        return -f;
    };

    const Real g0 = minimize_me(initial);
    if (dim == 0 || budget <= evals) {
        result.value = best_f;
        result.params = best_x;
        result.evaluations = evals;
        return result;
    }

    // Nelder-Mead on the negated objective.
    std::vector<RealVector> simplex;
    std::vector<Real> g;
    simplex.push_back(initial);
    g.push_back(g0);
    for (Eigen::Index i = 0; i < dim && evals < budget; ++i) {
        RealVector x = initial;
        x[i] += (std::abs(initial[i]) > 1.0) ? 0.25 * std::abs(initial[i]) : 0.25;
        simplex.push_back(x);
        g.push_back(minimize_me(x));
    }

    constexpr Real alpha = 1.0;   // reflection
    constexpr Real gamma = 2.0;   // expansion
    constexpr Real rho = 0.5;     // contraction
    constexpr Real sigma = 0.5;   // shrink

    const auto order = [&] {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return g[a] < g[b]; });
        std::vector<RealVector> s2(simplex.size());
        std::vector<Real> g2(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            s2[i] = simplex[idx[i]];
            g2[i] = g[idx[i]];
        }
        simplex.swap(s2);
        g.swap(g2);
    };

    while (evals < budget && simplex.size() == static_cast<std::size_t>(dim) + 1) {
        order();
        // Convergence: function spread and simplex size both small.
        Real spread = 0.0;
        Real size = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            spread = std::max(spread, std::abs(g[i] - g[0]));
            size = std::max(size, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
        }
        if (spread < f_tol && size < x_tol) break;

        RealVector centroid = RealVector::Zero(dim);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i];
        centroid /= static_cast<Real>(dim);
        const RealVector& worst = simplex.back();

        const RealVector reflected = centroid + alpha * (centroid - worst);
        const Real g_ref = minimize_me(reflected);
        if (g_ref < g[0]) {
            if (evals < budget) {
                const RealVector expanded = centroid + gamma * (reflected - centroid);
                const Real g_exp = minimize_me(expanded);
                if (g_exp < g_ref) {
                    simplex.back() = expanded;
                    g.back() = g_exp;
                    continue;
                }
            }
            simplex.back() = reflected;
            g.back() = g_ref;
            continue;
        }
        if (g_ref < g[simplex.size() - 2]) {
            simplex.back() = reflected;
            g.back() = g_ref;
            continue;
        }
        if (evals >= budget) break;
        const bool outside = g_ref < g.back();
        const RealVector contracted =
            outside ? centroid + rho * (reflected - centroid) : centroid + rho * (worst - centroid);
        const Real g_con = minimize_me(contracted);
        if (g_con < (outside ? g_ref : g.back())) {
            simplex.back() = contracted;
            g.back() = g_con;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i < simplex.size() && evals < budget; ++i) {
            simplex[i] = simplex[0] + sigma * (simplex[i] - simplex[0]);
            g[i] = minimize_me(simplex[i]);
        }
    }

    result.params = best_x;
    result.value = best_f;
    result.evaluations = evals;
    return result;
}

OptimizationRun multistart(const std::function<Real(const RealVector&)>& objective, int n_starts,
                           const std::vector<ParamRange>& ranges, std::uint64_t seed,
                           std::int64_t budget_per_start, int threads) {
    if (n_starts < 1) throw Error(Errc::empty_input, "multistart: n_starts must be >= 1");
    if (ranges.empty()) throw Error(Errc::empty_input, "multistart: no parameter ranges");
    OptimizationRun run;
    run.starts.resize(static_cast<std::size_t>(n_starts));
    std::vector<std::int64_t> evals(static_cast<std::size_t>(n_starts), 0);
    parallel_for(static_cast<std::size_t>(n_starts), threads, [&](std::size_t s) {
        RandomEngine rng = make_engine(derive_stream(seed, s));
        RealVector initial(static_cast<Eigen::Index>(ranges.size()));
        for (std::size_t d = 0; d < ranges.size(); ++d)
            initial[static_cast<Eigen::Index>(d)] = uniform_in(rng, ranges[d].lo, ranges[d].hi);
        const LocalOptResult local = local_optimize(objective, initial, budget_per_start);
        run.starts[s].initial_params = initial;
        run.starts[s].final_params = local.params;
        run.starts[s].final_value = local.value;
        evals[s] = local.evaluations;
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < run.starts.size(); ++s)
        if (run.starts[s].final_value > run.starts[best].final_value) best = s;
    run.best_params = run.starts[best].final_params;
    run.best_value = run.starts[best].final_value;
    for (const auto e : evals) run.evaluations += e;
    return run;
}

}  // namespace qsumm
