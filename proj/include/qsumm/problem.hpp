#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsumm/errors.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

// Sentence-selection objective
//
//   f(x) = sum_i mu(i) x_i - lambda * sum_{i != j} beta(i,j) x_i x_j
//
// subject to sum_i x_i = m. Every sum over i != j runs over ordered pairs,
// i.e. both (i,j) and (j,i) are counted.
struct ProblemInstance {
    int n = 0;          // sentence / qubit count
    int m = 0;          // required summary length
    RealVector mu;      // centralities, length n
    RealMatrix beta;    // pairwise similarities, n x n symmetric, zero diagonal
    Real lambda = 0.075;
    Real gamma = 0.0;   // penalty weight for the equality constraint
};

// Coefficients of the penalized objective with the constant term dropped:
// linear(i) = mu(i) + 2*gamma*m - gamma, quadratic(i,j) = lambda*beta(i,j) + gamma.
struct PenalizedCoefficients {
    RealVector linear;
    RealMatrix quadratic;
};

struct OracleResult {
    Real f_min = 0.0;
    Real f_max = 0.0;
    BasisIndex argmax = 0;          // weight-m maximizer, printed-bitstring-lexicographic on ties
    std::int64_t feasible_count = 0;
    Real mean_feasible = 0.0;
};

inline constexpr Real kDefaultLambda = 0.075;
inline constexpr int kMaxEnumerationQubits = 24;

// Penalty weight large enough that every in-constraint string beats every
// out-of-constraint string (for nonnegative mu and beta):
// gamma = sum_i mu(i) + lambda * sum_{i != j} beta(i,j).
Real gamma_rule(const ProblemInstance& instance);

// Validates shapes and constraint feasibility; gamma is set from gamma_rule.
ProblemInstance build_instance(const RealVector& mu, const RealMatrix& beta, Real lambda, int m);

Real objective_raw(const ProblemInstance& instance, BasisIndex x);
Real objective_penalized(const ProblemInstance& instance, BasisIndex x);

PenalizedCoefficients penalized_coefficients(const ProblemInstance& instance);

// Exhaustive enumeration of all weight-m bitstrings (n <= 24).
OracleResult brute_force(const ProblemInstance& instance);

// Expected raw objective of a uniformly random in-constraint string.
Real random_baseline(const ProblemInstance& instance);

// Diagonal of the objective over the full computational basis, used by the
// simulator's phase operator and for expectations.
enum class ObjectiveKind { Raw, Penalized };

struct DiagonalObjective {
    RealVector raw;        // f(x) per basis index
    RealVector penalized;  // f(x) - gamma*(wt(x)-m)^2 per basis index

    const RealVector& of(ObjectiveKind kind) const {
        return kind == ObjectiveKind::Raw ? raw : penalized;
    }
};

DiagonalObjective build_diagonal_objective(const ProblemInstance& instance);

// Problem file I/O (JSON with fields n, m, lambda, optional gamma, mu, beta).
// A missing gamma is filled in from gamma_rule.
ProblemInstance load_problem(const std::string& path);
void save_problem(const ProblemInstance& instance, const std::string& path,
                  const std::vector<int>* tf_fallback_sentences = nullptr);

}  // namespace qsumm
