#include "qsumm/problem.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "qsumm/errors.hpp"

namespace qsumm {

namespace {

void check_instance_shapes(const RealVector& mu, const RealMatrix& beta, int m) {
    const auto n = mu.size();
    if (n < 2) throw Error(Errc::dimension_mismatch, "instance needs at least 2 sentences");
    if (beta.rows() != n || beta.cols() != n)
        throw Error(Errc::dimension_mismatch, "beta must be n x n with n = mu.size()");
    if (!beta.isApprox(beta.transpose(), 0.0))
        throw Error(Errc::dimension_mismatch, "beta must be symmetric");
    if (!beta.diagonal().isZero(0.0))
        throw Error(Errc::dimension_mismatch, "beta must have a zero diagonal");
    if (m <= 0 || m >= n)
        throw Error(Errc::infeasible_constraint,
                    "summary length m must satisfy 0 < m < n (got m=" + std::to_string(m) +
                        ", n=" + std::to_string(n) + ")");
}

// Iterates all n-bit strings of weight m in ascending integer order
// (Gosper's hack).
template <class F>
void for_each_weight_m(int n, int m, F&& visit) {
    const BasisIndex limit = BasisIndex{1} << n;
    BasisIndex x = (BasisIndex{1} << m) - 1;
    while (x < limit) {
        visit(x);
        const BasisIndex c = x & (~x + 1);
        const BasisIndex r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

}  // namespace

Real gamma_rule(const ProblemInstance& instance) {
    return instance.mu.sum() + instance.lambda * instance.beta.sum();
}

ProblemInstance build_instance(const RealVector& mu, const RealMatrix& beta, Real lambda, int m) {
    check_instance_shapes(mu, beta, m);
    ProblemInstance instance;
    instance.n = static_cast<int>(mu.size());
    instance.m = m;
    instance.mu = mu;
    instance.beta = beta;
    instance.lambda = lambda;
    instance.gamma = gamma_rule(instance);
    return instance;
}

Real objective_raw(const ProblemInstance& instance, BasisIndex x) {
    if (x >> instance.n)
        throw Error(Errc::length_mismatch, "objective_raw: bitstring wider than n");
    Real linear = 0.0;
    Real quad = 0.0;
    for (int i = 0; i < instance.n; ++i) {
        if (!((x >> i) & 1u)) continue;
        linear += instance.mu[i];
        for (int j = 0; j < instance.n; ++j) {
            if (j == i || !((x >> j) & 1u)) continue;
            quad += instance.beta(i, j);
        }
    }
    return linear - instance.lambda * quad;
}

Real objective_penalized(const ProblemInstance& instance, BasisIndex x) {
    const Real slack = static_cast<Real>(hamming_weight(x)) - static_cast<Real>(instance.m);
    return objective_raw(instance, x) - instance.gamma * slack * slack;
}

PenalizedCoefficients penalized_coefficients(const ProblemInstance& instance) {
    PenalizedCoefficients coeffs;
    coeffs.linear = instance.mu.array() + 2.0 * instance.gamma * instance.m - instance.gamma;
    coeffs.quadratic = instance.lambda * instance.beta;
    coeffs.quadratic.array() += instance.gamma;
    coeffs.quadratic.diagonal().setZero();
    return coeffs;
}

OracleResult brute_force(const ProblemInstance& instance) {
    if (instance.n > kMaxEnumerationQubits)
        throw Error(Errc::too_large, "brute_force: n exceeds the enumeration bound of " +
                                         std::to_string(kMaxEnumerationQubits));
    OracleResult result;
    result.f_min = std::numeric_limits<Real>::infinity();
    result.f_max = -std::numeric_limits<Real>::infinity();
    Real sum = 0.0;
    std::int64_t count = 0;
    for_each_weight_m(instance.n, instance.m, [&](BasisIndex x) {
        const Real value = objective_raw(instance, x);
        sum += value;
        ++count;
        if (value < result.f_min) result.f_min = value;
        if (value > result.f_max ||
            (value == result.f_max && bitstring_less(x, result.argmax, instance.n))) {
            result.f_max = value;
            result.argmax = x;
        }
    });
    result.feasible_count = count;
    result.mean_feasible = sum / static_cast<Real>(count);
    return result;
}

Real random_baseline(const ProblemInstance& instance) {
    return brute_force(instance).mean_feasible;
}

DiagonalObjective build_diagonal_objective(const ProblemInstance& instance) {
    const Eigen::Index dim = Eigen::Index{1} << instance.n;
    DiagonalObjective diag;
    diag.raw.resize(dim);
    diag.penalized.resize(dim);
    diag.raw[0] = 0.0;
    // f(x) = f(x minus its lowest set bit i) + mu_i - lambda * sum_{j in x'} 2 beta_ij.
    for (Eigen::Index x = 1; x < dim; ++x) {
        const int i = std::countr_zero(static_cast<BasisIndex>(x));
        const BasisIndex rest = static_cast<BasisIndex>(x) & (static_cast<BasisIndex>(x) - 1);
        Real cross = 0.0;
        for (int j = 0; j < instance.n; ++j)
            if ((rest >> j) & 1u) cross += instance.beta(i, j);
        diag.raw[x] = diag.raw[static_cast<Eigen::Index>(rest)] + instance.mu[i] -
                      2.0 * instance.lambda * cross;
    }
    for (Eigen::Index x = 0; x < dim; ++x) {
        const Real slack =
            static_cast<Real>(hamming_weight(static_cast<BasisIndex>(x))) - instance.m;
        diag.penalized[x] = diag.raw[x] - instance.gamma * slack * slack;
    }
    return diag;
}

ProblemInstance load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "load_problem: cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, "load_problem: " + std::string(e.what()));
    }
    try {
        const int n = doc.at("n").get<int>();
        const int m = doc.at("m").get<int>();
        const Real lambda = doc.at("lambda").get<Real>();
        const auto& mu_json = doc.at("mu");
        const auto& beta_json = doc.at("beta");
        if (static_cast<int>(mu_json.size()) != n)
            throw Error(Errc::dimension_mismatch, "load_problem: mu length != n");
        if (static_cast<int>(beta_json.size()) != n)
            throw Error(Errc::dimension_mismatch, "load_problem: beta row count != n");
        RealVector mu(n);
        for (int i = 0; i < n; ++i) mu[i] = mu_json.at(i).get<Real>();
        RealMatrix beta(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(beta_json.at(i).size()) != n)
                throw Error(Errc::dimension_mismatch, "load_problem: beta is not n x n");
            for (int j = 0; j < n; ++j) beta(i, j) = beta_json.at(i).at(j).get<Real>();
        }
        ProblemInstance instance = build_instance(mu, beta, lambda, m);
        if (doc.contains("gamma")) instance.gamma = doc.at("gamma").get<Real>();
        return instance;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, "load_problem: " + std::string(e.what()));
    }
}

void save_problem(const ProblemInstance& instance, const std::string& path,
                  const std::vector<int>* tf_fallback_sentences) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["n"] = instance.n;
    doc["m"] = instance.m;
    doc["lambda"] = instance.lambda;
    doc["gamma"] = instance.gamma;
    doc["mu"] = std::vector<Real>(instance.mu.begin(), instance.mu.end());
    nlohmann::json beta = nlohmann::json::array();
    for (int i = 0; i < instance.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < instance.n; ++j) row.push_back(instance.beta(i, j));
        beta.push_back(std::move(row));
    }
    doc["beta"] = std::move(beta);
    if (tf_fallback_sentences && !tf_fallback_sentences->empty())
        doc["tf_fallback_sentences"] = *tf_fallback_sentences;
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "save_problem: cannot write " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace qsumm
