#include "qsumm/rouge.hpp"

#include <algorithm>
#include <map>

#include "qsumm/errors.hpp"
#include "qsumm/problem.hpp"

namespace qsumm {

namespace {

// n-gram multiset counts, keyed by tokens joined with an unprintable
// separator (tokens are alphanumeric, so this is collision-free).
std::map<std::string, int> ngram_counts(const TokenList& tokens, int order) {
    std::map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < order) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(order) <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < order; ++k) {
            key.push_back('\x1f');
            key += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

Real f1(Real precision, Real recall) {
    const Real denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

int lcs_length(const TokenList& a, const TokenList& b) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    std::vector<int> prev(nb + 1, 0);
    std::vector<int> curr(nb + 1, 0);
    for (std::size_t i = 1; i <= na; ++i) {
        for (std::size_t j = 1; j <= nb; ++j) {
            curr[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[nb];
}

}  // namespace

Real rouge_n(const TokenList& pred, const TokenList& ref, int order) {
    if (order < 1) throw Error(Errc::param_mismatch, "rouge_n: order must be >= 1");
    if (ref.empty()) throw Error(Errc::empty_reference, "rouge_n: empty reference");
    const auto pred_counts = ngram_counts(pred, order);
    const auto ref_counts = ngram_counts(ref, order);
    int pred_total = 0;
    int ref_total = 0;
    for (const auto& [k, c] : pred_counts) pred_total += c;
    for (const auto& [k, c] : ref_counts) ref_total += c;
    if (pred_total == 0 || ref_total == 0) return 0.0;
    int overlap = 0;
    for (const auto& [key, count] : ref_counts) {
        const auto it = pred_counts.find(key);
        if (it != pred_counts.end()) overlap += std::min(count, it->second);
    }
    const Real precision = static_cast<Real>(overlap) / static_cast<Real>(pred_total);
    const Real recall = static_cast<Real>(overlap) / static_cast<Real>(ref_total);
    return f1(precision, recall);
}

Real rouge_l(const TokenList& pred, const TokenList& ref) {
    if (ref.empty()) throw Error(Errc::empty_reference, "rouge_l: empty reference");
    if (pred.empty()) return 0.0;
    const int lcs = lcs_length(pred, ref);
    if (lcs == 0) return 0.0;
    const Real precision = static_cast<Real>(lcs) / static_cast<Real>(pred.size());
    const Real recall = static_cast<Real>(lcs) / static_cast<Real>(ref.size());
    return f1(precision, recall);
}

RougeScores rouge_scores(const TokenList& pred, const TokenList& ref) {
    return RougeScores{rouge_n(pred, ref, 1), rouge_n(pred, ref, 2), rouge_l(pred, ref)};
}

TokenList summary_tokens(BasisIndex x, const SentenceCorpus& corpus) {
    TokenList tokens;
    for (int i = 0; i < corpus.size(); ++i) {
        if (!((x >> i) & 1u)) continue;
        const auto& sentence = corpus.sentences[static_cast<std::size_t>(i)];
        tokens.insert(tokens.end(), sentence.begin(), sentence.end());
    }
    return tokens;
}

RougeScores weighted_rouge(const std::map<BasisIndex, Real>& distribution,
                           const SentenceCorpus& corpus, int m, const TokenList& reference) {
    if (reference.empty()) throw Error(Errc::empty_reference, "weighted_rouge: empty reference");
    Real mass = 0.0;
    RougeScores acc;
    for (const auto& [x, weight] : distribution) {
        if (weight <= 0.0 || hamming_weight(x) != m) continue;
        const RougeScores s = rouge_scores(summary_tokens(x, corpus), reference);
        acc.rouge1_f += weight * s.rouge1_f;
        acc.rouge2_f += weight * s.rouge2_f;
        acc.rougeL_f += weight * s.rougeL_f;
        mass += weight;
    }
    if (mass <= 0.0)
        throw Error(Errc::no_in_constraint_mass,
                    "weighted_rouge: distribution has no in-constraint mass");
    acc.rouge1_f /= mass;
    acc.rouge2_f /= mass;
    acc.rougeL_f /= mass;
    return acc;
}

RougeScores weighted_rouge(const SampleSet& samples, const SentenceCorpus& corpus, int m,
                           const TokenList& reference) {
    std::map<BasisIndex, Real> distribution;
    for (const auto& [x, count] : samples.counts) distribution[x] = static_cast<Real>(count);
    return weighted_rouge(distribution, corpus, m, reference);
}

std::vector<LambdaSweepPoint> lambda_sweep(const SentenceCorpus& corpus, const RealVector& mu,
                                           const RealMatrix& beta, const TokenList& reference,
                                           const std::vector<Real>& lambda_grid, int m) {
    if (corpus.size() != static_cast<int>(mu.size()))
        throw Error(Errc::count_mismatch, "lambda_sweep: corpus and mu sizes differ");
    if (corpus.size() > kMaxEnumerationQubits)
        throw Error(Errc::too_large, "lambda_sweep: too many sentences to enumerate");
    std::vector<LambdaSweepPoint> curve;
    curve.reserve(lambda_grid.size());
    for (const Real lambda : lambda_grid) {
        const ProblemInstance instance = build_instance(mu, beta, lambda, m);
        const OracleResult oracle = brute_force(instance);
        LambdaSweepPoint point;
        point.lambda = lambda;
        point.optimal_bitstring = oracle.argmax;
        point.scores = rouge_scores(summary_tokens(oracle.argmax, corpus), reference);
        curve.push_back(std::move(point));
    }
    return curve;
}

}  // namespace qsumm
