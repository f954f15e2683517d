#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsumm/statevector.hpp"
#include "qsumm/textprep.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

struct RougeScores {
    Real rouge1_f = 0.0;
    Real rouge2_f = 0.0;
    Real rougeL_f = 0.0;
};

using TokenList = std::vector<std::string>;

// n-gram multiset-overlap F1 (clipped counts). Returns 0 when either side
// has no n-grams of the requested order.
Real rouge_n(const TokenList& pred, const TokenList& ref, int order);

// Longest-common-subsequence F1.
Real rouge_l(const TokenList& pred, const TokenList& ref);

RougeScores rouge_scores(const TokenList& pred, const TokenList& ref);

// Tokens of the summary selected by bitstring x: sentences with x_i = 1
// concatenated in document order.
TokenList summary_tokens(BasisIndex x, const SentenceCorpus& corpus);

// Probability-weighted mean ROUGE over in-constraint bitstrings, normalized
// by the in-constraint mass. Throws NoInConstraintMass when that mass is 0.
RougeScores weighted_rouge(const std::map<BasisIndex, Real>& distribution,
                           const SentenceCorpus& corpus, int m, const TokenList& reference);
RougeScores weighted_rouge(const SampleSet& samples, const SentenceCorpus& corpus, int m,
                           const TokenList& reference);

struct LambdaSweepPoint {
    Real lambda = 0.0;
    RougeScores scores;
    BasisIndex optimal_bitstring = 0;
};

// For each lambda: rebuild the instance, take the brute-force optimal
// feasible solution, and score its summary against the reference.
std::vector<LambdaSweepPoint> lambda_sweep(const SentenceCorpus& corpus, const RealVector& mu,
                                           const RealMatrix& beta, const TokenList& reference,
                                           const std::vector<Real>& lambda_grid, int m);

}  // namespace qsumm
