#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qsumm/errors.hpp"
#include "qsumm/types.hpp"

namespace qsumm {

// Sentences of one article, in document order. Tokens are lowercased
// ASCII-alphanumeric runs.
struct SentenceCorpus {
    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> raw_sentences;

    int size() const { return static_cast<int>(sentences.size()); }
};

// One embedding per sentence, stored as matrix rows.
struct EmbeddingSet {
    RealMatrix vectors;

    int count() const { return static_cast<int>(vectors.rows()); }
    int dim() const { return static_cast<int>(vectors.cols()); }
};

// Denominator used in idf. `UniqueWords` follows the tf-idf definition
// literally (N = number of unique words in the document); `Sentences` is the
// conventional normalization where N is the number of "documents" (here,
// sentences).
enum class IdfNorm { UniqueWords, Sentences };

std::vector<std::string> tokenize(std::string_view text);

// Splits on '.', '!' or '?' followed by whitespace (or end of input);
// sentences without any token are dropped. Throws EmptyDocument if fewer
// than two sentences remain.
SentenceCorpus split_sentences(std::string_view text);

Real tf_idf_word(const std::string& word, int sentence, const SentenceCorpus& corpus,
                 IdfNorm norm = IdfNorm::UniqueWords);

// Mean tf-idf over the sentence's token occurrences (repeats counted).
Real sentence_centrality(int sentence, const SentenceCorpus& corpus,
                         IdfNorm norm = IdfNorm::UniqueWords);

RealVector centrality_vector(const SentenceCorpus& corpus, IdfNorm norm = IdfNorm::UniqueWords);

template <class DerivedU, class DerivedV>
Real cosine_similarity(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
    if (u.size() != v.size())
        throw Error(Errc::dimension_mismatch, "cosine_similarity: vectors of unequal dimension");
    const Real nu = u.template cast<Real>().norm();
    const Real nv = v.template cast<Real>().norm();
    if (nu == 0.0 || nv == 0.0)
        throw Error(Errc::zero_vector, "cosine_similarity: zero vector");
    return u.template cast<Real>().dot(v.template cast<Real>()) / (nu * nv);
}

// Pairwise cosine similarities with the diagonal forced to zero.
RealMatrix similarity_matrix(const EmbeddingSet& embeddings);

// One comma-separated embedding per line.
EmbeddingSet load_embeddings(const std::string& path);

void check_embedding_count(const EmbeddingSet& embeddings, const SentenceCorpus& corpus);

struct FallbackEmbedding {
    EmbeddingSet embeddings;
    // Sentences whose tf-idf vector was all-zero and got replaced by a raw
    // term-frequency vector.
    std::vector<int> tf_fallback_sentences;
};

// tf-idf bag-of-words embeddings over the sorted corpus vocabulary; stands in
// when no embedding file is supplied.
FallbackEmbedding fallback_embedding(const SentenceCorpus& corpus,
                                     IdfNorm norm = IdfNorm::UniqueWords);

}  // namespace qsumm
