#include "qsumm/textprep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qsumm {

namespace {

bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char to_lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// Number of sentences each token occurs in.
std::map<std::string, int> document_frequencies(const SentenceCorpus& corpus) {
    std::map<std::string, int> df;
    for (const auto& sentence : corpus.sentences) {
        std::set<std::string> seen(sentence.begin(), sentence.end());
        for (const auto& w : seen) ++df[w];
    }
    return df;
}

int unique_word_count(const SentenceCorpus& corpus) {
    std::set<std::string> vocab;
    for (const auto& sentence : corpus.sentences)
        vocab.insert(sentence.begin(), sentence.end());
    return static_cast<int>(vocab.size());
}

int idf_denominator_base(const SentenceCorpus& corpus, IdfNorm norm) {
    return norm == IdfNorm::UniqueWords ? unique_word_count(corpus) : corpus.size();
}

Real tf_idf_from_counts(const std::string& word, const std::vector<std::string>& sentence,
                        int n_idf, int doc_freq) {
    const auto occurrences =
        static_cast<Real>(std::count(sentence.begin(), sentence.end(), word));
    const Real tf = occurrences / static_cast<Real>(sentence.size());
    const Real idf = std::log(static_cast<Real>(n_idf) / static_cast<Real>(doc_freq));
    return tf * idf;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (is_ascii_alnum(c)) {
            current.push_back(to_lower_ascii(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

SentenceCorpus split_sentences(std::string_view text) {
    SentenceCorpus corpus;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool terminator = (c == '.' || c == '!' || c == '?');
        const bool boundary = terminator && (i + 1 == text.size() || is_space(text[i + 1]));
        if (!boundary) continue;
        const std::string raw = trim(text.substr(start, i + 1 - start));
        auto tokens = tokenize(raw);
        if (!tokens.empty()) {
            corpus.sentences.push_back(std::move(tokens));
            corpus.raw_sentences.push_back(raw);
        }
        start = i + 1;
    }
    if (start < text.size()) {
        const std::string raw = trim(text.substr(start));
        auto tokens = tokenize(raw);
        if (!tokens.empty()) {
            corpus.sentences.push_back(std::move(tokens));
            corpus.raw_sentences.push_back(raw);
        }
    }
    if (corpus.size() < 2)
        throw Error(Errc::empty_document,
                    "split_sentences: fewer than 2 non-empty sentences in document");
    return corpus;
}

Real tf_idf_word(const std::string& word, int sentence, const SentenceCorpus& corpus,
                 IdfNorm norm) {
    if (sentence < 0 || sentence >= corpus.size())
        throw Error(Errc::index_out_of_range, "tf_idf_word: sentence index out of range");
    const auto& tokens = corpus.sentences[static_cast<std::size_t>(sentence)];
    if (std::find(tokens.begin(), tokens.end(), word) == tokens.end())
        throw Error(Errc::word_not_in_sentence,
                    "tf_idf_word: word '" + word + "' not in sentence");
    int doc_freq = 0;
    for (const auto& s : corpus.sentences)
        if (std::find(s.begin(), s.end(), word) != s.end()) ++doc_freq;
    return tf_idf_from_counts(word, tokens, idf_denominator_base(corpus, norm), doc_freq);
}

Real sentence_centrality(int sentence, const SentenceCorpus& corpus, IdfNorm norm) {
    if (sentence < 0 || sentence >= corpus.size())
        throw Error(Errc::index_out_of_range, "sentence_centrality: sentence index out of range");
    const auto& tokens = corpus.sentences[static_cast<std::size_t>(sentence)];
    const auto df = document_frequencies(corpus);
    const int n_idf = idf_denominator_base(corpus, norm);
    Real sum = 0.0;
    for (const auto& w : tokens) sum += tf_idf_from_counts(w, tokens, n_idf, df.at(w));
    return sum / static_cast<Real>(tokens.size());
}

RealVector centrality_vector(const SentenceCorpus& corpus, IdfNorm norm) {
    RealVector mu(corpus.size());
    for (int i = 0; i < corpus.size(); ++i) mu[i] = sentence_centrality(i, corpus, norm);
    return mu;
}

RealMatrix similarity_matrix(const EmbeddingSet& embeddings) {
    const int n = embeddings.count();
    RealMatrix normalized(n, embeddings.dim());
    for (int i = 0; i < n; ++i) {
        const Real norm = embeddings.vectors.row(i).norm();
        if (norm == 0.0)
            throw Error(Errc::zero_vector,
                        "similarity_matrix: embedding " + std::to_string(i) + " is all-zero");
        normalized.row(i) = embeddings.vectors.row(i) / norm;
    }
    RealMatrix sim = normalized * normalized.transpose();
    sim.diagonal().setZero();
    // Gram products of a matrix with itself are symmetric up to rounding;
    // force it exactly so downstream symmetry checks are strict.
    sim = ((sim + sim.transpose()) / 2.0).eval();
    return sim;
}

EmbeddingSet load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "load_embeddings: cannot open " + path);
    std::vector<std::vector<Real>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            // Tolerate a trailing newline; blank interior lines are malformed.
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw Error(Errc::parse_error,
                        "load_embeddings: blank line " + std::to_string(line_no));
        }
        std::vector<Real> row;
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            const std::string f = trim(field);
            std::size_t consumed = 0;
            Real value = 0.0;
            try {
                value = std::stod(f, &consumed);
            } catch (const std::exception&) {
                throw Error(Errc::parse_error, "load_embeddings: bad number '" + f + "' on line " +
                                                   std::to_string(line_no));
            }
            if (consumed != f.size())
                throw Error(Errc::parse_error, "load_embeddings: bad number '" + f + "' on line " +
                                                   std::to_string(line_no));
            row.push_back(value);
        }
        if (row.empty())
            throw Error(Errc::parse_error,
                        "load_embeddings: no values on line " + std::to_string(line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(Errc::parse_error, "load_embeddings: ragged dimensions on line " +
                                               std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(Errc::parse_error, "load_embeddings: empty file " + path);
    EmbeddingSet set;
    set.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            set.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return set;
}

void check_embedding_count(const EmbeddingSet& embeddings, const SentenceCorpus& corpus) {
    if (embeddings.count() != corpus.size())
        throw Error(Errc::count_mismatch,
                    "embedding count " + std::to_string(embeddings.count()) +
                        " != sentence count " + std::to_string(corpus.size()));
}

FallbackEmbedding fallback_embedding(const SentenceCorpus& corpus, IdfNorm norm) {
    std::set<std::string> vocab_set;
    for (const auto& sentence : corpus.sentences)
        vocab_set.insert(sentence.begin(), sentence.end());
    const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
    std::map<std::string, int> vocab_index;
    for (std::size_t j = 0; j < vocab.size(); ++j) vocab_index[vocab[j]] = static_cast<int>(j);

    const auto df = document_frequencies(corpus);
    const int n_idf = idf_denominator_base(corpus, norm);

    FallbackEmbedding result;
    result.embeddings.vectors =
        RealMatrix::Zero(corpus.size(), static_cast<Eigen::Index>(vocab.size()));
    for (int i = 0; i < corpus.size(); ++i) {
        const auto& tokens = corpus.sentences[static_cast<std::size_t>(i)];
        for (const auto& w : tokens) {
            result.embeddings.vectors(i, vocab_index.at(w)) =
                tf_idf_from_counts(w, tokens, n_idf, df.at(w));
        }
        if (result.embeddings.vectors.row(i).isZero(0.0)) {
            // Every token of this sentence occurs in every sentence, so all
            // idf values vanish; fall back to raw term frequencies.
            for (const auto& w : tokens) result.embeddings.vectors(i, vocab_index.at(w)) += 1.0;
            result.tf_fallback_sentences.push_back(i);
        }
    }
    return result;
}

}  // namespace qsumm
