#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ctxjudge::bm25 {

/// Lowercases and splits on runs of non-alphanumeric bytes; empty terms
/// dropped. No stemming, no stop words (both deliberately off).
std::vector<std::string> tokenize(const std::string& text);

struct Params {
    double k1 = 1.2;
    double b = 0.75;
};

struct ScoredDoc {
    std::string doc_id;
    double score;
};

/// Okapi BM25 over an in-memory inverted index. Immutable once built;
/// scoring is const and safe to share across threads.
///
/// idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)), which is >= 0 for df <= N,
/// so scores are never negative. Ties in top_k break by ascending doc_id.
class Index {
public:
    Index(const std::vector<std::pair<std::string, std::string>>& docs, Params params = {});

    size_t doc_count() const { return doc_lens_.size(); }
    double avg_doc_len() const { return avg_doc_len_; }
    const Params& params() const { return params_; }
    bool contains(const std::string& doc_id) const { return id_of_.count(doc_id) > 0; }

    /// Throws std::out_of_range for an unknown doc_id.
    double score(const std::vector<std::string>& query_terms, const std::string& doc_id) const;

    std::vector<ScoredDoc> top_k(const std::vector<std::string>& query_terms, size_t k,
                                 const std::unordered_set<std::string>& exclude = {}) const;

    void save(const std::filesystem::path& path) const;
    static Index load(const std::filesystem::path& path);

private:
    Index() = default;
    double score_by_index(const std::vector<std::string>& query_terms, size_t doc) const;
    double idf(size_t df) const;

    Params params_;
    std::vector<std::string> doc_ids_;             // index -> external id
    std::unordered_map<std::string, size_t> id_of_;
    std::vector<uint32_t> doc_lens_;               // tokens per doc
    double avg_doc_len_ = 0.0;
    // term -> (doc index, term frequency), doc indices ascending
    std::unordered_map<std::string, std::vector<std::pair<uint32_t, uint32_t>>> postings_;
};

}  // namespace ctxjudge::bm25
