#include "ctxjudge/bm25.hpp"

#include "ctxjudge/jsonl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ctxjudge::bm25 {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> terms;
    std::string cur;
    for (unsigned char ch : text) {
        if (std::isalnum(ch)) {
            cur.push_back(static_cast<char>(std::tolower(ch)));
        } else if (!cur.empty()) {
            terms.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) terms.push_back(std::move(cur));
    return terms;
}

Index::Index(const std::vector<std::pair<std::string, std::string>>& docs, Params params)
    : params_(params) {
    if (params_.k1 <= 0.0) throw std::invalid_argument("bm25: k1 must be > 0");
    if (params_.b < 0.0 || params_.b > 1.0) throw std::invalid_argument("bm25: b must be in [0,1]");

    doc_ids_.reserve(docs.size());
    doc_lens_.reserve(docs.size());
    uint64_t total_len = 0;
    for (const auto& [doc_id, text] : docs) {
        if (!id_of_.emplace(doc_id, doc_ids_.size()).second)
            throw std::invalid_argument("bm25: duplicate doc_id: " + doc_id);
        uint32_t idx = static_cast<uint32_t>(doc_ids_.size());
        doc_ids_.push_back(doc_id);

        std::unordered_map<std::string, uint32_t> tf;
        auto terms = tokenize(text);
        for (auto& t : terms) ++tf[t];
        doc_lens_.push_back(static_cast<uint32_t>(terms.size()));
        total_len += terms.size();
        for (auto& [term, freq] : tf) postings_[term].emplace_back(idx, freq);
    }
    avg_doc_len_ = docs.empty() ? 0.0 : static_cast<double>(total_len) / docs.size();
    for (auto& [term, plist] : postings_)
        std::sort(plist.begin(), plist.end());
}

double Index::idf(size_t df) const {
    double n = static_cast<double>(doc_count());
    double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double Index::score_by_index(const std::vector<std::string>& query_terms, size_t doc) const {
    double len = doc_lens_[doc];
    double norm = avg_doc_len_ > 0.0
                      ? params_.k1 * (1.0 - params_.b + params_.b * len / avg_doc_len_)
                      : params_.k1;
    double total = 0.0;
    for (const auto& term : query_terms) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const auto& plist = it->second;
        auto pit = std::lower_bound(plist.begin(), plist.end(),
                                    std::make_pair(static_cast<uint32_t>(doc), 0u));
        if (pit == plist.end() || pit->first != doc) continue;
        double tf = pit->second;
        total += idf(plist.size()) * tf * (params_.k1 + 1.0) / (tf + norm);
    }
    return total;
}

double Index::score(const std::vector<std::string>& query_terms, const std::string& doc_id) const {
    auto it = id_of_.find(doc_id);
    if (it == id_of_.end()) throw std::out_of_range("bm25: unknown doc_id: " + doc_id);
    return score_by_index(query_terms, it->second);
}

std::vector<ScoredDoc> Index::top_k(const std::vector<std::string>& query_terms, size_t k,
                                    const std::unordered_set<std::string>& exclude) const {
    // Term-at-a-time accumulation; only docs sharing at least one query term
    // get touched. Per-doc contributions are added in query-term order so the
    // sums are bit-identical to score().
    std::unordered_map<uint32_t, double> acc;
    for (const auto& term : query_terms) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        double w = idf(it->second.size());
        for (auto [doc, tf] : it->second) {
            double len = doc_lens_[doc];
            double norm = avg_doc_len_ > 0.0
                              ? params_.k1 * (1.0 - params_.b + params_.b * len / avg_doc_len_)
                              : params_.k1;
            acc[doc] += w * tf * (params_.k1 + 1.0) / (tf + norm);
        }
    }

    std::vector<ScoredDoc> scored;
    scored.reserve(acc.size());
    for (auto [doc, s] : acc) {
        if (exclude.count(doc_ids_[doc])) continue;
        scored.push_back({doc_ids_[doc], s});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });

    // Docs sharing no query term score exactly 0 and rank last, by doc_id.
    if (scored.size() < k) {
        std::vector<std::string> rest;
        for (size_t i = 0; i < doc_count(); ++i) {
            if (acc.count(static_cast<uint32_t>(i)) || exclude.count(doc_ids_[i])) continue;
            rest.push_back(doc_ids_[i]);
        }
        std::sort(rest.begin(), rest.end());
        for (auto& id : rest) {
            if (scored.size() >= k) break;
            scored.push_back({std::move(id), 0.0});
        }
    }
    if (scored.size() > k) scored.resize(k);
    return scored;
}

void Index::save(const std::filesystem::path& path) const {
    JsonlWriter out(path);
    out.write(json{{"format", "bm25-index"},
                   {"version", 1},
                   {"k1", params_.k1},
                   {"b", params_.b},
                   {"doc_count", doc_count()},
                   {"avg_doc_len", avg_doc_len_}});
    for (size_t i = 0; i < doc_ids_.size(); ++i)
        out.write(json{{"doc", doc_ids_[i]}, {"len", doc_lens_[i]}});
    std::vector<std::string> terms;
    terms.reserve(postings_.size());
    for (const auto& [term, _] : postings_) terms.push_back(term);
    std::sort(terms.begin(), terms.end());
    for (const auto& term : terms) {
        const auto& plist = postings_.at(term);
        json rows = json::array();
        for (auto [doc, tf] : plist) rows.push_back(json::array({doc, tf}));
        out.write(json{{"term", term}, {"df", plist.size()}, {"postings", rows}});
    }
}

Index Index::load(const std::filesystem::path& path) {
    Index idx;
    bool header_seen = false;
    for_each_jsonl(path, [&](const json& j, size_t line) {
        if (!header_seen) {
            if (j.value("format", "") != "bm25-index" || j.value("version", 0) != 1)
                throw JsonlError(path, line, "not a v1 bm25-index file");
            idx.params_.k1 = j.at("k1").get<double>();
            idx.params_.b = j.at("b").get<double>();
            idx.avg_doc_len_ = j.at("avg_doc_len").get<double>();
            header_seen = true;
        } else if (j.contains("doc")) {
            idx.id_of_.emplace(j.at("doc").get<std::string>(), idx.doc_ids_.size());
            idx.doc_ids_.push_back(j.at("doc").get<std::string>());
            idx.doc_lens_.push_back(j.at("len").get<uint32_t>());
        } else {
            auto& plist = idx.postings_[j.at("term").get<std::string>()];
            for (const auto& row : j.at("postings"))
                plist.emplace_back(row.at(0).get<uint32_t>(), row.at(1).get<uint32_t>());
        }
    });
    if (!header_seen) throw std::runtime_error("empty bm25 index file: " + path.string());
    return idx;
}

}  // namespace ctxjudge::bm25
