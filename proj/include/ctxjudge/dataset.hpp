#pragma once

#include "ctxjudge/bm25.hpp"
#include "ctxjudge/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctxjudge::data {

struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Outcome of a load: malformed or invariant-violating records are skipped
/// and tallied here rather than aborting the whole file.
struct LoadReport {
    size_t total_records = 0;
    size_t valid = 0;
    size_t skipped = 0;
    std::map<std::string, size_t> skip_reasons;
    std::vector<std::string> sample_errors;  // "line N: reason", capped
    size_t max_reported = 50;

    void note_skip(size_t line, const std::string& reason);
    std::string summary() const;
};

struct LoadOptions {
    size_t squad_distractors = 19;  // k: context list length becomes k+1
    bm25::Params bm25_params{};
};

struct LoadResult {
    std::vector<EvalInstance> instances;
    LoadReport report;
};

/// Parses one-record-per-line files in the documented per-source schema and
/// normalizes them into EvalInstances. Multi-hop sources keep only records
/// with exactly two relevant contexts and the source's fixed list length
/// (10 for hotpotqa, 20 for musique). squad2 records are adapted with BM25
/// distractors mined from the file's own corpus. Throws DatasetError when
/// the file is unreadable or yields zero valid instances.
LoadResult load_dataset(const std::filesystem::path& path, SourceKind source,
                        const LoadOptions& options = {});

struct SquadRecord {
    std::string id;
    std::string question;
    std::optional<std::string> answer;  // absent for unanswerable questions
    std::string context;
    std::optional<std::string> title;
    bool answerable = true;
};

/// Reads flattened squad2 records plus the deduplicated context corpus
/// (unique by exact text, doc ids assigned in order of first appearance).
std::pair<std::vector<SquadRecord>, std::vector<ContextDoc>> load_squad_records(
    const std::filesystem::path& path, LoadReport& report);

/// Retriever-style adaptation: each record becomes an instance whose context
/// list is the original context (relevant iff answerable, else non_relevant)
/// followed by the top-k BM25 distractors from the corpus, all unlabeled, in
/// descending score order. Distractors whose whitespace-normalized text
/// equals the original context are skipped and the next rank is taken.
std::vector<EvalInstance> adapt_squad(const std::vector<SquadRecord>& records,
                                      const std::vector<ContextDoc>& corpus, size_t k,
                                      bm25::Params params = {}, LoadReport* report = nullptr);

// ---------------------------------------------------------------------------
// Stratified sampling

struct SampleCell {
    Difficulty difficulty = Difficulty::none;
    QType qtype = QType::none;
    GoldLabel gold_label = GoldLabel::relevant;

    auto operator<=>(const SampleCell&) const = default;
};

std::string cell_key(const SampleCell& cell);
SampleCell cell_from_key(const std::string& key);

struct SamplingPlan {
    std::map<std::string, size_t> per_cell_counts;  // cell key -> count
    uint64_t seed = 0;

    size_t total() const;
};

/// The full 1,200-pair plan: 200 per (level x type) cell, split 100
/// relevant / 100 non-relevant, over 3 levels x 2 types.
SamplingPlan hotpotqa_replication_plan(uint64_t seed);

/// 600/600-style balanced plan for sources without level/type strata.
SamplingPlan balanced_plan(SourceKind source, size_t per_label, uint64_t seed);

SamplingPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const SamplingPlan& plan);

struct SampledPair {
    std::string instance_id;
    std::string doc_id;
    std::string cell;
};

/// Draws exactly plan(c) pairs per cell c, uniformly without replacement,
/// deterministically in the seed. Throws DatasetError naming the cell and
/// shortfall when a cell's eligible population is too small.
std::vector<SampledPair> stratified_sample(const std::vector<EvalInstance>& instances,
                                           const SamplingPlan& plan);

/// Every gold-labeled pair, in (instance, retrieval-order) order. The
/// no-plan default for prepare.
std::vector<SampledPair> all_labeled_pairs(const std::vector<EvalInstance>& instances);

// ---------------------------------------------------------------------------
// File formats

void write_instances(const std::filesystem::path& path,
                     const std::vector<EvalInstance>& instances);
std::vector<EvalInstance> read_instances(const std::filesystem::path& path);

void write_sample_manifest(const std::filesystem::path& path,
                           const std::vector<SampledPair>& pairs);
std::vector<SampledPair> read_sample_manifest(const std::filesystem::path& path);

}  // namespace ctxjudge::data
