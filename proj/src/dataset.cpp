#include "ctxjudge/dataset.hpp"

#include "ctxjudge/jsonl.hpp"
#include "ctxjudge/rng.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ctxjudge::data {

void LoadReport::note_skip(size_t line, const std::string& reason) {
    ++skipped;
    ++skip_reasons[reason];
    if (sample_errors.size() < max_reported)
        sample_errors.push_back("line " + std::to_string(line) + ": " + reason);
}

std::string LoadReport::summary() const {
    std::ostringstream os;
    os << valid << " valid, " << skipped << " skipped of " << total_records << " records";
    for (const auto& [reason, count] : skip_reasons) os << "\n  " << reason << ": " << count;
    return os.str();
}

namespace {

std::string normalize_ws(const std::string& s) {
    std::string out;
    bool in_space = true;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(static_cast<char>(c));
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::optional<std::string> get_optional_string(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    auto s = j.at(key).get<std::string>();
    if (s.empty()) return std::nullopt;
    return s;
}

// One hotpotqa record: {"_id", "question", "answer", "type", "level",
// "supporting_facts": [[title, sent_idx], ...],
// "context": [[title, [sentence, ...]], ...]}
std::optional<EvalInstance> parse_hotpotqa(const json& j, size_t line, LoadReport& report) {
    EvalInstance inst;
    inst.source = SourceKind::hotpotqa;
    if (j.contains("_id"))
        inst.instance_id = j.at("_id").get<std::string>();
    else if (j.contains("id"))
        inst.instance_id = j.at("id").get<std::string>();
    if (inst.instance_id.empty() || !j.contains("question") || !j.contains("context")) {
        report.note_skip(line, "missing required field");
        return std::nullopt;
    }
    inst.question = j.at("question").get<std::string>();
    inst.gold_answer = get_optional_string(j, "answer");
    if (!inst.gold_answer) {
        report.note_skip(line, "missing answer");
        return std::nullopt;
    }
    try {
        inst.difficulty = difficulty_from_string(j.value("level", "none"));
    } catch (const std::invalid_argument&) {
        inst.difficulty = Difficulty::none;
    }
    try {
        inst.qtype = qtype_from_string(j.value("type", "none"));
    } catch (const std::invalid_argument&) {
        inst.qtype = QType::none;
    }

    std::set<std::string> supporting_titles;
    for (const auto& fact : j.value("supporting_facts", json::array()))
        if (fact.is_array() && !fact.empty())
            supporting_titles.insert(fact.at(0).get<std::string>());

    for (const auto& entry : j.at("context")) {
        if (!entry.is_array() || entry.size() < 2) {
            report.note_skip(line, "malformed context entry");
            return std::nullopt;
        }
        ContextDoc doc;
        doc.title = entry.at(0).get<std::string>();
        doc.doc_id = *doc.title;
        std::string text;
        for (const auto& sent : entry.at(1)) text += sent.get<std::string>();
        doc.text = std::move(text);
        doc.gold_label = supporting_titles.count(doc.doc_id) ? GoldLabel::relevant
                                                             : GoldLabel::non_relevant;
        inst.contexts.push_back(std::move(doc));
    }

    if (inst.contexts.size() != 10) {
        report.note_skip(line, "context count != 10");
        return std::nullopt;
    }
    if (inst.count_label(GoldLabel::relevant) != 2) {
        report.note_skip(line, "relevant count != 2");
        return std::nullopt;
    }
    if (auto err = check_instance(inst)) {
        report.note_skip(line, *err);
        return std::nullopt;
    }
    return inst;
}

// One musique record: {"id", "question", "answer", "answerable",
// "paragraphs": [{"idx", "title", "paragraph_text", "is_supporting"}, ...]}
std::optional<EvalInstance> parse_musique(const json& j, size_t line, LoadReport& report) {
    EvalInstance inst;
    inst.source = SourceKind::musique;
    inst.instance_id = j.value("id", "");
    if (inst.instance_id.empty() || !j.contains("question") || !j.contains("paragraphs")) {
        report.note_skip(line, "missing required field");
        return std::nullopt;
    }
    inst.question = j.at("question").get<std::string>();
    bool answerable = j.value("answerable", true);
    inst.gold_answer = get_optional_string(j, "answer");
    if (!answerable) inst.gold_answer = std::nullopt;
    if (!inst.gold_answer && answerable) {
        report.note_skip(line, "missing answer");
        return std::nullopt;
    }

    for (const auto& para : j.at("paragraphs")) {
        ContextDoc doc;
        doc.doc_id = "p" + std::to_string(para.at("idx").get<long long>());
        doc.title = get_optional_string(para, "title");
        doc.text = para.at("paragraph_text").get<std::string>();
        doc.gold_label = para.value("is_supporting", false) ? GoldLabel::relevant
                                                            : GoldLabel::non_relevant;
        inst.contexts.push_back(std::move(doc));
    }

    if (inst.contexts.size() != 20) {
        report.note_skip(line, "context count != 20");
        return std::nullopt;
    }
    if (inst.count_label(GoldLabel::relevant) != 2) {
        report.note_skip(line, "relevant count != 2");
        return std::nullopt;
    }
    if (auto err = check_instance(inst)) {
        report.note_skip(line, *err);
        return std::nullopt;
    }
    return inst;
}

std::optional<EvalInstance> parse_custom(const json& j, size_t line, LoadReport& report) {
    EvalInstance inst;
    try {
        inst = instance_from_json(j);
    } catch (const std::exception& e) {
        report.note_skip(line, std::string("bad instance record: ") + e.what());
        return std::nullopt;
    }
    if (auto err = check_instance(inst)) {
        report.note_skip(line, *err);
        return std::nullopt;
    }
    return inst;
}

}  // namespace

std::pair<std::vector<SquadRecord>, std::vector<ContextDoc>> load_squad_records(
    const std::filesystem::path& path, LoadReport& report) {
    std::vector<SquadRecord> records;
    std::vector<ContextDoc> corpus;
    std::unordered_map<std::string, size_t> corpus_index;  // exact text -> corpus slot

    for_each_jsonl(
        path,
        [&](const json& j, size_t line) {
            ++report.total_records;
            SquadRecord rec;
            rec.id = j.value("id", "");
            rec.question = j.value("question", "");
            rec.context = j.value("context", "");
            rec.title = get_optional_string(j, "title");
            rec.answerable = j.value("answerable", true);
            rec.answer = get_optional_string(j, "answer");
            if (rec.id.empty() || rec.question.empty() || rec.context.empty()) {
                report.note_skip(line, "missing required field");
                return;
            }
            if (rec.answerable && !rec.answer) {
                report.note_skip(line, "answerable record without answer");
                return;
            }
            if (!corpus_index.count(rec.context)) {
                ContextDoc doc;
                char buf[16];
                std::snprintf(buf, sizeof(buf), "sq%06zu", corpus.size());
                doc.doc_id = buf;
                doc.title = rec.title;
                doc.text = rec.context;
                corpus_index.emplace(rec.context, corpus.size());
                corpus.push_back(std::move(doc));
            }
            records.push_back(std::move(rec));
        },
        [&](size_t line, const std::string& what) {
            ++report.total_records;
            report.note_skip(line, "malformed record: " + what);
        });
    return {std::move(records), std::move(corpus)};
}

std::vector<EvalInstance> adapt_squad(const std::vector<SquadRecord>& records,
                                      const std::vector<ContextDoc>& corpus, size_t k,
                                      bm25::Params params, LoadReport* report) {
    if (k < 1) throw DatasetError("adapt_squad: k must be >= 1");
    if (k >= corpus.size())
        throw DatasetError("adapt_squad: k (" + std::to_string(k) +
                           ") >= corpus size (" + std::to_string(corpus.size()) +
                           "): not enough distractors");

    std::unordered_map<std::string, const ContextDoc*> by_text;
    for (const auto& doc : corpus) by_text.emplace(doc.text, &doc);

    std::vector<std::pair<std::string, std::string>> index_docs;
    index_docs.reserve(corpus.size());
    for (const auto& doc : corpus) {
        // Title concatenated with the passage text; recorded in the manifest.
        std::string body = doc.title ? *doc.title + " " + doc.text : doc.text;
        index_docs.emplace_back(doc.doc_id, std::move(body));
    }
    bm25::Index index(index_docs, params);

    std::unordered_map<std::string, const ContextDoc*> by_id;
    for (const auto& doc : corpus) by_id.emplace(doc.doc_id, &doc);

    std::vector<EvalInstance> out;
    LoadReport scratch;
    LoadReport& rep = report ? *report : scratch;
    size_t line = 0;
    for (const auto& rec : records) {
        ++line;
        auto git = by_text.find(rec.context);
        if (git == by_text.end())
            throw DatasetError("adapt_squad: gold context missing from corpus (record " +
                               rec.id + ")");
        const ContextDoc* gold = git->second;
        const std::string gold_norm = normalize_ws(gold->text);

        EvalInstance inst;
        inst.instance_id = rec.id;
        inst.question = rec.question;
        inst.gold_answer = rec.answerable ? rec.answer : std::nullopt;
        inst.difficulty = Difficulty::none;
        inst.qtype = QType::single_hop;
        inst.source = SourceKind::squad2;

        ContextDoc first = *gold;
        first.gold_label = rec.answerable ? GoldLabel::relevant : GoldLabel::non_relevant;
        inst.contexts.push_back(std::move(first));

        auto query = bm25::tokenize(rec.question);
        auto ranked = index.top_k(query, corpus.size(), {gold->doc_id});
        size_t taken = 0;
        for (const auto& sd : ranked) {
            if (taken == k) break;
            const ContextDoc* doc = by_id.at(sd.doc_id);
            if (normalize_ws(doc->text) == gold_norm) continue;  // duplicate of gold
            ContextDoc distractor = *doc;
            distractor.gold_label = GoldLabel::unlabeled;
            inst.contexts.push_back(std::move(distractor));
            ++taken;
        }
        if (taken < k)
            throw DatasetError("adapt_squad: not enough distractors after de-duplication "
                               "(record " + rec.id + ": needed " + std::to_string(k) +
                               ", found " + std::to_string(taken) + ")");
        if (auto err = check_instance(inst)) {
            rep.note_skip(line, *err);
            continue;
        }
        ++rep.valid;
        out.push_back(std::move(inst));
    }
    return out;
}

LoadResult load_dataset(const std::filesystem::path& path, SourceKind source,
                        const LoadOptions& options) {
    if (!std::filesystem::exists(path))
        throw DatasetError("dataset file does not exist: " + path.string());

    LoadResult result;
    auto& report = result.report;

    if (source == SourceKind::squad2) {
        auto [records, corpus] = load_squad_records(path, report);
        if (!records.empty())
            result.instances = adapt_squad(records, corpus, options.squad_distractors,
                                           options.bm25_params, &report);
    } else {
        auto parse = [&](const json& j, size_t line) -> std::optional<EvalInstance> {
            switch (source) {
                case SourceKind::hotpotqa: return parse_hotpotqa(j, line, report);
                case SourceKind::musique: return parse_musique(j, line, report);
                default: return parse_custom(j, line, report);
            }
        };
        for_each_jsonl(
            path,
            [&](const json& j, size_t line) {
                ++report.total_records;
                if (auto inst = parse(j, line)) {
                    ++report.valid;
                    result.instances.push_back(std::move(*inst));
                }
            },
            [&](size_t line, const std::string& what) {
                ++report.total_records;
                report.note_skip(line, "malformed record: " + what);
            });
    }

    if (result.instances.empty())
        throw DatasetError("zero valid instances in " + path.string() + " (" +
                           report.summary() + ")");
    return result;
}

// ---------------------------------------------------------------------------

std::string cell_key(const SampleCell& cell) {
    return to_string(cell.difficulty) + "|" + to_string(cell.qtype) + "|" +
           to_string(cell.gold_label);
}

SampleCell cell_from_key(const std::string& key) {
    auto first = key.find('|');
    auto second = key.find('|', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("bad cell key: " + key);
    SampleCell cell;
    cell.difficulty = difficulty_from_string(key.substr(0, first));
    cell.qtype = qtype_from_string(key.substr(first + 1, second - first - 1));
    cell.gold_label = gold_label_from_string(key.substr(second + 1));
    return cell;
}

size_t SamplingPlan::total() const {
    size_t n = 0;
    for (const auto& [_, count] : per_cell_counts) n += count;
    return n;
}

SamplingPlan hotpotqa_replication_plan(uint64_t seed) {
    SamplingPlan plan;
    plan.seed = seed;
    for (auto level : {Difficulty::easy, Difficulty::medium, Difficulty::hard})
        for (auto type : {QType::bridge, QType::comparison})
            for (auto label : {GoldLabel::relevant, GoldLabel::non_relevant})
                plan.per_cell_counts[cell_key({level, type, label})] = 100;
    return plan;
}

SamplingPlan balanced_plan(SourceKind source, size_t per_label, uint64_t seed) {
    SamplingPlan plan;
    plan.seed = seed;
    QType qtype = source == SourceKind::squad2 ? QType::single_hop : QType::none;
    plan.per_cell_counts[cell_key({Difficulty::none, qtype, GoldLabel::relevant})] = per_label;
    plan.per_cell_counts[cell_key({Difficulty::none, qtype, GoldLabel::non_relevant})] = per_label;
    return plan;
}

SamplingPlan plan_from_json(const nlohmann::json& j) {
    SamplingPlan plan;
    plan.seed = j.value("seed", 0ULL);
    for (const auto& cell : j.at("cells")) {
        SampleCell c;
        c.difficulty = difficulty_from_string(cell.value("difficulty", "none"));
        c.qtype = qtype_from_string(cell.value("qtype", "none"));
        c.gold_label = gold_label_from_string(cell.at("gold_label").get<std::string>());
        plan.per_cell_counts[cell_key(c)] += cell.at("count").get<size_t>();
    }
    return plan;
}

nlohmann::json plan_to_json(const SamplingPlan& plan) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [key, count] : plan.per_cell_counts) {
        SampleCell c = cell_from_key(key);
        cells.push_back({{"difficulty", to_string(c.difficulty)},
                         {"qtype", to_string(c.qtype)},
                         {"gold_label", to_string(c.gold_label)},
                         {"count", count}});
    }
    return nlohmann::json{{"seed", plan.seed}, {"cells", std::move(cells)}};
}

std::vector<SampledPair> stratified_sample(const std::vector<EvalInstance>& instances,
                                           const SamplingPlan& plan) {
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> pools;
    for (const auto& inst : instances) {
        for (const auto& doc : inst.contexts) {
            std::string key = cell_key({inst.difficulty, inst.qtype, doc.gold_label});
            if (plan.per_cell_counts.count(key))
                pools[key].emplace_back(inst.instance_id, doc.doc_id);
        }
    }

    std::vector<SampledPair> out;
    out.reserve(plan.total());
    for (const auto& [key, want] : plan.per_cell_counts) {
        if (want == 0) continue;
        auto& pool = pools[key];
        if (pool.size() < want)
            throw DatasetError("sampling cell " + key + ": requested " + std::to_string(want) +
                               ", eligible " + std::to_string(pool.size()) + " (shortfall " +
                               std::to_string(want - pool.size()) + ")");
        std::sort(pool.begin(), pool.end());
        Rng rng(derive_seed(plan.seed, key));
        fisher_yates_shuffle(pool, rng);
        for (size_t i = 0; i < want; ++i)
            out.push_back({pool[i].first, pool[i].second, key});
    }
    return out;
}

std::vector<SampledPair> all_labeled_pairs(const std::vector<EvalInstance>& instances) {
    std::vector<SampledPair> out;
    for (const auto& inst : instances)
        for (const auto& doc : inst.contexts)
            if (doc.gold_label != GoldLabel::unlabeled)
                out.push_back({inst.instance_id, doc.doc_id,
                               cell_key({inst.difficulty, inst.qtype, doc.gold_label})});
    return out;
}

// ---------------------------------------------------------------------------

void write_instances(const std::filesystem::path& path,
                     const std::vector<EvalInstance>& instances) {
    JsonlWriter out(path);
    for (const auto& inst : instances) out.write(instance_to_json(inst));
}

std::vector<EvalInstance> read_instances(const std::filesystem::path& path) {
    std::vector<EvalInstance> out;
    for_each_jsonl(path, [&](const json& j, size_t line) {
        EvalInstance inst = instance_from_json(j);
        if (auto err = check_instance(inst))
            throw JsonlError(path, line, "invalid instance: " + *err);
        out.push_back(std::move(inst));
    });
    return out;
}

void write_sample_manifest(const std::filesystem::path& path,
                           const std::vector<SampledPair>& pairs) {
    JsonlWriter out(path);
    for (const auto& p : pairs)
        out.write(json{{"instance_id", p.instance_id}, {"doc_id", p.doc_id}, {"cell", p.cell}});
}

std::vector<SampledPair> read_sample_manifest(const std::filesystem::path& path) {
    std::vector<SampledPair> out;
    for_each_jsonl(path, [&](const json& j, size_t) {
        out.push_back({j.at("instance_id").get<std::string>(), j.at("doc_id").get<std::string>(),
                       j.value("cell", "")});
    });
    return out;
}

}  // namespace ctxjudge::data
