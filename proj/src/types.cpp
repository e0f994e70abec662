#include "ctxjudge/types.hpp"

#include <algorithm>
#include <unordered_set>

namespace ctxjudge {

std::string to_string(GoldLabel v) {
    switch (v) {
        case GoldLabel::relevant: return "relevant";
        case GoldLabel::non_relevant: return "non_relevant";
        case GoldLabel::unlabeled: return "unlabeled";
    }
    throw std::logic_error("bad GoldLabel");
}

std::string to_string(Difficulty v) {
    switch (v) {
        case Difficulty::easy: return "easy";
        case Difficulty::medium: return "medium";
        case Difficulty::hard: return "hard";
        case Difficulty::none: return "none";
    }
    throw std::logic_error("bad Difficulty");
}

std::string to_string(QType v) {
    switch (v) {
        case QType::bridge: return "bridge";
        case QType::comparison: return "comparison";
        case QType::single_hop: return "single_hop";
        case QType::none: return "none";
    }
    throw std::logic_error("bad QType");
}

std::string to_string(SourceKind v) {
    switch (v) {
        case SourceKind::hotpotqa: return "hotpotqa";
        case SourceKind::musique: return "musique";
        case SourceKind::squad2: return "squad2";
        case SourceKind::custom: return "custom";
    }
    throw std::logic_error("bad SourceKind");
}

GoldLabel gold_label_from_string(const std::string& s) {
    if (s == "relevant") return GoldLabel::relevant;
    if (s == "non_relevant") return GoldLabel::non_relevant;
    if (s == "unlabeled") return GoldLabel::unlabeled;
    throw std::invalid_argument("unknown gold label: " + s);
}

Difficulty difficulty_from_string(const std::string& s) {
    if (s == "easy") return Difficulty::easy;
    if (s == "medium") return Difficulty::medium;
    if (s == "hard") return Difficulty::hard;
    if (s == "none" || s.empty()) return Difficulty::none;
    throw std::invalid_argument("unknown difficulty: " + s);
}

QType qtype_from_string(const std::string& s) {
    if (s == "bridge") return QType::bridge;
    if (s == "comparison") return QType::comparison;
    if (s == "single_hop") return QType::single_hop;
    if (s == "none" || s.empty()) return QType::none;
    throw std::invalid_argument("unknown question type: " + s);
}

SourceKind source_from_string(const std::string& s) {
    if (s == "hotpotqa") return SourceKind::hotpotqa;
    if (s == "musique") return SourceKind::musique;
    if (s == "squad2") return SourceKind::squad2;
    if (s == "custom") return SourceKind::custom;
    throw std::invalid_argument("unknown source: " + s);
}

const ContextDoc* EvalInstance::find_context(const std::string& doc_id) const {
    for (const auto& c : contexts)
        if (c.doc_id == doc_id) return &c;
    return nullptr;
}

size_t EvalInstance::count_label(GoldLabel label) const {
    return static_cast<size_t>(std::count_if(
        contexts.begin(), contexts.end(),
        [label](const ContextDoc& c) { return c.gold_label == label; }));
}

namespace {

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::optional<std::string> check_instance(const EvalInstance& inst) {
    if (inst.instance_id.empty()) return "empty instance_id";
    if (is_blank(inst.question)) return "empty question";
    if (inst.contexts.empty()) return "no contexts";
    std::unordered_set<std::string> seen;
    for (const auto& c : inst.contexts) {
        if (c.doc_id.empty()) return "empty doc_id";
        if (!seen.insert(c.doc_id).second) return "duplicate doc_id: " + c.doc_id;
        if (is_blank(c.text)) return "empty context text (doc_id " + c.doc_id + ")";
    }
    return std::nullopt;
}

nlohmann::json instance_to_json(const EvalInstance& inst) {
    nlohmann::json contexts = nlohmann::json::array();
    for (const auto& c : inst.contexts) {
        nlohmann::json jc{{"doc_id", c.doc_id},
                          {"text", c.text},
                          {"gold_label", to_string(c.gold_label)}};
        if (c.title) jc["title"] = *c.title;
        contexts.push_back(std::move(jc));
    }
    nlohmann::json j{{"instance_id", inst.instance_id},
                     {"question", inst.question},
                     {"contexts", std::move(contexts)},
                     {"difficulty", to_string(inst.difficulty)},
                     {"qtype", to_string(inst.qtype)},
                     {"source", to_string(inst.source)}};
    if (inst.gold_answer)
        j["gold_answer"] = *inst.gold_answer;
    else
        j["gold_answer"] = nullptr;
    return j;
}

EvalInstance instance_from_json(const nlohmann::json& j) {
    EvalInstance inst;
    inst.instance_id = j.at("instance_id").get<std::string>();
    inst.question = j.at("question").get<std::string>();
    if (j.contains("gold_answer") && !j.at("gold_answer").is_null())
        inst.gold_answer = j.at("gold_answer").get<std::string>();
    inst.difficulty = difficulty_from_string(j.value("difficulty", "none"));
    inst.qtype = qtype_from_string(j.value("qtype", "none"));
    inst.source = source_from_string(j.value("source", "custom"));
    for (const auto& jc : j.at("contexts")) {
        ContextDoc c;
        c.doc_id = jc.at("doc_id").get<std::string>();
        c.text = jc.at("text").get<std::string>();
        c.gold_label = gold_label_from_string(jc.value("gold_label", "unlabeled"));
        if (jc.contains("title") && !jc.at("title").is_null())
            c.title = jc.at("title").get<std::string>();
        inst.contexts.push_back(std::move(c));
    }
    return inst;
}

}  // namespace ctxjudge
