#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctxjudge {

enum class GoldLabel { relevant, non_relevant, unlabeled };
enum class Difficulty { easy, medium, hard, none };
enum class QType { bridge, comparison, single_hop, none };
enum class SourceKind { hotpotqa, musique, squad2, custom };

std::string to_string(GoldLabel v);
std::string to_string(Difficulty v);
std::string to_string(QType v);
std::string to_string(SourceKind v);

GoldLabel gold_label_from_string(const std::string& s);
Difficulty difficulty_from_string(const std::string& s);
QType qtype_from_string(const std::string& s);
SourceKind source_from_string(const std::string& s);

/// One retrieved document as seen by the judges.
struct ContextDoc {
    std::string doc_id;
    std::optional<std::string> title;
    std::string text;
    GoldLabel gold_label = GoldLabel::unlabeled;
};

/// One query with its ordered context list. Retrieval order of `contexts`
/// is meaningful and preserved everywhere. A missing gold_answer marks the
/// instance as answerless (judged only under the no_answer variants).
struct EvalInstance {
    std::string instance_id;
    std::string question;
    std::optional<std::string> gold_answer;
    std::vector<ContextDoc> contexts;
    Difficulty difficulty = Difficulty::none;
    QType qtype = QType::none;
    SourceKind source = SourceKind::custom;

    const ContextDoc* find_context(const std::string& doc_id) const;
    size_t count_label(GoldLabel label) const;
};

/// Structural invariants shared by every source: non-empty trimmed texts,
/// unique doc_ids, at least one context. Returns an explanation on failure.
std::optional<std::string> check_instance(const EvalInstance& inst);

nlohmann::json instance_to_json(const EvalInstance& inst);
EvalInstance instance_from_json(const nlohmann::json& j);

}  // namespace ctxjudge
