#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "triage/alert.hpp"
#include "triage/orchestrator.hpp"
#include "triage/report.hpp"

namespace triage {

struct ClassCounts {
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;

    bool operator==(const ClassCounts& other) const = default;
};

// Binary task plus the 4-way subclass task (the latter restricted to
// ground-truth non-actionable items).
struct ConfusionCounts {
    ClassCounts actionable;
    ClassCounts nonactionable;
    std::array<ClassCounts, 4> subclass{};  // indexed by Subclass enum order
    std::size_t total = 0;

    bool operator==(const ConfusionCounts& other) const = default;
};

struct MetricsSummary {
    double actionable_f1 = 0.0;
    double nonactionable_f1 = 0.0;
    double macro_f1 = 0.0;
    double subclass_macro_f1 = 0.0;
    std::size_t subclass_classes_present = 0;  // classes averaged into subclass_macro_f1
    double fpr = 0.0;
    double recall_actionable = 0.0;
    double mean_tool_calls = 0.0;
    std::chrono::nanoseconds median_wall_time{0};
};

using PredictionList = std::vector<std::pair<std::string, TriageReport>>;
using LabelList = std::vector<std::pair<std::string, GroundTruthLabel>>;

// F1 = 2PR/(P+R), 0 when P+R = 0.
double f1_score(const ClassCounts& counts);

ConfusionCounts count_confusion(const PredictionList& predictions, const LabelList& labels);

// Decision-quality metrics; efficiency fields are left zero. Throws
// EvalError(IdMismatch) unless the id sets match exactly.
MetricsSummary score(const PredictionList& predictions, const LabelList& labels);

struct EfficiencyStats {
    double mean_tool_calls = 0.0;
    std::chrono::nanoseconds median_wall_time{0};
};

// Mean tool calls and lower-median wall time. Throws EvalError(EmptyInput)
// on an empty list.
EfficiencyStats efficiency(const std::vector<TriageOutcome>& outcomes);

}  // namespace triage
