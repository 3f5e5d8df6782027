#include "triage/metrics.hpp"

#include <algorithm>
#include <map>

#include "triage/errors.hpp"

namespace triage {

double f1_score(const ClassCounts& counts) {
    const double tp = static_cast<double>(counts.true_positive);
    const double precision_denom = tp + static_cast<double>(counts.false_positive);
    const double recall_denom = tp + static_cast<double>(counts.false_negative);
    if (precision_denom == 0.0 || recall_denom == 0.0) return 0.0;
    const double precision = tp / precision_denom;
    const double recall = tp / recall_denom;
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

namespace {

std::map<std::string, GroundTruthLabel> index_labels(const LabelList& labels) {
    std::map<std::string, GroundTruthLabel> by_id;
    for (const auto& [id, label] : labels) {
        if (!by_id.emplace(id, label).second) {
            throw EvalError(EvalError::Code::IdMismatch, "duplicate label id " + id);
        }
    }
    return by_id;
}

}  // namespace

ConfusionCounts count_confusion(const PredictionList& predictions, const LabelList& labels) {
    const auto by_id = index_labels(labels);
    if (predictions.size() != labels.size()) {
        throw EvalError(EvalError::Code::IdMismatch, "prediction/label count mismatch");
    }

    ConfusionCounts counts;
    std::map<std::string, bool> seen;
    for (const auto& [id, report] : predictions) {
        if (!seen.emplace(id, true).second) {
            throw EvalError(EvalError::Code::IdMismatch, "duplicate prediction id " + id);
        }
        const auto label = by_id.find(id);
        if (label == by_id.end()) {
            throw EvalError(EvalError::Code::IdMismatch, "no label for prediction id " + id);
        }
        ++counts.total;

        const bool predicted = report.actionable();
        const bool truth = label->second.actionable;
        if (predicted && truth) {
            ++counts.actionable.true_positive;
        } else if (predicted && !truth) {
            ++counts.actionable.false_positive;
            ++counts.nonactionable.false_negative;
        } else if (!predicted && truth) {
            ++counts.actionable.false_negative;
            ++counts.nonactionable.false_positive;
        } else {
            ++counts.nonactionable.true_positive;
        }

        if (!truth) {  // 4-way task scores ground-truth non-actionable items only
            const auto truth_class = static_cast<std::size_t>(*label->second.subclass);
            if (!predicted && report.subclass) {
                const auto predicted_class = static_cast<std::size_t>(*report.subclass);
                if (predicted_class == truth_class) {
                    ++counts.subclass[truth_class].true_positive;
                } else {
                    ++counts.subclass[predicted_class].false_positive;
                    ++counts.subclass[truth_class].false_negative;
                }
            } else {
                ++counts.subclass[truth_class].false_negative;
            }
        }
    }
    return counts;
}

MetricsSummary score(const PredictionList& predictions, const LabelList& labels) {
    const auto counts = count_confusion(predictions, labels);

    MetricsSummary summary;
    summary.actionable_f1 = f1_score(counts.actionable);
    summary.nonactionable_f1 = f1_score(counts.nonactionable);
    summary.macro_f1 = (summary.actionable_f1 + summary.nonactionable_f1) / 2.0;

    // Average over subclass categories present in ground truth; a class with
    // no ground-truth members contributes nothing either way.
    double subclass_sum = 0.0;
    std::size_t present = 0;
    for (const auto& cell : counts.subclass) {
        if (cell.true_positive + cell.false_negative == 0) continue;
        ++present;
        subclass_sum += f1_score(cell);
    }
    summary.subclass_macro_f1 = present == 0 ? 0.0 : subclass_sum / static_cast<double>(present);
    summary.subclass_classes_present = present;

    const std::size_t predicted_nonactionable =
        counts.nonactionable.true_positive + counts.nonactionable.false_positive;
    summary.fpr = predicted_nonactionable == 0
                      ? 0.0
                      : static_cast<double>(counts.nonactionable.false_positive) /
                            static_cast<double>(predicted_nonactionable);

    const std::size_t labeled_actionable =
        counts.actionable.true_positive + counts.actionable.false_negative;
    summary.recall_actionable = labeled_actionable == 0
                                    ? 0.0
                                    : static_cast<double>(counts.actionable.true_positive) /
                                          static_cast<double>(labeled_actionable);
    return summary;
}

EfficiencyStats efficiency(const std::vector<TriageOutcome>& outcomes) {
    if (outcomes.empty()) {
        throw EvalError(EvalError::Code::EmptyInput, "efficiency over an empty outcome list");
    }

    std::size_t total_calls = 0;
    std::vector<std::chrono::nanoseconds> times;
    times.reserve(outcomes.size());
    for (const auto& outcome : outcomes) {
        total_calls += outcome.metrics.tool_calls;
        times.push_back(outcome.metrics.wall_time);
    }
    std::sort(times.begin(), times.end());

    EfficiencyStats stats;
    stats.mean_tool_calls =
        static_cast<double>(total_calls) / static_cast<double>(outcomes.size());
    stats.median_wall_time = times[(times.size() - 1) / 2];  // lower median on even counts
    return stats;
}

}  // namespace triage
