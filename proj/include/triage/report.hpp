#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "triage/alert.hpp"
#include "triage/routing.hpp"

namespace triage {

enum class ObservableKind { User, Ip, Host, File, Account, Arn };

std::string_view observable_kind_name(ObservableKind kind);
std::optional<ObservableKind> parse_observable_kind(std::string_view name);

struct Observable {
    ObservableKind kind = ObservableKind::User;
    std::string value;
    std::string source;  // attribute path or contributing workflow

    bool operator==(const Observable& other) const = default;
};

// Output of one workflow executor. report_fields holds exactly the
// workflow's schema keys, in schema order.
struct WorkflowReport {
    WorkflowId workflow = WorkflowId::Generic;
    nlohmann::ordered_json report_fields = nlohmann::ordered_json::object();
    bool actionable = false;
    std::string reasoning;
    std::string summary;

    // Hand-off to the synthesizer; cleared before the report is stored.
    std::vector<Observable> observables;  // evidence values seen via tools
    bool premise_contradicted = false;    // evidence contradicted the triggering rule
    bool data_error = false;              // malformed trace field forced a bail-out

    bool operator==(const WorkflowReport& other) const = default;
};

// Schema keys for each workflow's report block, in emission order.
const std::vector<std::string>& workflow_schema_keys(WorkflowId id);

enum class Verdict { Actionable, NonActionable };

std::string_view verdict_name(Verdict verdict);

struct TriageReport {
    Verdict verdict = Verdict::NonActionable;
    std::optional<Subclass> subclass;  // present iff NonActionable
    std::vector<WorkflowReport> workflow_reports;
    std::string reasoning;
    std::string summary;
    std::vector<Observable> observables;
    std::vector<std::string> followups;  // non-empty iff Actionable

    bool actionable() const { return verdict == Verdict::Actionable; }

    bool operator==(const TriageReport& other) const = default;
};

}  // namespace triage
