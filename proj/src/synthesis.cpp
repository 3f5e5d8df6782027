#include "triage/synthesis.hpp"

#include <algorithm>
#include <cctype>

#include "triage/errors.hpp"

namespace triage {

namespace {

using json = nlohmann::ordered_json;

bool holds_unknown(const json& value) {
    if (value.is_string()) return value.get_ref<const std::string&>() == "Unknown";
    if (value.is_object() || value.is_array()) {
        return std::any_of(value.begin(), value.end(),
                           [](const json& child) { return holds_unknown(child); });
    }
    return false;
}

void add_observable(std::vector<Observable>& observables, ObservableKind kind,
                    std::string_view value, std::string source) {
    if (value.empty()) return;
    for (const auto& existing : observables) {
        if (existing.kind == kind && existing.value == value) return;
    }
    observables.push_back({kind, std::string(value), std::move(source)});
}

ObservableKind entity_kind(std::string_view entity) {
    if (entity.size() >= 4) {
        const auto head = entity.substr(0, 4);
        if (head == "arn:" || head == "ARN:" || head == "Arn:") return ObservableKind::Arn;
    }
    if (entity.find('@') != std::string_view::npos) return ObservableKind::User;
    if (!entity.empty() && std::all_of(entity.begin(), entity.end(), [](unsigned char c) {
            return std::isdigit(c) != 0;
        })) {
        return ObservableKind::Account;
    }
    return ObservableKind::Host;
}

std::string followup_for(WorkflowId id, const AlertTrace& trace) {
    switch (id) {
        case WorkflowId::AddUser:
            return "Confirm with the requester that admin privileges for the added user were "
                   "authorized.";
        case WorkflowId::AuthChange:
            return "Verify with the account owner that the authentication method change was "
                   "intentional.";
        case WorkflowId::Coro:
            return "Review the Coro console for the correlated vendor detections.";
        case WorkflowId::MultipleISP:
            return "Was the user travelling or on VPN at " + trace.time_iso + "?";
        case WorkflowId::O365Guest:
            return "Confirm why an external guest account holds elevated privileges.";
        case WorkflowId::O365Login:
            return "Check with the user whether the recent high-risk sign-ins were legitimate.";
        case WorkflowId::PowerShell:
            return "Confirm whether the script execution was an authorized administrative task.";
        case WorkflowId::SalesforceAbnormalLogin:
            return "Ask the user to confirm the repeated abnormal Salesforce logins.";
        case WorkflowId::SharePointFile:
            return "Confirm whether the file access was business-justified.";
        case WorkflowId::Generic:
            return "Collect additional context for the escalated alert from the reporting "
                   "system.";
    }
    return "Collect additional context for the escalated alert.";
}

json observable_to_json(const Observable& observable) {
    json object = json::object();
    object["kind"] = std::string(observable_kind_name(observable.kind));
    object["value"] = observable.value;
    object["source"] = observable.source;
    return object;
}

[[noreturn]] void report_error(const std::string& field, const std::string& reason) {
    throw ParseError(ParseError::Code::SchemaViolation, field,
                     "report " + field + ": " + reason);
}

}  // namespace

Subclass classify_nonactionable(const std::vector<WorkflowReport>& reports,
                                const std::vector<Violation>& violations) {
    if (!violations.empty() ||
        std::any_of(reports.begin(), reports.end(),
                    [](const WorkflowReport& r) { return r.data_error; })) {
        return Subclass::FalsePositiveData;
    }
    for (const auto& report : reports) {
        if (holds_unknown(report.report_fields)) return Subclass::Undetermined;
        if (report.workflow == WorkflowId::Generic) {
            const auto it = report.report_fields.find("recommendation");
            if (it != report.report_fields.end() && it->is_string() &&
                it->get_ref<const std::string&>() == "REQUIRES_ADDITIONAL_INFO") {
                return Subclass::Undetermined;
            }
        }
    }
    if (std::any_of(reports.begin(), reports.end(),
                    [](const WorkflowReport& r) { return r.premise_contradicted; })) {
        return Subclass::FalsePositiveLogic;
    }
    return Subclass::BenignPositive;
}

std::vector<Observable> extract_observables(const AlertTrace& trace,
                                            const std::vector<WorkflowReport>& reports) {
    std::vector<Observable> observables;
    add_observable(observables, entity_kind(trace.entity), trace.entity, "entity");

    for (std::size_t i = 0; i < trace.rules.size(); ++i) {
        const std::string source_base = "rules[" + std::to_string(i) + "].";
        for (const auto& [key, value] : trace.rules[i].attributes) {
            ObservableKind kind;
            switch (key.kind()) {
                case AttrKind::Username:
                case AttrKind::TargetUser: kind = ObservableKind::User; break;
                case AttrKind::ClientIp:
                case AttrKind::ActorIp: kind = ObservableKind::Ip; break;
                case AttrKind::Hostname: kind = ObservableKind::Host; break;
                case AttrKind::FileName:
                case AttrKind::ExploitPath: kind = ObservableKind::File; break;
                case AttrKind::Arn: kind = ObservableKind::Arn; break;
                default: continue;
            }
            add_observable(observables, kind, value, source_base + key.name());
        }
    }

    for (const auto& report : reports) {
        for (const auto& observable : report.observables) {
            add_observable(observables, observable.kind, observable.value, observable.source);
        }
    }
    return observables;
}

TriageReport synthesize(const AlertTrace& trace, const std::vector<WorkflowReport>& reports,
                        const std::vector<Violation>& violations) {
    if (reports.empty()) {
        throw EmptyReportsError("synthesize: no workflow reports for alert " + trace.id);
    }

    TriageReport triage;
    const bool actionable = std::any_of(reports.begin(), reports.end(),
                                        [](const WorkflowReport& r) { return r.actionable; });
    triage.verdict = actionable ? Verdict::Actionable : Verdict::NonActionable;
    if (!actionable) triage.subclass = classify_nonactionable(reports, violations);

    std::string reasoning;
    std::vector<std::string> escalated;
    std::vector<std::string> reviewed;
    for (const auto& report : reports) {
        const auto name = std::string(workflow_name(report.workflow));
        if (!reasoning.empty()) reasoning += ' ';
        reasoning += name + ": " + report.reasoning;
        reviewed.push_back(name);
        if (report.actionable) escalated.push_back(name);
    }
    triage.reasoning = std::move(reasoning);

    const auto join = [](const std::vector<std::string>& parts) {
        std::string joined;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i > 0) joined += ", ";
            joined += parts[i];
        }
        return joined;
    };
    if (actionable) {
        triage.summary = "Escalated on " + join(escalated) + ".";
    } else {
        triage.summary = "Closed as " + std::string(subclass_name(*triage.subclass)) +
                         " after " + join(reviewed) + " review.";
    }

    triage.observables = extract_observables(trace, reports);

    if (actionable) {
        for (const auto& report : reports) {
            if (!report.actionable) continue;
            const auto question = followup_for(report.workflow, trace);
            if (std::find(triage.followups.begin(), triage.followups.end(), question) ==
                triage.followups.end()) {
                triage.followups.push_back(question);
            }
        }
    }

    triage.workflow_reports = reports;
    for (auto& report : triage.workflow_reports) {
        // hand-off hints have served their purpose
        report.observables.clear();
        report.premise_contradicted = false;
        report.data_error = false;
    }
    return triage;
}

std::string render_report(const TriageReport& report) {
    json document = json::object();

    if (report.workflow_reports.size() == 1) {
        document["report"] = report.workflow_reports.front().report_fields;
    } else {
        json merged = json::object();
        for (const auto& workflow : report.workflow_reports) {
            merged[std::string(workflow_name(workflow.workflow))] = workflow.report_fields;
        }
        document["report"] = std::move(merged);
    }
    document["actionable"] = report.actionable();
    document["reasoning"] = report.reasoning;
    document["summary"] = report.summary;
    document["verdict"] = std::string(verdict_name(report.verdict));
    if (report.subclass) {
        document["subclass"] = std::string(subclass_name(*report.subclass));
    }
    json observables = json::array();
    for (const auto& observable : report.observables) {
        observables.push_back(observable_to_json(observable));
    }
    document["observables"] = std::move(observables);
    document["followups"] = report.followups;

    json workflows = json::array();
    for (const auto& workflow : report.workflow_reports) {
        json entry = json::object();
        entry["workflow"] = std::string(workflow_name(workflow.workflow));
        entry["report"] = workflow.report_fields;
        entry["actionable"] = workflow.actionable;
        entry["reasoning"] = workflow.reasoning;
        entry["summary"] = workflow.summary;
        workflows.push_back(std::move(entry));
    }
    document["workflows"] = std::move(workflows);

    return document.dump(2);
}

TriageReport parse_report(const std::string& text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::exception& error) {
        throw ParseError(ParseError::Code::MalformedDocument, "",
                         std::string("report: ") + error.what());
    }
    if (!document.is_object()) report_error("", "not an object");
    for (const auto required : {"report", "actionable", "reasoning", "summary", "verdict",
                                "observables", "followups", "workflows"}) {
        if (!document.contains(required)) report_error(required, "missing");
    }

    TriageReport report;
    const auto verdict = document["verdict"].get<std::string>();
    if (verdict == "Actionable") {
        report.verdict = Verdict::Actionable;
    } else if (verdict == "NonActionable") {
        report.verdict = Verdict::NonActionable;
    } else {
        report_error("verdict", "unknown value");
    }
    if (document["actionable"].get<bool>() != report.actionable()) {
        report_error("actionable", "inconsistent with verdict");
    }
    if (report.verdict == Verdict::NonActionable) {
        if (!document.contains("subclass")) report_error("subclass", "missing");
        const auto subclass = parse_subclass(document["subclass"].get<std::string>());
        if (!subclass) report_error("subclass", "unknown value");
        report.subclass = subclass;
    } else if (document.contains("subclass")) {
        report_error("subclass", "present on an actionable report");
    }

    report.reasoning = document["reasoning"].get<std::string>();
    report.summary = document["summary"].get<std::string>();

    for (const auto& entry : document["observables"]) {
        Observable observable;
        const auto kind = parse_observable_kind(entry.value("kind", std::string{}));
        if (!kind) report_error("observables.kind", "unknown value");
        observable.kind = *kind;
        observable.value = entry.value("value", std::string{});
        observable.source = entry.value("source", std::string{});
        if (observable.value.empty()) report_error("observables.value", "empty");
        report.observables.push_back(std::move(observable));
    }
    report.followups = document["followups"].get<std::vector<std::string>>();

    for (const auto& entry : document["workflows"]) {
        WorkflowReport workflow;
        const auto id = parse_workflow_id(entry.value("workflow", std::string{}));
        if (!id) report_error("workflows.workflow", "unknown value");
        workflow.workflow = *id;
        if (!entry.contains("report")) report_error("workflows.report", "missing");
        workflow.report_fields = entry["report"];
        workflow.actionable = entry.value("actionable", false);
        workflow.reasoning = entry.value("reasoning", std::string{});
        workflow.summary = entry.value("summary", std::string{});
        report.workflow_reports.push_back(std::move(workflow));
    }
    if (report.workflow_reports.empty()) report_error("workflows", "empty");
    return report;
}

}  // namespace triage
