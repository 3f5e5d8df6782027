#include "triage/report.hpp"

namespace triage {

std::string_view observable_kind_name(ObservableKind kind) {
    switch (kind) {
        case ObservableKind::User: return "User";
        case ObservableKind::Ip: return "IP";
        case ObservableKind::Host: return "Host";
        case ObservableKind::File: return "File";
        case ObservableKind::Account: return "Account";
        case ObservableKind::Arn: return "ARN";
    }
    return "User";
}

std::optional<ObservableKind> parse_observable_kind(std::string_view name) {
    if (name == "User") return ObservableKind::User;
    if (name == "IP") return ObservableKind::Ip;
    if (name == "Host") return ObservableKind::Host;
    if (name == "File") return ObservableKind::File;
    if (name == "Account") return ObservableKind::Account;
    if (name == "ARN") return ObservableKind::Arn;
    return std::nullopt;
}

std::string_view verdict_name(Verdict verdict) {
    return verdict == Verdict::Actionable ? "Actionable" : "NonActionable";
}

const std::vector<std::string>& workflow_schema_keys(WorkflowId id) {
    static const std::vector<std::string> add_user = {
        "target_user_record", "target_user_admin", "reasoning_target_user_admin"};
    static const std::vector<std::string> auth_change = {"user_record", "new_user",
                                                         "reasoning_new_user"};
    static const std::vector<std::string> coro = {"user_email", "behavior_rules"};
    static const std::vector<std::string> multiple_isp = {"impossible_travel",
                                                          "impossible_travel_reasoning"};
    static const std::vector<std::string> o365_guest = {
        "guest_user_record", "guest_user_admin", "reasoning_guest_user_admin"};
    static const std::vector<std::string> o365_login = {
        "user_email", "recent_activity_riskScore_greater_than_2000_count",
        "high_risk_activity_raw_json_row"};
    static const std::vector<std::string> powershell = {
        "powerShell_Malicious", "reasoning", "dis_Infect_Detection", "reasoning_Dis_Infect"};
    static const std::vector<std::string> salesforce = {"user_email", "recent_rule_count"};
    static const std::vector<std::string> sharepoint = {"sharepoint_risk_score"};
    static const std::vector<std::string> generic = {"validation", "validation_reasoning",
                                                     "recommendation"};
    switch (id) {
        case WorkflowId::AddUser: return add_user;
        case WorkflowId::AuthChange: return auth_change;
        case WorkflowId::Coro: return coro;
        case WorkflowId::MultipleISP: return multiple_isp;
        case WorkflowId::O365Guest: return o365_guest;
        case WorkflowId::O365Login: return o365_login;
        case WorkflowId::PowerShell: return powershell;
        case WorkflowId::SalesforceAbnormalLogin: return salesforce;
        case WorkflowId::SharePointFile: return sharepoint;
        case WorkflowId::Generic: return generic;
    }
    return generic;
}

}  // namespace triage
