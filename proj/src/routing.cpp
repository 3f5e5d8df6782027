#include "triage/routing.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace triage {

const std::vector<WorkflowId>& all_workflows() {
    static const std::vector<WorkflowId> ids = {
        WorkflowId::AddUser,    WorkflowId::AuthChange, WorkflowId::Coro,
        WorkflowId::MultipleISP, WorkflowId::O365Guest,  WorkflowId::O365Login,
        WorkflowId::PowerShell, WorkflowId::SalesforceAbnormalLogin,
        WorkflowId::SharePointFile, WorkflowId::Generic,
    };
    return ids;
}

std::string_view workflow_name(WorkflowId id) {
    switch (id) {
        case WorkflowId::AddUser: return "AddUser";
        case WorkflowId::AuthChange: return "AuthChange";
        case WorkflowId::Coro: return "Coro";
        case WorkflowId::MultipleISP: return "MultipleISP";
        case WorkflowId::O365Guest: return "O365Guest";
        case WorkflowId::O365Login: return "O365Login";
        case WorkflowId::PowerShell: return "PowerShell";
        case WorkflowId::SalesforceAbnormalLogin: return "SalesforceAbnormalLogin";
        case WorkflowId::SharePointFile: return "SharePointFile";
        case WorkflowId::Generic: return "Generic";
    }
    return "Generic";
}

std::optional<WorkflowId> parse_workflow_id(std::string_view name) {
    for (const auto id : all_workflows()) {
        if (name == workflow_name(id)) return id;
    }
    return std::nullopt;
}

std::string to_lower(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lowered;
}

bool equals_ci(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    if (needle.size() > haystack.size()) return false;
    const auto lowered_haystack = to_lower(haystack);
    const auto lowered_needle = to_lower(needle);
    return lowered_haystack.find(lowered_needle) != std::string::npos;
}

bool starts_with_ci(std::string_view haystack, std::string_view prefix) {
    return haystack.size() >= prefix.size() &&
           equals_ci(haystack.substr(0, prefix.size()), prefix);
}

bool is_guest_entity(std::string_view entity, const RoutingConfig& config) {
    const auto lowered = to_lower(entity);
    const auto marker = to_lower(config.guest_marker);
    const auto suffix = to_lower(config.guest_suffix);
    const auto marker_pos = lowered.find(marker);
    if (marker_pos == std::string::npos || marker_pos == 0) return false;  // name must precede
    if (lowered.size() < suffix.size() || lowered.compare(lowered.size() - suffix.size(),
                                                          suffix.size(), suffix) != 0) {
        return false;
    }
    // tenant segment between the marker and the suffix must be non-empty
    return marker_pos + marker.size() < lowered.size() - suffix.size();
}

bool cmdline_invokes_shell(std::string_view cmdline, const RoutingConfig& config) {
    return std::any_of(config.shell_indicators.begin(), config.shell_indicators.end(),
                       [&](const std::string& indicator) {
                           return contains_ci(cmdline, indicator);
                       });
}

namespace {

bool any_rule_contains(const AlertTrace& trace, const std::vector<std::string>& patterns) {
    for (const auto& rule : trace.rules) {
        for (const auto& pattern : patterns) {
            if (contains_ci(rule.behavior_rule, pattern)) return true;
        }
    }
    return false;
}

bool matches_multiple_isp(const AlertTrace& trace, const RoutingConfig& config) {
    for (const auto& rule : trace.rules) {
        if (contains_ci(rule.behavior_rule, config.multiple_isp_rule)) return true;
    }
    // multiple ISPs observed under O365 login rules
    std::set<std::string> isps;
    for (const auto& rule : trace.rules) {
        const bool is_login = std::any_of(
            config.o365_login_patterns.begin(), config.o365_login_patterns.end(),
            [&](const std::string& pattern) { return contains_ci(rule.behavior_rule, pattern); });
        if (!is_login) continue;
        if (const auto isp = rule.attributes.get(AttrKind::Isp)) {
            isps.insert(to_lower(*isp));
        }
    }
    return isps.size() >= 2;
}

}  // namespace

std::vector<WorkflowId> RoutingTable::route(const AlertTrace& trace) const {
    std::vector<WorkflowId> matched;
    const auto add = [&](WorkflowId id) {
        if (std::find(matched.begin(), matched.end(), id) == matched.end()) {
            matched.push_back(id);
        }
    };

    if (any_rule_contains(trace, config_.add_user_patterns)) add(WorkflowId::AddUser);
    if (any_rule_contains(trace, config_.auth_change_patterns)) add(WorkflowId::AuthChange);
    for (const auto& rule : trace.rules) {
        if (starts_with_ci(rule.behavior_rule, config_.coro_prefix)) {
            add(WorkflowId::Coro);
            break;
        }
    }
    if (matches_multiple_isp(trace, config_)) add(WorkflowId::MultipleISP);
    if (is_guest_entity(trace.entity, config_)) add(WorkflowId::O365Guest);
    if (any_rule_contains(trace, config_.o365_login_patterns)) add(WorkflowId::O365Login);
    for (const auto& rule : trace.rules) {
        const auto cmdline = rule.attributes.get(AttrKind::CmdLine);
        if (cmdline && cmdline_invokes_shell(*cmdline, config_)) {
            add(WorkflowId::PowerShell);
            break;
        }
    }
    for (const auto& rule : trace.rules) {
        if (equals_ci(rule.behavior_rule, config_.salesforce_rule)) {
            add(WorkflowId::SalesforceAbnormalLogin);
            break;
        }
    }
    if (any_rule_contains(trace, config_.sharepoint_patterns)) add(WorkflowId::SharePointFile);

    if (matched.empty()) matched.push_back(WorkflowId::Generic);
    return matched;
}

}  // namespace triage
