#include "triage/workflows.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "triage/geo.hpp"
#include "triage/time_util.hpp"

namespace triage {

namespace {

bool has_admin_role(const UserRecord& record, const PolicyConfig& policy) {
    for (const auto& role : record.roles) {
        for (const auto& admin : policy.admin_roles) {
            if (equals_ci(role, admin)) return true;
        }
    }
    return false;
}

std::string first_admin_role(const UserRecord& record, const PolicyConfig& policy) {
    for (const auto& role : record.roles) {
        for (const auto& admin : policy.admin_roles) {
            if (equals_ci(role, admin)) return role;
        }
    }
    return {};
}

std::optional<double> attr_as_double(const AttributeMap& attributes, std::string_view name) {
    const auto value = attributes.get(AttributeKey::unknown(std::string(name)));
    if (!value) return std::nullopt;
    double parsed = 0.0;
    const char* first = value->data();
    const char* last = first + value->size();
    const auto [ptr, ec] = std::from_chars(first, last, parsed);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return parsed;
}

bool rule_matches_any(const TriggeredRule& rule, const std::vector<std::string>& patterns) {
    return std::any_of(patterns.begin(), patterns.end(), [&](const std::string& pattern) {
        return contains_ci(rule.behavior_rule, pattern);
    });
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) joined += separator;
        joined += parts[i];
    }
    return joined;
}

nlohmann::ordered_json row_to_json(const FixtureRow& row) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    object["timestamp"] = row.timestamp;
    for (const auto& [key, value] : row.attributes) {
        object[key.name()] = value;
    }
    return object;
}

}  // namespace

WorkflowReport run_add_user(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::AddUser;

    std::vector<std::string> targets;
    for (const auto& rule : context.trace.rules) {
        const auto target = rule.attributes.get(AttrKind::TargetUser);
        if (!target) continue;
        if (target->empty()) {
            report.data_error = true;
            continue;
        }
        if (std::find(targets.begin(), targets.end(), *target) == targets.end()) {
            targets.emplace_back(*target);
        }
    }

    bool any_found = false;
    bool any_admin = false;
    std::string admin_role;
    for (const auto& target : targets) {
        const auto record =
            context.tools.get_user_record(target, context.trace.account, context.trace.tenant);
        if (!record) continue;
        any_found = true;
        if (has_admin_role(*record, context.policy)) {
            any_admin = true;
            if (admin_role.empty()) admin_role = first_admin_role(*record, context.policy);
        }
    }

    const std::string record_state = any_found ? "Found" : "Unknown";
    const std::string admin_state = any_admin ? "Admin" : (any_found ? "User" : "Unknown");
    std::string admin_reasoning;
    if (any_admin) {
        admin_reasoning =
            "Target user roles include " + admin_role + " in the retrieved user record.";
    } else if (any_found) {
        admin_reasoning = "Retrieved user record carries no admin-equivalent role.";
    } else if (targets.empty()) {
        admin_reasoning = "No TargetUser attribute present; admin status unknown.";
    } else {
        admin_reasoning = "No directory record for the target user; admin status unknown.";
    }

    report.report_fields["target_user_record"] = record_state;
    report.report_fields["target_user_admin"] = admin_state;
    report.report_fields["reasoning_target_user_admin"] = admin_reasoning;
    report.actionable = any_admin;
    report.reasoning = any_admin
                           ? "User add/update touches an administrator account; escalating."
                           : "User add/update affects no administrator account.";
    report.summary = "User add/update event for " +
                     (targets.empty() ? std::string("an unnamed target") : join(targets, ", ")) +
                     ".";
    return report;
}

WorkflowReport run_auth_change(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::AuthChange;

    bool removal = false;
    for (const auto& rule : context.trace.rules) {
        if (contains_ci(rule.behavior_rule, context.routing.auth_removal_pattern)) {
            removal = true;
            break;
        }
    }

    std::string record_state = "Unknown";
    std::string new_user = "Unknown";
    std::string age_reasoning = "No user record found; account age unknown.";
    if (context.trace.entity.empty()) {
        report.data_error = true;
        age_reasoning = "Trace carries no entity; account age unknown.";
    } else {
        const auto record = context.tools.get_user_record(
            context.trace.entity, context.trace.account, context.trace.tenant);
        if (record) {
            record_state = "Found";
            const auto created = parse_iso8601_utc(record->created);
            if (created) {
                const auto age_days = (context.trace.timestamp - *created) / 86400;
                new_user = age_days < context.policy.new_user_days ? "Yes" : "No";
                age_reasoning = "Account created " + record->created + ", " +
                                std::to_string(age_days) + " days before the event.";
            } else {
                age_reasoning = "User record has no parseable creation date.";
            }
        }
    }

    report.report_fields["user_record"] = record_state;
    report.report_fields["new_user"] = new_user;
    report.report_fields["reasoning_new_user"] = age_reasoning;
    report.actionable = removal || new_user != "Yes";
    if (removal) {
        report.reasoning = "Authentication method removed; removals always escalate.";
    } else if (new_user == "Yes") {
        report.reasoning =
            "Authentication method added by a recently created account; expected enrollment.";
    } else {
        report.reasoning =
            "Authentication method added to an established or unverified account; escalating.";
    }
    report.summary = std::string("Authentication method ") + (removal ? "removal" : "change") +
                     " for " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_coro(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::Coro;

    auto rules = nlohmann::ordered_json::array();
    for (const auto& rule : context.trace.rules) {
        rules.push_back(rule.behavior_rule);
    }
    report.report_fields["user_email"] = context.trace.entity;
    report.report_fields["behavior_rules"] = std::move(rules);
    report.actionable = true;
    report.reasoning = "Escalated per Coro vendor policy.";
    report.summary = "Coro vendor event for " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_generic(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::Generic;

    const auto violations = validate_trace(context.trace);

    bool direct_evidence = !context.trace.rules.empty();
    for (const auto& rule : context.trace.rules) {
        if (rule.attributes.empty()) direct_evidence = false;
    }

    bool evidence_found = direct_evidence;
    if (!direct_evidence && !context.trace.entity.empty()) {
        AttributeMap filter;
        const bool user_like = context.trace.entity.find('@') != std::string::npos;
        filter.set(AttributeKey::of(user_like ? AttrKind::Username : AttrKind::Hostname),
                   context.trace.entity);
        const TimeWindow window{
            context.trace.timestamp - context.policy.login_lookback_hours * 3600,
            context.trace.timestamp};
        evidence_found = context.tools.search_behavior_events(filter, window).row_count > 0;
    }

    const bool validated = violations.empty() && evidence_found;
    std::string recommendation;
    std::string validation_reasoning;
    if (validated && context.trace.risk_score > context.policy.risk_threshold) {
        recommendation = "ESCALATE_TO_TIER_TWO";
        validation_reasoning = "Evidence validated; ticket risk score " +
                               std::to_string(context.trace.risk_score) +
                               " exceeds the escalation threshold.";
    } else if (!validated && violations.empty()) {
        recommendation = "REQUIRES_ADDITIONAL_INFO";
        validation_reasoning =
            "No direct rule evidence and no supporting telemetry in the review window.";
    } else if (!validated) {
        recommendation = "CLOSE_TICKET";
        validation_reasoning =
            "Trace failed validation: " + violations.front().field + " " +
            violations.front().reason + ".";
    } else {
        recommendation = "CLOSE_TICKET";
        validation_reasoning = "Evidence validated; ticket risk score " +
                               std::to_string(context.trace.risk_score) +
                               " is within tolerance.";
    }

    report.report_fields["validation"] = validated;
    report.report_fields["validation_reasoning"] = validation_reasoning;
    report.report_fields["recommendation"] = recommendation;
    report.actionable = recommendation == "ESCALATE_TO_TIER_TWO";
    report.reasoning = "Generic review: " + recommendation + ".";
    report.summary = "Unmatched alert for " + context.trace.entity + " reviewed generically.";
    return report;
}

WorkflowReport run_multiple_isp(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::MultipleISP;

    struct Login {
        std::int64_t timestamp;
        GeoPoint location;
        std::string place;
    };

    std::vector<Login> logins;
    std::vector<std::string> isps;
    std::size_t row_count = 0;
    if (context.trace.entity.empty()) {
        report.data_error = true;
    } else {
        const auto result = context.tools.run_structured_query(
            QueryKind::GetRecentLoginActivity, context.trace.account, context.trace.tenant,
            context.trace.entity, context.trace.time_iso);
        row_count = result.row_count;
        for (const auto& row : result.rows) {
            if (const auto ip = row.attributes.get(AttrKind::ClientIp)) {
                report.observables.push_back(
                    {ObservableKind::Ip, std::string(*ip), "MultipleISP:GetRecentLoginActivity"});
            }
            if (const auto isp = row.attributes.get(AttrKind::Isp)) {
                if (std::find(isps.begin(), isps.end(), std::string(*isp)) == isps.end()) {
                    isps.emplace_back(*isp);
                }
            }
            const auto latitude = attr_as_double(row.attributes, "latitude");
            const auto longitude = attr_as_double(row.attributes, "longitude");
            const bool has_geo_attrs =
                row.attributes.contains(AttributeKey::unknown("latitude")) ||
                row.attributes.contains(AttributeKey::unknown("longitude"));
            if (has_geo_attrs && !(latitude && longitude)) {
                report.data_error = true;  // corrupt telemetry coordinates
            }
            const auto city = row.attributes.get(AttrKind::City);
            if (latitude && longitude) {
                logins.push_back({row.timestamp, {*latitude, *longitude},
                                  city ? std::string(*city) : "unnamed location"});
            } else if (city) {
                if (const auto point = lookup_city(*city)) {
                    logins.push_back({row.timestamp, *point, std::string(*city)});
                }
            }
        }
    }

    bool impossible = false;
    std::string travel_reasoning;
    if (row_count < 2) {
        report.premise_contradicted = true;
        travel_reasoning = "Insufficient login history: fewer than two logins in the window.";
    } else {
        for (std::size_t i = 0; i < logins.size() && !impossible; ++i) {
            for (std::size_t j = i + 1; j < logins.size(); ++j) {
                const double miles = haversine_miles(logins[i].location, logins[j].location);
                const double hours =
                    static_cast<double>(std::llabs(logins[j].timestamp - logins[i].timestamp)) /
                    3600.0;
                if (miles > context.policy.impossible_distance_miles &&
                    miles > context.policy.impossible_speed_mph * hours) {
                    impossible = true;
                    std::ostringstream text;
                    text << "Logins from " << logins[i].place << " and " << logins[j].place
                         << " are " << std::llround(miles) << " miles apart within "
                         << std::llround(hours * 60.0) << " minutes; no physical travel explains both.";
                    travel_reasoning = text.str();
                    break;
                }
            }
        }
        if (!impossible) {
            travel_reasoning = "No login pair exceeded the distance and speed thresholds across " +
                               std::to_string(row_count) + " logins.";
        }
        if (isps.size() >= 2) {
            travel_reasoning += " Distinct ISPs observed: " + join(isps, ", ") + ".";
        }
    }

    report.report_fields["impossible_travel"] = impossible;
    report.report_fields["impossible_travel_reasoning"] = travel_reasoning;
    report.actionable = impossible;
    report.reasoning = impossible ? "Impossible travel confirmed between recent logins."
                                  : "Login geography is consistent with feasible travel. " +
                                        travel_reasoning;
    report.summary = "Login origin review for " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_o365_guest(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::O365Guest;

    std::string record_state = "Unknown";
    std::string admin_state = "Unknown";
    std::string admin_reasoning = "No directory record for the guest; admin status unknown.";
    if (context.trace.entity.empty()) {
        report.data_error = true;
        admin_reasoning = "Trace carries no guest entity.";
    } else {
        const auto record = context.tools.get_user_record(
            context.trace.entity, context.trace.account, context.trace.tenant);
        if (record) {
            record_state = "Found";
            if (has_admin_role(*record, context.policy)) {
                admin_state = "Admin";
                admin_reasoning = "Guest roles include " +
                                  first_admin_role(*record, context.policy) +
                                  " in the retrieved record.";
            } else {
                admin_state = "User";
                admin_reasoning = "Guest record carries no admin-equivalent role.";
            }
        }
    }

    report.report_fields["guest_user_record"] = record_state;
    report.report_fields["guest_user_admin"] = admin_state;
    report.report_fields["reasoning_guest_user_admin"] = admin_reasoning;
    report.actionable = admin_state == "Admin";
    report.reasoning = report.actionable
                           ? "Guest account holds administrator privileges; escalating."
                           : "Guest activity by a non-privileged account.";
    report.summary = "Guest account review for " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_o365_login(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::O365Login;

    std::int64_t rule_risk = 0;
    bool rule_found = false;
    for (const auto& rule : context.trace.rules) {
        if (rule_matches_any(rule, context.routing.o365_login_patterns)) {
            rule_risk = rule.risk_score;
            rule_found = true;
            break;
        }
    }
    if (!rule_found) report.data_error = true;
    if (rule_found && rule_risk == 0) report.premise_contradicted = true;

    std::size_t count = 0;
    std::string first_row;
    if (!context.trace.entity.empty()) {
        const auto result = context.tools.run_structured_query(
            QueryKind::GetRecentHighRiskActivity, context.trace.account, context.trace.tenant,
            context.trace.entity, context.trace.time_iso);
        count = result.row_count;
        if (!result.rows.empty()) first_row = row_to_json(result.rows.front()).dump();
    } else {
        report.data_error = true;
    }

    report.report_fields["user_email"] = context.trace.entity;
    report.report_fields["recent_activity_riskScore_greater_than_2000_count"] = count;
    report.report_fields["high_risk_activity_raw_json_row"] = first_row;
    report.actionable =
        rule_risk > context.policy.risk_threshold && count > 0;
    if (report.actionable) {
        report.reasoning = "Login rule risk " + std::to_string(rule_risk) + " with " +
                           std::to_string(count) + " recent high-risk activities; escalating.";
    } else if (rule_risk > context.policy.risk_threshold) {
        report.reasoning = "Login rule risk " + std::to_string(rule_risk) +
                           " but no recent high-risk activity corroborates it.";
    } else {
        report.reasoning = "Login rule risk " + std::to_string(rule_risk) +
                           " is within tolerance.";
    }
    report.summary = "O365 login review for " + context.trace.entity + ".";
    return report;
}

ShellVerdict classify_powershell(std::string_view cmdline, double density_threshold) {
    ShellVerdict verdict;
    const std::string lowered = to_lower(cmdline);

    std::vector<std::string> tokens;
    {
        std::istringstream stream(lowered);
        std::string token;
        while (stream >> token) tokens.push_back(token);
    }
    const auto has_token = [&](std::string_view wanted) {
        return std::find(tokens.begin(), tokens.end(), std::string(wanted)) != tokens.end();
    };
    const auto contains = [&](std::string_view needle) {
        return lowered.find(needle) != std::string::npos;
    };

    if (has_token("-encodedcommand") || has_token("-enc")) {
        verdict.indicators.emplace_back("encoded-execution");
    }
    const bool downloads = contains("downloadstring") || contains("downloadfile") ||
                           contains("invoke-webrequest") || contains("net.webclient") ||
                           contains("bitstransfer") || contains("wget ") || contains("curl ");
    const bool executes =
        has_token("iex") || contains("invoke-expression") || contains("start-process");
    if (downloads && executes) {
        verdict.indicators.emplace_back("download-cradle");
    }
    const bool run_key = contains("currentversion\\run") ||
                         (contains("new-itemproperty") && contains("\\run"));
    if (run_key || (contains("schtasks") && contains("/create"))) {
        verdict.indicators.emplace_back("persistence");
    }
    if ((contains("executionpolicy") && contains("bypass")) || contains("-ep bypass") ||
        contains("-exec bypass")) {
        verdict.indicators.emplace_back("policy-bypass");
    }
    if (contains("-windowstyle hidden") || contains("-w hidden")) {
        verdict.indicators.emplace_back("hidden-window");
    }
    {
        std::size_t longest_run = 0;
        std::size_t current_run = 0;
        std::size_t non_space = 0;
        for (const char c : cmdline) {
            const bool base64_char = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                                     (c >= '0' && c <= '9') || c == '+' || c == '/' || c == '=';
            if (!std::isspace(static_cast<unsigned char>(c))) ++non_space;
            current_run = base64_char ? current_run + 1 : 0;
            longest_run = std::max(longest_run, current_run);
        }
        if (longest_run >= 16 && non_space > 0 &&
            static_cast<double>(longest_run) >= density_threshold * static_cast<double>(non_space)) {
            verdict.indicators.emplace_back("base64-density");
        }
    }

    verdict.malicious = verdict.indicators.size() >= 2;
    return verdict;
}

WorkflowReport run_powershell(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::PowerShell;

    bool malicious = false;
    std::vector<std::string> indicators;
    for (const auto& rule : context.trace.rules) {
        const auto cmdline = rule.attributes.get(AttrKind::CmdLine);
        if (!cmdline) continue;
        const auto verdict =
            classify_powershell(*cmdline, context.policy.base64_density_threshold);
        if (verdict.malicious) malicious = true;
        for (const auto& indicator : verdict.indicators) {
            if (std::find(indicators.begin(), indicators.end(), indicator) == indicators.end()) {
                indicators.push_back(indicator);
            }
        }
    }

    bool disinfected = false;
    for (const auto& rule : context.trace.rules) {
        for (const auto name : {"Remediation", "status", "actionTaken"}) {
            const auto value = rule.attributes.get(AttributeKey::parse(name));
            if (value && contains_ci(*value, "disinfect")) {
                disinfected = true;
                break;
            }
        }
    }

    bool admin = false;
    std::string admin_note = "No user context on the event; treated as non-admin.";
    for (const auto& rule : context.trace.rules) {
        const auto username = rule.attributes.get(AttrKind::Username);
        if (!username) continue;
        if (username->empty()) {
            report.data_error = true;  // user context present but blank
            continue;
        }
        const auto record = context.tools.get_user_record(*username, context.trace.account,
                                                          context.trace.tenant);
        if (record && has_admin_role(*record, context.policy)) {
            admin = true;
            admin_note = "User " + std::string(*username) + " holds " +
                         first_admin_role(*record, context.policy) + ".";
        } else if (record) {
            admin_note = "User " + std::string(*username) + " has no admin-equivalent role.";
        } else {
            admin_note = "No directory record for " + std::string(*username) +
                         "; treated as non-admin.";
        }
        break;
    }

    report.report_fields["powerShell_Malicious"] = malicious;
    report.report_fields["reasoning"] =
        malicious ? "Indicators: " + join(indicators, ", ") + "."
                  : (indicators.empty() ? "No malicious indicators in the command line."
                                        : "Single indicator (" + join(indicators, ", ") +
                                              ") below the malicious threshold.");
    report.report_fields["dis_Infect_Detection"] = disinfected ? "Disinfect" : "Non-Disinfect";
    report.report_fields["reasoning_Dis_Infect"] =
        disinfected ? "Event fields record a completed disinfection."
                    : "No disinfection recorded on the event.";
    report.actionable = malicious && admin;
    if (report.actionable) {
        report.reasoning = "Malicious script activity under an administrator account. " +
                           admin_note;
    } else if (malicious) {
        report.reasoning = "Malicious script indicators without admin privileges. " + admin_note;
    } else {
        report.reasoning = "Command line shows no malicious indicator combination.";
    }
    report.summary = "Script execution review on " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_salesforce(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::SalesforceAbnormalLogin;

    std::size_t count = 0;
    if (context.trace.entity.empty()) {
        report.data_error = true;
    } else {
        const auto result = context.tools.run_structured_query(
            QueryKind::GetRecentRuleActivity, context.trace.account, context.trace.tenant,
            context.trace.entity, context.trace.time_iso, context.routing.salesforce_rule);
        count = result.row_count;
    }

    report.report_fields["user_email"] = context.trace.entity;
    report.report_fields["recent_rule_count"] = count;
    report.actionable = static_cast<std::int64_t>(count) >= context.policy.salesforce_min_count;
    report.reasoning = report.actionable
                           ? std::to_string(count) +
                                 " abnormal Salesforce logins in the lookback; pattern escalates."
                           : "Only " + std::to_string(count) +
                                 " abnormal Salesforce logins in the lookback; below threshold.";
    report.summary = "Salesforce login pattern review for " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_sharepoint(const WorkflowContext& context) {
    WorkflowReport report;
    report.workflow = WorkflowId::SharePointFile;

    std::int64_t risk = 0;
    bool rule_found = false;
    for (const auto& rule : context.trace.rules) {
        if (rule_matches_any(rule, context.routing.sharepoint_patterns)) {
            risk = rule.risk_score;
            rule_found = true;
            break;
        }
    }
    if (!rule_found) report.data_error = true;
    if (rule_found && risk == 0) report.premise_contradicted = true;

    report.report_fields["sharepoint_risk_score"] = risk;
    report.actionable = risk > context.policy.risk_threshold;
    report.reasoning = report.actionable
                           ? "SharePoint file rule risk " + std::to_string(risk) +
                                 " exceeds the escalation threshold."
                           : "SharePoint file rule risk " + std::to_string(risk) +
                                 " is within tolerance.";
    report.summary = "SharePoint file access review for " + context.trace.entity + ".";
    return report;
}

WorkflowReport run_workflow(WorkflowId id, const WorkflowContext& context) {
    switch (id) {
        case WorkflowId::AddUser: return run_add_user(context);
        case WorkflowId::AuthChange: return run_auth_change(context);
        case WorkflowId::Coro: return run_coro(context);
        case WorkflowId::MultipleISP: return run_multiple_isp(context);
        case WorkflowId::O365Guest: return run_o365_guest(context);
        case WorkflowId::O365Login: return run_o365_login(context);
        case WorkflowId::PowerShell: return run_powershell(context);
        case WorkflowId::SalesforceAbnormalLogin: return run_salesforce(context);
        case WorkflowId::SharePointFile: return run_sharepoint(context);
        case WorkflowId::Generic: return run_generic(context);
    }
    return run_generic(context);
}

}  // namespace triage
