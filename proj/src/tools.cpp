#include "triage/tools.hpp"

#include <algorithm>
#include <charconv>

#include "triage/errors.hpp"
#include "triage/time_util.hpp"

namespace triage {

namespace {

AttributeKey arg_key(std::string_view name) {
    return AttributeKey::unknown(std::string(name));
}

std::optional<std::int64_t> attr_as_int(const AttributeMap& attributes, std::string_view name) {
    const auto value = attributes.get(arg_key(name));
    if (!value) return std::nullopt;
    std::int64_t parsed = 0;
    const char* first = value->data();
    const char* last = first + value->size();
    const auto [ptr, ec] = std::from_chars(first, last, parsed);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return parsed;
}

}  // namespace

ToolSession::ToolSession(std::string session_id, const FixtureBundle& fixtures,
                         const PolicyConfig& policy, std::shared_ptr<AuditTrail> audit)
    : session_id_(std::move(session_id)), fixtures_(fixtures), policy_(policy),
      audit_(std::move(audit)) {}

std::optional<UserRecord> ToolSession::get_user_record(std::string_view email,
                                                       std::string_view account,
                                                       std::string_view tenant) {
    AttributeMap arguments;
    arguments.set(arg_key("email"), std::string(email));
    arguments.set(arg_key("account"), std::string(account));
    arguments.set(arg_key("tenant"), std::string(tenant));
    if (email.empty()) {
        audit_->record_tool_call("getUserRecord", std::move(arguments), false, "empty email");
        throw ToolError(ToolError::Code::ArgumentSchemaViolation, "getUserRecord: empty email");
    }
    auto it = fixtures_.users.find(std::string(email));
    if (it == fixtures_.users.end()) {
        audit_->record_tool_call("getUserRecord", std::move(arguments), true, "absent");
        return std::nullopt;
    }
    audit_->record_tool_call("getUserRecord", std::move(arguments), true,
                             "found roles=" + std::to_string(it->second.roles.size()));
    return it->second;
}

std::optional<AssetRecord> ToolSession::get_asset_record(std::string_view hostname,
                                                         std::string_view account,
                                                         std::string_view tenant) {
    AttributeMap arguments;
    arguments.set(arg_key("hostname"), std::string(hostname));
    arguments.set(arg_key("account"), std::string(account));
    arguments.set(arg_key("tenant"), std::string(tenant));
    if (hostname.empty()) {
        audit_->record_tool_call("getAssetRecord", std::move(arguments), false, "empty hostname");
        throw ToolError(ToolError::Code::ArgumentSchemaViolation, "getAssetRecord: empty hostname");
    }
    auto it = fixtures_.assets.find(std::string(hostname));
    if (it == fixtures_.assets.end()) {
        audit_->record_tool_call("getAssetRecord", std::move(arguments), true, "absent");
        return std::nullopt;
    }
    audit_->record_tool_call("getAssetRecord", std::move(arguments), true, "found");
    return it->second;
}

QueryResult ToolSession::scan_events(const AttributeMap& filter, TimeWindow window) const {
    QueryResult result;
    for (const auto& event : fixtures_.events) {
        if (event.timestamp < window.start || event.timestamp > window.end) continue;
        bool matched = true;
        for (const auto& [key, value] : filter) {
            const auto actual = event.attributes.get(key);
            if (!actual || *actual != value) {
                matched = false;
                break;
            }
        }
        if (matched) result.rows.push_back(event);
    }
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const FixtureRow& a, const FixtureRow& b) {
                         return a.timestamp < b.timestamp;
                     });
    result.row_count = result.rows.size();
    return result;
}

QueryResult ToolSession::search_behavior_events(const AttributeMap& filter, TimeWindow window) {
    AttributeMap arguments = filter;
    arguments.set(arg_key("window_start"), std::to_string(window.start));
    arguments.set(arg_key("window_end"), std::to_string(window.end));
    if (window.start > window.end) {
        audit_->record_tool_call("searchBehaviorEvents", std::move(arguments), false,
                                 "inverted window");
        throw ToolError(ToolError::Code::InvalidWindow, "searchBehaviorEvents: inverted window");
    }
    auto result = scan_events(filter, window);
    audit_->record_tool_call("searchBehaviorEvents", std::move(arguments), true,
                             "rows=" + std::to_string(result.row_count));
    return result;
}

QueryResult ToolSession::search_behavior_summaries(const AttributeKey& group_by,
                                                   const AttributeMap& filter, TimeWindow window) {
    AttributeMap arguments = filter;
    arguments.set(arg_key("group_by"), group_by.name());
    arguments.set(arg_key("window_start"), std::to_string(window.start));
    arguments.set(arg_key("window_end"), std::to_string(window.end));
    if (window.start > window.end) {
        audit_->record_tool_call("searchBehaviorSummaries", std::move(arguments), false,
                                 "inverted window");
        throw ToolError(ToolError::Code::InvalidWindow,
                        "searchBehaviorSummaries: inverted window");
    }
    const auto events = scan_events(filter, window);
    std::vector<std::pair<std::string, std::size_t>> groups;  // first-occurrence order
    for (const auto& row : events.rows) {
        const auto value = row.attributes.get(group_by);
        if (!value) continue;
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& group) { return group.first == *value; });
        if (it == groups.end()) {
            groups.emplace_back(std::string(*value), 1);
        } else {
            ++it->second;
        }
    }
    QueryResult result;
    for (const auto& [value, count] : groups) {
        FixtureRow row;
        row.attributes.set(group_by, value);
        row.attributes.set(arg_key("count"), std::to_string(count));
        result.rows.push_back(std::move(row));
    }
    result.row_count = result.rows.size();
    audit_->record_tool_call("searchBehaviorSummaries", std::move(arguments), true,
                             "groups=" + std::to_string(result.row_count));
    return result;
}

QueryResult ToolSession::run_structured_query(QueryKind kind, std::string_view account,
                                              std::string_view tenant, std::string_view key,
                                              std::string_view as_of, std::string_view rule) {
    AttributeMap arguments;
    arguments.set(arg_key("kind"), std::string(query_kind_name(kind)));
    arguments.set(arg_key("account"), std::string(account));
    arguments.set(arg_key("tenant"), std::string(tenant));
    arguments.set(arg_key("key"), std::string(key));
    arguments.set(arg_key("as_of"), std::string(as_of));
    if (!rule.empty()) arguments.set(arg_key("rule"), std::string(rule));

    if (key.empty()) {
        audit_->record_tool_call("runStructuredQuery", std::move(arguments), false, "empty key");
        throw ToolError(ToolError::Code::ArgumentSchemaViolation, "runStructuredQuery: empty key");
    }
    const auto as_of_epoch = parse_iso8601_utc(as_of);
    if (!as_of_epoch) {
        audit_->record_tool_call("runStructuredQuery", std::move(arguments), false,
                                 "unparseable as_of");
        throw ToolError(ToolError::Code::ArgumentSchemaViolation,
                        "runStructuredQuery: unparseable as_of");
    }

    std::int64_t lookback_seconds = 0;
    switch (kind) {
        case QueryKind::GetRecentLoginActivity:
            lookback_seconds = policy_.login_lookback_hours * 3600;
            break;
        case QueryKind::GetRecentHighRiskActivity:
            lookback_seconds = policy_.high_risk_lookback_days * 86400;
            break;
        case QueryKind::GetRecentRuleActivity:
            lookback_seconds = policy_.rule_lookback_days * 86400;
            break;
    }
    const TimeWindow window{*as_of_epoch - lookback_seconds, *as_of_epoch};

    QueryResult result;
    auto it = fixtures_.query_tables.find({kind, std::string(key)});
    if (it != fixtures_.query_tables.end()) {
        for (const auto& row : it->second) {
            if (row.timestamp < window.start || row.timestamp > window.end) continue;
            if (kind == QueryKind::GetRecentHighRiskActivity) {
                const auto score = attr_as_int(row.attributes, "riskScore");
                if (!score || *score <= policy_.high_risk_score_threshold) continue;
            }
            if (kind == QueryKind::GetRecentRuleActivity && !rule.empty()) {
                const auto row_rule = row.attributes.get(arg_key("behaviorRule"));
                if (!row_rule || *row_rule != rule) continue;
            }
            result.rows.push_back(row);
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const FixtureRow& a, const FixtureRow& b) {
                         return a.timestamp < b.timestamp;
                     });
    result.row_count = result.rows.size();
    audit_->record_tool_call("runStructuredQuery", std::move(arguments), true,
                             "rows=" + std::to_string(result.row_count));
    return result;
}

std::string ToolSession::update_incident_record(std::string_view id, std::string_view status,
                                                std::string_view report) {
    AttributeMap arguments;
    arguments.set(arg_key("id"), std::string(id));
    arguments.set(arg_key("status"), std::string(status));
    arguments.set(arg_key("report_bytes"), std::to_string(report.size()));
    {
        std::lock_guard lock(incident_mutex_);
        incident_overlay_[std::string(id)] = std::string(status);
    }
    audit_->record_tool_call("updateIncidentRecord", std::move(arguments), true,
                             "status=" + std::string(status));
    return std::string(status);
}

std::optional<std::string> ToolSession::incident_status(std::string_view id) const {
    {
        std::lock_guard lock(incident_mutex_);
        if (auto it = incident_overlay_.find(id); it != incident_overlay_.end()) {
            return it->second;
        }
    }
    if (auto it = fixtures_.incident_states.find(std::string(id));
        it != fixtures_.incident_states.end()) {
        return it->second;
    }
    return std::nullopt;
}

}  // namespace triage
