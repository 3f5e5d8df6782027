#include "triage/config.hpp"

#include <fstream>

#include <json.hpp>

#include "triage/errors.hpp"

namespace triage {

namespace {

using json = nlohmann::json;

json read_json_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError(path.string(), "cannot open config file: " + path.string());
    }
    try {
        return json::parse(stream);
    } catch (const json::exception& error) {
        throw ParseError(ParseError::Code::MalformedDocument, "",
                         path.string() + ": " + error.what());
    }
}

template <typename T>
void read_into(const json& object, const char* field, T& destination) {
    if (auto it = object.find(field); it != object.end()) {
        destination = it->get<T>();
    }
}

}  // namespace

PolicyConfig load_policy_config(const std::filesystem::path& path) {
    const json object = read_json_file(path);
    PolicyConfig config;
    read_into(object, "admin_roles", config.admin_roles);
    read_into(object, "new_user_days", config.new_user_days);
    read_into(object, "impossible_distance_miles", config.impossible_distance_miles);
    read_into(object, "impossible_speed_mph", config.impossible_speed_mph);
    read_into(object, "risk_threshold", config.risk_threshold);
    read_into(object, "salesforce_min_count", config.salesforce_min_count);
    read_into(object, "high_risk_score_threshold", config.high_risk_score_threshold);
    read_into(object, "login_lookback_hours", config.login_lookback_hours);
    read_into(object, "high_risk_lookback_days", config.high_risk_lookback_days);
    read_into(object, "rule_lookback_days", config.rule_lookback_days);
    read_into(object, "base64_density_threshold", config.base64_density_threshold);
    return config;
}

RoutingConfig load_routing_config(const std::filesystem::path& path) {
    const json object = read_json_file(path);
    RoutingConfig config;
    read_into(object, "add_user_patterns", config.add_user_patterns);
    read_into(object, "auth_change_patterns", config.auth_change_patterns);
    read_into(object, "auth_removal_pattern", config.auth_removal_pattern);
    read_into(object, "coro_prefix", config.coro_prefix);
    read_into(object, "multiple_isp_rule", config.multiple_isp_rule);
    read_into(object, "guest_marker", config.guest_marker);
    read_into(object, "guest_suffix", config.guest_suffix);
    read_into(object, "o365_login_patterns", config.o365_login_patterns);
    read_into(object, "shell_indicators", config.shell_indicators);
    read_into(object, "salesforce_rule", config.salesforce_rule);
    read_into(object, "sharepoint_patterns", config.sharepoint_patterns);
    return config;
}

}  // namespace triage
