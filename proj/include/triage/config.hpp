#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace triage {

// Decision thresholds and tool-fabric windows. Defaults are the calibrated
// values the workflows ship with; load_policy_config overrides individual
// knobs from a JSON file.
struct PolicyConfig {
    std::vector<std::string> admin_roles = {"GlobalAdmin", "PrivilegedRoleAdmin", "UserAdmin",
                                            "Admin"};
    std::int64_t new_user_days = 30;

    double impossible_distance_miles = 500.0;
    double impossible_speed_mph = 600.0;

    std::int64_t risk_threshold = 1000;  // strict ">" for O365 login, SharePoint, Generic
    std::int64_t salesforce_min_count = 3;

    std::int64_t high_risk_score_threshold = 2000;
    std::int64_t login_lookback_hours = 8;
    std::int64_t high_risk_lookback_days = 7;
    std::int64_t rule_lookback_days = 7;

    double base64_density_threshold = 0.6;
};

// Rule-name patterns driving the behavior-analysis router. Matching is
// case-insensitive; semantics per workflow are fixed (substring, prefix,
// exact) and only the names are configurable.
struct RoutingConfig {
    std::vector<std::string> add_user_patterns = {"User_Added", "User_Updated",
                                                  "Add_Member_To_Group"};
    std::vector<std::string> auth_change_patterns = {"Add_Authentication_Method",
                                                     "Remove_Authentication_Method"};
    std::string auth_removal_pattern = "Remove_Authentication_Method";
    std::string coro_prefix = "Coro_";
    std::string multiple_isp_rule = "Multiple_ISPs";
    std::string guest_marker = "#ext#@";
    std::string guest_suffix = ".onmicrosoft.com";
    std::vector<std::string> o365_login_patterns = {"O365_Login"};
    std::vector<std::string> shell_indicators = {"powershell", "pwsh", "cmd.exe", "/bin/sh",
                                                 "/bin/bash"};
    std::string salesforce_rule = "Fluency_Salesforce_Login_Status_Abnormal";
    std::vector<std::string> sharepoint_patterns = {"SharePoint_File"};
};

PolicyConfig load_policy_config(const std::filesystem::path& path);
RoutingConfig load_routing_config(const std::filesystem::path& path);

}  // namespace triage
