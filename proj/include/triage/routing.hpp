#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triage/alert.hpp"
#include "triage/config.hpp"

namespace triage {

enum class WorkflowId {
    AddUser,
    AuthChange,
    Coro,
    MultipleISP,
    O365Guest,
    O365Login,
    PowerShell,
    SalesforceAbnormalLogin,
    SharePointFile,
    Generic,
};

inline constexpr std::size_t kWorkflowCount = 10;

// All ids in declaration order; Generic last (it is the fallback).
const std::vector<WorkflowId>& all_workflows();

std::string_view workflow_name(WorkflowId id);
std::optional<WorkflowId> parse_workflow_id(std::string_view name);

// case-insensitive string helpers, shared with the workflow executors
std::string to_lower(std::string_view text);
bool equals_ci(std::string_view a, std::string_view b);
bool contains_ci(std::string_view haystack, std::string_view needle);
bool starts_with_ci(std::string_view haystack, std::string_view prefix);

bool is_guest_entity(std::string_view entity, const RoutingConfig& config);
bool cmdline_invokes_shell(std::string_view cmdline, const RoutingConfig& config);

// Behavior-analysis stage: predicate list evaluated in workflow order with
// Generic as the guaranteed fallback, so the result is never empty and
// Generic appears only alone.
class RoutingTable {
public:
    RoutingTable() = default;
    explicit RoutingTable(RoutingConfig config) : config_(std::move(config)) {}

    std::vector<WorkflowId> route(const AlertTrace& trace) const;

    const RoutingConfig& config() const { return config_; }

private:
    RoutingConfig config_;
};

}  // namespace triage
