#pragma once

#include <string_view>
#include <vector>

#include "triage/alert.hpp"
#include "triage/config.hpp"
#include "triage/report.hpp"
#include "triage/routing.hpp"
#include "triage/tools.hpp"

namespace triage {

struct WorkflowContext {
    const AlertTrace& trace;
    ToolSession& tools;
    const PolicyConfig& policy;
    const RoutingConfig& routing;
};

struct ShellVerdict {
    bool malicious = false;
    std::vector<std::string> indicators;
};

// Deterministic command-line rubric: encoded execution, download cradle,
// run-key persistence, execution-policy bypass, hidden window, dense
// base64 payload. Two or more indicators mark the command malicious.
ShellVerdict classify_powershell(std::string_view cmdline, double density_threshold = 0.6);

WorkflowReport run_workflow(WorkflowId id, const WorkflowContext& context);

WorkflowReport run_add_user(const WorkflowContext& context);
WorkflowReport run_auth_change(const WorkflowContext& context);
WorkflowReport run_coro(const WorkflowContext& context);
WorkflowReport run_generic(const WorkflowContext& context);
WorkflowReport run_multiple_isp(const WorkflowContext& context);
WorkflowReport run_o365_guest(const WorkflowContext& context);
WorkflowReport run_o365_login(const WorkflowContext& context);
WorkflowReport run_powershell(const WorkflowContext& context);
WorkflowReport run_salesforce(const WorkflowContext& context);
WorkflowReport run_sharepoint(const WorkflowContext& context);

}  // namespace triage
