#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "triage/alert.hpp"
#include "triage/audit.hpp"
#include "triage/config.hpp"
#include "triage/corpus.hpp"
#include "triage/fixtures.hpp"
#include "triage/report.hpp"

namespace triage {

struct Session {
    std::string session_id;
    std::string alert_id;
    std::chrono::steady_clock::time_point started;
    std::shared_ptr<AuditTrail> audit;
    Stage stage = Stage::Orchestrate;
};

struct TriageMetrics {
    std::size_t tool_calls = 0;
    std::chrono::nanoseconds wall_time{0};
    std::vector<WorkflowId> workflows_run;
};

struct TriageOutcome {
    TriageReport report;
    std::string rendered_report;
    std::shared_ptr<const AuditTrail> audit;
    TriageMetrics metrics;
};

struct OrchestratorConfig {
    PolicyConfig policy;
    RoutingConfig routing;
    bool write_back = false;
};

// Full four-stage run for one alert inside a fresh ephemeral session.
// Deterministic for fixed (trace, fixtures, config); all data problems
// degrade to subclassified verdicts rather than errors. Pass a registry
// to keep the session's audit trail addressable afterwards.
TriageOutcome triage(const AlertTrace& trace, const FixtureBundle& fixtures,
                     const OrchestratorConfig& config, AuditRegistry* registry = nullptr);

// Outcomes in corpus order regardless of scheduling; per-alert isolation
// means parallelism never changes a report.
std::vector<TriageOutcome> triage_batch(const LabeledCorpus& corpus,
                                        const OrchestratorConfig& config,
                                        std::size_t parallelism = 1);

}  // namespace triage
