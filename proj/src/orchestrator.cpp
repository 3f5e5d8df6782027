#include "triage/orchestrator.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "triage/errors.hpp"
#include "triage/synthesis.hpp"
#include "triage/tools.hpp"
#include "triage/workflows.hpp"

namespace triage {

namespace {

// Schema fidelity is a consistency check on the engine itself, so a
// mismatch is a logic error, not a degradable data problem.
void check_schema_fidelity(const WorkflowReport& report) {
    const auto& expected = workflow_schema_keys(report.workflow);
    const auto& fields = report.report_fields;
    if (fields.size() != expected.size()) {
        throw std::logic_error(std::string("schema mismatch for ") +
                               std::string(workflow_name(report.workflow)));
    }
    std::size_t position = 0;
    for (const auto& [key, value] : fields.items()) {
        if (key != expected[position++]) {
            throw std::logic_error(std::string("schema key order mismatch for ") +
                                   std::string(workflow_name(report.workflow)) + ": " + key);
        }
    }
}

}  // namespace

TriageOutcome triage(const AlertTrace& trace, const FixtureBundle& fixtures,
                     const OrchestratorConfig& config, AuditRegistry* registry) {
    Session session;
    session.session_id = "session-" + trace.id;
    session.alert_id = trace.id;
    session.started = std::chrono::steady_clock::now();
    session.audit = registry ? registry->create(session.session_id)
                             : std::make_shared<AuditTrail>(session.session_id);

    session.stage = Stage::Orchestrate;
    session.audit->record_stage(Stage::Orchestrate);
    const auto violations = validate_trace(trace);

    session.stage = Stage::Classify;
    session.audit->record_stage(Stage::Classify);
    const RoutingTable router(config.routing);
    const auto routed = router.route(trace);

    session.stage = Stage::Analyze;
    session.audit->record_stage(Stage::Analyze);
    ToolSession tools(session.session_id, fixtures, config.policy, session.audit);
    WorkflowContext context{trace, tools, config.policy, config.routing};
    std::vector<WorkflowReport> reports;
    reports.reserve(routed.size());
    for (const auto id : routed) {
        auto report = run_workflow(id, context);
        check_schema_fidelity(report);
        reports.push_back(std::move(report));
    }

    session.stage = Stage::Synthesize;
    session.audit->record_stage(Stage::Synthesize);
    TriageOutcome outcome;
    outcome.report = synthesize(trace, reports, violations);
    outcome.rendered_report = render_report(outcome.report);
    if (config.write_back) {
        tools.update_incident_record(trace.id,
                                     outcome.report.actionable() ? "escalated" : "closed",
                                     outcome.rendered_report);
    }

    session.stage = Stage::Done;
    session.audit->record_stage(Stage::Done);

    outcome.audit = session.audit;
    outcome.metrics.tool_calls = session.audit->tool_call_count();
    outcome.metrics.wall_time = std::chrono::steady_clock::now() - session.started;
    outcome.metrics.workflows_run = routed;
    return outcome;
}

std::vector<TriageOutcome> triage_batch(const LabeledCorpus& corpus,
                                        const OrchestratorConfig& config,
                                        std::size_t parallelism) {
    if (parallelism < 1) parallelism = 1;
    std::vector<TriageOutcome> outcomes(corpus.entries.size());
    if (corpus.entries.empty()) return outcomes;

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= corpus.entries.size()) return;
            const auto& entry = corpus.entries[index];
            try {
                outcomes[index] = triage(entry.trace, entry.fixtures, config);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const std::size_t thread_count = std::min(parallelism, corpus.entries.size());
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (std::size_t i = 0; i < thread_count; ++i) threads.emplace_back(worker);
        for (auto& thread : threads) thread.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return outcomes;
}

}  // namespace triage
