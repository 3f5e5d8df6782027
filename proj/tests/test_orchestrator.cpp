#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "triage/errors.hpp"
#include "triage/orchestrator.hpp"
#include "triage/synthesis.hpp"

using namespace triage;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

AlertTrace golden_trace(const std::string& name) {
    return parse_alert(slurp(std::string(GOLDEN_DIR) + "/" + name + "/trace.json"));
}

FixtureBundle golden_fixtures(const std::string& name) {
    const auto text = slurp(std::string(GOLDEN_DIR) + "/" + name + "/fixtures.json");
    return parse_fixture_bundle(nlohmann::ordered_json::parse(text));
}

}  // namespace

TEST_CASE("golden add-user case end to end") {
    const auto trace = golden_trace("case1");
    const auto fixtures = golden_fixtures("case1");
    AuditRegistry registry;
    const auto outcome = triage::triage(trace, fixtures, {}, &registry);

    CHECK(outcome.report.actionable());
    REQUIRE(outcome.report.workflow_reports.size() == 1);
    const auto& fields = outcome.report.workflow_reports[0].report_fields;
    CHECK(fields["target_user_record"] == "Found");
    CHECK(fields["target_user_admin"] == "Admin");
    CHECK(fields["reasoning_target_user_admin"] ==
          "Target user roles include GlobalAdmin in the retrieved user record.");
    CHECK_FALSE(outcome.report.followups.empty());

    // one directory lookup, addressable through the registry afterwards
    const auto log = registry.audit_log("session-" + trace.id);
    REQUIRE(log.size() == 1);
    CHECK(log[0].tool == "getUserRecord");
    CHECK(log[0].success);
    CHECK(outcome.metrics.tool_calls == 1);
}

TEST_CASE("stage sequence is recorded in order") {
    const auto trace = golden_trace("case2");
    const auto fixtures = golden_fixtures("case2");
    const auto outcome = triage::triage(trace, fixtures, {});

    const auto stages = outcome.audit->stage_sequence();
    const std::vector<Stage> expected{Stage::Orchestrate, Stage::Classify, Stage::Analyze,
                                      Stage::Synthesize, Stage::Done};
    CHECK(stages == expected);
    CHECK(outcome.metrics.workflows_run == std::vector<WorkflowId>{WorkflowId::AuthChange});
    CHECK(outcome.metrics.wall_time.count() > 0);
}

TEST_CASE("repeated runs are byte-identical") {
    for (const auto* name : {"case1", "case3", "case5"}) {
        const auto trace = golden_trace(name);
        const auto fixtures = golden_fixtures(name);
        const auto first = triage::triage(trace, fixtures, {});
        const auto second = triage::triage(trace, fixtures, {});
        CHECK(first.rendered_report == second.rendered_report);
        CHECK(first.report == second.report);
        CHECK(first.metrics.tool_calls == second.metrics.tool_calls);
    }
}

TEST_CASE("write-back records the incident update in the audit trail") {
    const auto trace = golden_trace("case1");
    const auto fixtures = golden_fixtures("case1");

    OrchestratorConfig config;
    config.write_back = true;
    const auto outcome = triage::triage(trace, fixtures, config);

    const auto records = outcome.audit->tool_records();
    REQUIRE(records.size() == 2);
    CHECK(records[0].tool == "getUserRecord");
    CHECK(records[1].tool == "updateIncidentRecord");
    const auto status = records[1].arguments.get(AttributeKey::unknown("status"));
    REQUIRE(status.has_value());
    CHECK(*status == "escalated");  // case1 escalates
    CHECK(outcome.metrics.tool_calls == 2);

    // the report itself is unaffected by the write-back
    OrchestratorConfig readonly;
    const auto baseline = triage::triage(trace, fixtures, readonly);
    CHECK(baseline.rendered_report == outcome.rendered_report);
    CHECK(baseline.metrics.tool_calls == 1);
}

TEST_CASE("write-back closes non-actionable alerts") {
    const auto trace = golden_trace("case4");
    const auto fixtures = golden_fixtures("case4");
    OrchestratorConfig config;
    config.write_back = true;
    const auto outcome = triage::triage(trace, fixtures, config);

    CHECK_FALSE(outcome.report.actionable());
    const auto records = outcome.audit->tool_records();
    REQUIRE_FALSE(records.empty());
    const auto& last = records.back();
    CHECK(last.tool == "updateIncidentRecord");
    const auto status = last.arguments.get(AttributeKey::unknown("status"));
    REQUIRE(status.has_value());
    CHECK(*status == "closed");
}

TEST_CASE("schema mismatch is a logic error, not a verdict") {
    // malformed traces must degrade instead; only a broken executor trips this
    const auto trace = golden_trace("case3");
    auto fixtures = golden_fixtures("case3");
    const auto outcome = triage::triage(trace, fixtures, {});
    for (const auto& workflow : outcome.report.workflow_reports) {
        const auto& keys = workflow_schema_keys(workflow.workflow);
        CHECK(workflow.report_fields.size() == keys.size());
    }
}

TEST_CASE("batch preserves corpus order and parallelism changes nothing") {
    auto corpus = generate(Scenario::MultipleISP, 97, 24);
    {
        auto extra = generate(Scenario::PowerShell, 98, 24);
        corpus.entries.insert(corpus.entries.end(), extra.entries.begin(), extra.entries.end());
    }

    OrchestratorConfig config;
    const auto serial = triage_batch(corpus, config, 1);
    const auto parallel = triage_batch(corpus, config, 4);
    const auto wide = triage_batch(corpus, config, 97);  // more threads than work

    REQUIRE(serial.size() == corpus.entries.size());
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].rendered_report == parallel[i].rendered_report);
        CHECK(serial[i].rendered_report == wide[i].rendered_report);
        CHECK(serial[i].metrics.tool_calls == parallel[i].metrics.tool_calls);
    }

    // outcomes follow entry order: shuffling the corpus shuffles reports the same way
    std::vector<std::size_t> order(corpus.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937 rng(7);
    std::shuffle(order.begin(), order.end(), rng);
    LabeledCorpus shuffled;
    shuffled.seed = corpus.seed;
    for (const auto index : order) shuffled.entries.push_back(corpus.entries[index]);
    const auto shuffled_outcomes = triage_batch(shuffled, config, 4);
    for (std::size_t i = 0; i < order.size(); ++i) {
        CHECK(shuffled_outcomes[i].rendered_report == serial[order[i]].rendered_report);
    }
}

TEST_CASE("batch of nothing is nothing") {
    CHECK(triage_batch({}, {}, 4).empty());
}

TEST_CASE("every triage verdict parses back from its rendering") {
    const auto corpus = generate(Scenario::Generic, 11, 40);
    const auto outcomes = triage_batch(corpus, {}, 2);
    for (const auto& outcome : outcomes) {
        const auto parsed = parse_report(outcome.rendered_report);
        CHECK(parsed == outcome.report);
    }
}
