// Acceptance gate: one pass/fail line per criterion, exit code = failures.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "triage/corpus.hpp"
#include "triage/errors.hpp"
#include "triage/geo.hpp"
#include "triage/metrics.hpp"
#include "triage/orchestrator.hpp"
#include "triage/synthesis.hpp"
#include "triage/time_util.hpp"
#include "triage/workflows.hpp"

using namespace triage;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& detail) {
    if (!condition) throw Failure(detail);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read " + path);
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

const std::vector<Scenario> kScenarios = {
    Scenario::AddUser,      Scenario::AuthChange, Scenario::Coro,
    Scenario::MultipleISP,  Scenario::O365Guest,  Scenario::O365Login,
    Scenario::PowerShell,   Scenario::SalesforceAbnormalLogin,
    Scenario::SharePointFile, Scenario::Generic,
};

// Aggregated across the corpus-oracle run, reused for the final tables.
struct OracleAggregate {
    PredictionList predictions;
    LabelList labels;
    std::vector<TriageOutcome> slim_outcomes;  // metrics only
};
OracleAggregate g_oracle;

// ---- criterion 1: golden case studies ----------------------------------

void expect_field(const TriageOutcome& outcome, const std::string& key,
                  const nlohmann::ordered_json& want, const std::string& label) {
    require(outcome.report.workflow_reports.size() == 1,
            label + ": expected a single workflow report");
    const auto& fields = outcome.report.workflow_reports[0].report_fields;
    require(fields.contains(key), label + ": report lacks " + key);
    if (fields[key] != want) {
        throw Failure(label + ": " + key + " = " + fields[key].dump() + ", expected " +
                      want.dump());
    }
}

void criterion_golden_cases() {
    const auto started = Clock::now();

    {
        const auto outcome = triage::triage(golden_trace("case1"), golden_fixtures("case1"), {});
        require(outcome.report.actionable(), "case1: expected actionable");
        expect_field(outcome, "target_user_record", "Found", "case1");
        expect_field(outcome, "target_user_admin", "Admin", "case1");
        expect_field(outcome, "reasoning_target_user_admin",
                     "Target user roles include GlobalAdmin in the retrieved user record.",
                     "case1");
    }
    {
        const auto outcome = triage::triage(golden_trace("case2"), golden_fixtures("case2"), {});
        require(outcome.report.actionable(), "case2: expected actionable");
        expect_field(outcome, "user_record", "Found", "case2");
        expect_field(outcome, "new_user", "No", "case2");
    }
    {
        const auto outcome = triage::triage(golden_trace("case3"), golden_fixtures("case3"), {});
        require(outcome.report.actionable(), "case3: expected actionable");
        expect_field(outcome, "impossible_travel", true, "case3");
    }
    {
        const auto outcome = triage::triage(golden_trace("case4"), golden_fixtures("case4"), {});
        require(!outcome.report.actionable(), "case4: expected non-actionable");
        require(outcome.report.subclass == Subclass::BenignPositive,
                "case4: expected BenignPositive");
        expect_field(outcome, "guest_user_record", "Found", "case4");
        expect_field(outcome, "guest_user_admin", "User", "case4");
    }
    {
        const auto outcome = triage::triage(golden_trace("case5"), golden_fixtures("case5"), {});
        require(outcome.report.actionable(), "case5: expected actionable");
        expect_field(outcome, "powerShell_Malicious", true, "case5");
        expect_field(outcome, "dis_Infect_Detection", "Disinfect", "case5");
    }

    const auto elapsed = Clock::now() - started;
    require(elapsed < std::chrono::seconds(1),
            "golden cases took " +
                std::to_string(std::chrono::duration<double>(elapsed).count()) + "s, limit 1s");
}

// ---- criterion 2: threshold boundary suite ------------------------------

constexpr std::int64_t kNow = 1'750'000'000;

AlertTrace boundary_trace(const std::string& rule_name, std::int64_t rule_risk) {
    AlertTrace trace;
    trace.id = "b-1";
    trace.entity = "user@corp.example";
    trace.account = "acct";
    trace.tenant = "corp";
    trace.timestamp = kNow;
    trace.time_iso = format_iso8601_utc(kNow);
    trace.risk_score = 500;
    TriggeredRule rule;
    rule.behavior_rule = rule_name;
    rule.risk_score = rule_risk;
    trace.rules.push_back(std::move(rule));
    return trace;
}

bool run_actionable(WorkflowId id, const AlertTrace& trace, const FixtureBundle& bundle) {
    const PolicyConfig policy;
    const RoutingConfig routing;
    auto trail = std::make_shared<AuditTrail>("session-b");
    ToolSession tools{"session-b", bundle, policy, trail};
    const WorkflowContext context{trace, tools, policy, routing};
    return run_workflow(id, context).actionable;
}

FixtureBundle high_risk_rows(const std::string& entity, std::size_t count) {
    FixtureBundle bundle;
    for (std::size_t i = 0; i < count; ++i) {
        FixtureRow row;
        row.timestamp = kNow - 3600 * static_cast<std::int64_t>(i + 1);
        row.attributes.set(AttributeKey::unknown("riskScore"), "2500");
        bundle.query_tables[{QueryKind::GetRecentHighRiskActivity, entity}].push_back(
            std::move(row));
    }
    return bundle;
}

FixtureBundle salesforce_rows(const std::string& entity, std::size_t count) {
    FixtureBundle bundle;
    for (std::size_t i = 0; i < count; ++i) {
        FixtureRow row;
        row.timestamp = kNow - 7200 * static_cast<std::int64_t>(i + 1);
        row.attributes.set(AttributeKey::unknown("behaviorRule"),
                           "Fluency_Salesforce_Login_Status_Abnormal");
        bundle.query_tables[{QueryKind::GetRecentRuleActivity, entity}].push_back(
            std::move(row));
    }
    return bundle;
}

FixtureBundle travel_rows(const std::string& entity, double miles, std::int64_t seconds) {
    FixtureBundle bundle;
    const double dlon_degrees = miles / 3958.8 * 180.0 / M_PI;
    char lon[32];
    std::snprintf(lon, sizeof lon, "%.10f", dlon_degrees);
    auto& rows = bundle.query_tables[{QueryKind::GetRecentLoginActivity, entity}];
    FixtureRow first;
    first.timestamp = kNow - seconds;
    first.attributes.set(AttributeKey::unknown("latitude"), "0.0");
    first.attributes.set(AttributeKey::unknown("longitude"), "0.0");
    rows.push_back(std::move(first));
    FixtureRow second;
    second.timestamp = kNow;
    second.attributes.set(AttributeKey::unknown("latitude"), "0.0");
    second.attributes.set(AttributeKey::unknown("longitude"), lon);
    rows.push_back(std::move(second));
    return bundle;
}

void criterion_boundaries() {
    const std::string entity = "user@corp.example";
    struct Case {
        const char* name;
        bool got;
        bool want;
    };
    std::vector<Case> cases;

    {
        auto trace = boundary_trace("O365_Login_Unusual_Location", 1000);
        cases.push_back({"o365 risk 1000 count 5",
                         run_actionable(WorkflowId::O365Login, trace, high_risk_rows(entity, 5)),
                         false});
        trace.rules[0].risk_score = 1001;
        cases.push_back({"o365 risk 1001 count 1",
                         run_actionable(WorkflowId::O365Login, trace, high_risk_rows(entity, 1)),
                         true});
        cases.push_back({"o365 risk 1001 count 0",
                         run_actionable(WorkflowId::O365Login, trace, high_risk_rows(entity, 0)),
                         false});
    }
    {
        auto trace = boundary_trace("SharePoint_File_Download_Unusual", 1000);
        cases.push_back({"sharepoint risk 1000",
                         run_actionable(WorkflowId::SharePointFile, trace, {}), false});
        trace.rules[0].risk_score = 1001;
        cases.push_back({"sharepoint risk 1001",
                         run_actionable(WorkflowId::SharePointFile, trace, {}), true});
    }
    {
        const auto trace = boundary_trace("Fluency_Salesforce_Login_Status_Abnormal", 700);
        cases.push_back({"salesforce count 2",
                         run_actionable(WorkflowId::SalesforceAbnormalLogin, trace,
                                        salesforce_rows(entity, 2)),
                         false});
        cases.push_back({"salesforce count 3",
                         run_actionable(WorkflowId::SalesforceAbnormalLogin, trace,
                                        salesforce_rows(entity, 3)),
                         true});
    }
    {
        FixtureBundle young;
        UserRecord record;
        record.email = entity;
        record.created = format_iso8601_utc(kNow - 10 * 86400);
        record.roles = {"User"};
        young.users.emplace(entity, record);

        const auto removal = boundary_trace("Remove_Authentication_Method", 600);
        cases.push_back({"auth removal (new account)",
                         run_actionable(WorkflowId::AuthChange, removal, young), true});
        const auto addition = boundary_trace("Add_Authentication_Method", 600);
        cases.push_back({"auth addition by new account",
                         run_actionable(WorkflowId::AuthChange, addition, young), false});
    }
    {
        const auto trace = boundary_trace("Multiple_ISPs", 600);
        cases.push_back({"travel 501mi in 1h",
                         run_actionable(WorkflowId::MultipleISP, trace,
                                        travel_rows(entity, 501.0, 3600)),
                         false});
        cases.push_back({"travel 501mi in 0.5h",
                         run_actionable(WorkflowId::MultipleISP, trace,
                                        travel_rows(entity, 501.0, 1800)),
                         true});
        cases.push_back({"travel 499mi in 1min",
                         run_actionable(WorkflowId::MultipleISP, trace,
                                        travel_rows(entity, 499.0, 60)),
                         false});
    }

    for (const auto& item : cases) {
        if (item.got != item.want) {
            throw Failure(std::string(item.name) + ": got " +
                          (item.got ? "actionable" : "non-actionable") + ", expected " +
                          (item.want ? "actionable" : "non-actionable"));
        }
    }
}

// ---- criterion 3: escalate-on-any ---------------------------------------

void criterion_escalate_on_any() {
    AlertTrace trace;
    trace.id = "f-1";
    trace.entity = "user@corp.example";
    trace.account = "acct";
    trace.tenant = "corp";
    trace.timestamp = kNow;
    trace.time_iso = format_iso8601_utc(kNow);

    std::mt19937_64 rng(0xACCE97);
    std::size_t counterexamples = 0;
    for (int round = 0; round < 10'000; ++round) {
        const std::size_t n = 1 + rng() % 5;
        std::vector<WorkflowReport> reports;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            WorkflowReport report;
            report.workflow = static_cast<WorkflowId>(rng() % kWorkflowCount);
            for (const auto& key : workflow_schema_keys(report.workflow)) {
                report.report_fields[key] = static_cast<std::int64_t>(rng() % 1000);
            }
            report.actionable = rng() % 2 == 0;
            report.premise_contradicted = rng() % 8 == 0;
            report.data_error = rng() % 8 == 0;
            report.reasoning = "fuzzed";
            any = any || report.actionable;
            reports.push_back(std::move(report));
        }
        const auto result = synthesize(trace, reports, {});
        if (result.actionable() != any) ++counterexamples;
        if (!any && !result.subclass.has_value()) ++counterexamples;
    }
    require(counterexamples == 0,
            std::to_string(counterexamples) + " counterexamples in 10000 multisets");
}

// ---- criterion 4: corpus oracle -----------------------------------------

void criterion_corpus_oracle() {
    const auto started = Clock::now();
    const OrchestratorConfig config;

    std::size_t binary_mismatches = 0;
    std::size_t subclass_total = 0;
    std::size_t subclass_matches = 0;
    std::vector<std::string> mismatch_lines;

    for (const auto scenario : kScenarios) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto corpus = generate(scenario, seed, 200);
            const auto outcomes = triage_batch(corpus, config, 8);
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                const auto& entry = corpus.entries[i];
                const auto& report = outcomes[i].report;

                g_oracle.predictions.emplace_back(entry.trace.id, report);
                g_oracle.labels.emplace_back(entry.trace.id, entry.label);
                TriageOutcome slim;
                slim.metrics = outcomes[i].metrics;
                g_oracle.slim_outcomes.push_back(std::move(slim));

                if (report.actionable() != entry.label.actionable) {
                    ++binary_mismatches;
                    mismatch_lines.push_back(
                        entry.trace.id + ": label " +
                        (entry.label.actionable ? "Actionable" : "NonActionable") +
                        ", pipeline " + std::string(verdict_name(report.verdict)));
                    continue;
                }
                if (!entry.label.actionable) {
                    ++subclass_total;
                    if (report.subclass == entry.label.subclass) {
                        ++subclass_matches;
                    } else {
                        mismatch_lines.push_back(
                            entry.trace.id + ": label subclass " +
                            std::string(subclass_name(*entry.label.subclass)) + ", pipeline " +
                            (report.subclass ? std::string(subclass_name(*report.subclass))
                                             : std::string("<none>")));
                    }
                }
            }
        }
    }

    for (const auto& line : mismatch_lines) {
        std::cout << "       mismatch " << line << '\n';
    }

    const auto elapsed = std::chrono::duration<double>(Clock::now() - started).count();
    require(binary_mismatches == 0,
            std::to_string(binary_mismatches) + " binary verdict mismatches");
    const double agreement =
        subclass_total == 0 ? 1.0
                            : static_cast<double>(subclass_matches) /
                                  static_cast<double>(subclass_total);
    {
        std::ostringstream detail;
        detail << "subclass agreement " << std::fixed << std::setprecision(4) << agreement
               << " (" << subclass_matches << "/" << subclass_total << "), need >= 0.95";
        require(agreement >= 0.95, detail.str());
    }
    require(elapsed < 60.0,
            "corpus oracle took " + std::to_string(elapsed) + "s, limit 60s");
}

// ---- criterion 5: metric oracle -----------------------------------------

constexpr std::array<Subclass, 4> kSubclassOrder = {
    Subclass::BenignPositive, Subclass::FalsePositiveLogic, Subclass::FalsePositiveData,
    Subclass::Undetermined};

MetricsSummary brute_force_score(const PredictionList& predictions, const LabelList& labels) {
    const auto f1 = [](double tp, double fp, double fn) {
        const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    };

    double act_tp = 0, act_fp = 0, act_fn = 0;
    double na_tp = 0, na_fp = 0, na_fn = 0;
    double pred_na = 0, pred_na_truth_act = 0;
    std::array<std::array<double, 3>, 4> sub{};

    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const auto& report = predictions[i].second;
        const GroundTruthLabel* truth = nullptr;
        for (const auto& [id, value] : labels) {
            if (id == predictions[i].first) {
                truth = &value;
                break;
            }
        }
        require(truth != nullptr, "metric oracle: unmatched id");

        const bool predicted = report.actionable();
        if (predicted && truth->actionable) ++act_tp;
        if (predicted && !truth->actionable) ++act_fp;
        if (!predicted && truth->actionable) ++act_fn;
        if (!predicted && !truth->actionable) ++na_tp;
        if (!predicted && truth->actionable) ++na_fp;
        if (predicted && !truth->actionable) ++na_fn;
        if (!predicted) {
            ++pred_na;
            if (truth->actionable) ++pred_na_truth_act;
        }
        if (!truth->actionable) {
            const auto want = static_cast<std::size_t>(*truth->subclass);
            if (!predicted && report.subclass) {
                const auto got = static_cast<std::size_t>(*report.subclass);
                if (got == want) {
                    sub[want][0] += 1;
                } else {
                    sub[got][1] += 1;
                    sub[want][2] += 1;
                }
            } else {
                sub[want][2] += 1;
            }
        }
    }

    MetricsSummary summary;
    summary.actionable_f1 = f1(act_tp, act_fp, act_fn);
    summary.nonactionable_f1 = f1(na_tp, na_fp, na_fn);
    summary.macro_f1 = (summary.actionable_f1 + summary.nonactionable_f1) / 2.0;
    double sub_sum = 0;
    std::size_t present = 0;
    for (std::size_t c = 0; c < 4; ++c) {
        if (sub[c][0] + sub[c][2] > 0) {
            ++present;
            sub_sum += f1(sub[c][0], sub[c][1], sub[c][2]);
        }
    }
    summary.subclass_macro_f1 = present > 0 ? sub_sum / present : 0.0;
    summary.subclass_classes_present = present;
    summary.fpr = pred_na > 0 ? pred_na_truth_act / pred_na : 0.0;
    summary.recall_actionable = act_tp + act_fn > 0 ? act_tp / (act_tp + act_fn) : 0.0;
    return summary;
}

void criterion_metric_oracle() {
    std::mt19937_64 rng(0x5C0FE);

    const auto random_pair = [&](std::size_t n, PredictionList& predictions,
                                 LabelList& labels) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::string id = "alert-" + std::to_string(i);
            const bool truth_act = rng() % 2 == 0;
            GroundTruthLabel truth;
            truth.actionable = truth_act;
            if (!truth_act) truth.subclass = kSubclassOrder[rng() % 4];
            labels.emplace_back(id, truth);

            TriageReport report;
            const bool pred_act = rng() % 2 == 0;
            report.verdict = pred_act ? Verdict::Actionable : Verdict::NonActionable;
            if (!pred_act) report.subclass = kSubclassOrder[rng() % 4];
            predictions.emplace_back(id, report);
        }
    };

    const auto compare = [](const MetricsSummary& got, const MetricsSummary& want) {
        const auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-12; };
        require(close(got.actionable_f1, want.actionable_f1), "actionable_f1 diverges");
        require(close(got.nonactionable_f1, want.nonactionable_f1),
                "nonactionable_f1 diverges");
        require(close(got.macro_f1, want.macro_f1), "macro_f1 diverges");
        require(close(got.subclass_macro_f1, want.subclass_macro_f1),
                "subclass_macro_f1 diverges");
        require(got.subclass_classes_present == want.subclass_classes_present,
                "subclass class coverage diverges");
        require(close(got.fpr, want.fpr), "fpr diverges");
        require(close(got.recall_actionable, want.recall_actionable), "recall diverges");
    };

    // one 1000-item labeling, then smaller randomized rounds
    {
        PredictionList predictions;
        LabelList labels;
        random_pair(1000, predictions, labels);
        compare(score(predictions, labels), brute_force_score(predictions, labels));
    }
    for (int round = 0; round < 200; ++round) {
        PredictionList predictions;
        LabelList labels;
        random_pair(1 + rng() % 60, predictions, labels);
        compare(score(predictions, labels), brute_force_score(predictions, labels));
    }
}

// ---- criterion 6: geo check ---------------------------------------------

void criterion_geo() {
    const auto london = lookup_city("London");
    const auto new_york = lookup_city("New York");
    require(london && new_york, "gazetteer is missing London or New York");
    const double miles = haversine_miles(*london, *new_york);
    const double km = miles * 1.609344;
    std::ostringstream detail;
    detail << std::fixed << std::setprecision(1) << "London-New York " << miles << " mi ("
           << km << " km)";
    std::cout << "       " << detail.str() << '\n';
    require(miles >= 3430.0 && miles <= 3500.0, detail.str() + " outside [3430, 3500]");
}

// ---- criterion 7: determinism & isolation -------------------------------

LabeledCorpus mixed_corpus() {
    LabeledCorpus corpus;
    corpus.seed = 11;
    for (const auto scenario :
         {Scenario::AddUser, Scenario::MultipleISP, Scenario::PowerShell, Scenario::Generic}) {
        auto part = generate(scenario, 11, 50);
        corpus.entries.insert(corpus.entries.end(),
                              std::make_move_iterator(part.entries.begin()),
                              std::make_move_iterator(part.entries.end()));
    }
    return corpus;
}

void criterion_determinism() {
    const auto corpus = mixed_corpus();
    const OrchestratorConfig config;

    const auto serial = triage_batch(corpus, config, 1);
    const auto parallel = triage_batch(corpus, config, 8);
    require(serial.size() == parallel.size(), "batch sizes diverge");
    for (std::size_t i = 0; i < serial.size(); ++i) {
        if (serial[i].rendered_report != parallel[i].rendered_report) {
            throw Failure("parallelism changed the report for " + corpus.entries[i].trace.id);
        }
    }

    std::vector<std::size_t> order(corpus.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(0xD15C0);
    std::shuffle(order.begin(), order.end(), rng);
    LabeledCorpus shuffled;
    shuffled.seed = corpus.seed;
    for (const auto index : order) shuffled.entries.push_back(corpus.entries[index]);

    const auto shuffled_outcomes = triage_batch(shuffled, config, 8);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (shuffled_outcomes[i].rendered_report != serial[order[i]].rendered_report) {
            throw Failure("corpus order changed the report for " +
                          shuffled.entries[i].trace.id);
        }
    }
}

// ---- criterion 8: audit completeness ------------------------------------

std::size_t tool_budget(WorkflowId id) {
    switch (id) {
        case WorkflowId::Coro:
        case WorkflowId::SharePointFile: return 0;
        default: return 1;  // every other workflow resolves at most one lookup per alert
    }
}

void criterion_audit() {
    const std::vector<Stage> full_run{Stage::Orchestrate, Stage::Classify, Stage::Analyze,
                                      Stage::Synthesize, Stage::Done};
    for (const auto scenario : kScenarios) {
        const auto corpus = generate(scenario, 17, 60);
        const auto outcomes = triage_batch(corpus, {}, 4);
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto& outcome = outcomes[i];
            const auto& id = corpus.entries[i].trace.id;
            require(outcome.audit != nullptr, id + ": no audit trail");
            require(outcome.audit->stage_sequence() == full_run,
                    id + ": incomplete stage sequence");

            const auto records = outcome.audit->tool_records();
            require(outcome.metrics.tool_calls == records.size(),
                    id + ": metrics.tool_calls " + std::to_string(outcome.metrics.tool_calls) +
                        " != audit records " + std::to_string(records.size()));
            for (std::size_t r = 0; r < records.size(); ++r) {
                require(records[r].sequence_no == r + 1, id + ": audit sequence gap");
                require(records[r].session_id == "session-" + id,
                        id + ": audit record from a foreign session");
            }

            std::size_t budget = 0;
            for (const auto workflow : outcome.metrics.workflows_run) {
                budget += tool_budget(workflow);
            }
            require(outcome.metrics.tool_calls <= budget,
                    id + ": " + std::to_string(outcome.metrics.tool_calls) +
                        " tool calls exceed budget " + std::to_string(budget));

            // exact spot checks from the budget table
            if (scenario == Scenario::Coro || scenario == Scenario::SharePointFile) {
                require(outcome.metrics.tool_calls == 0,
                        id + ": expected zero tool calls");
            }
            if (scenario == Scenario::MultipleISP) {
                require(outcome.metrics.tool_calls == 1,
                        id + ": expected exactly one login-activity query");
            }
        }
    }
}

// ---- criterion 9: published-results disclosure --------------------------

void criterion_tables() {
    require(!g_oracle.predictions.empty(), "corpus oracle must run first");
    const auto summary = score(g_oracle.predictions, g_oracle.labels);
    const auto stats = efficiency(g_oracle.slim_outcomes);

    const auto seconds =
        std::chrono::duration<double>(stats.median_wall_time).count();

    std::cout << '\n';
    std::cout << "       " << std::left << std::setw(24) << "Model" << std::right
              << std::setw(9) << "Act. F1" << std::setw(13) << "Non-act. F1" << std::setw(13)
              << "Subclass F1" << std::setw(10) << "FPR (%)" << '\n';
    std::cout << "       " << std::left << std::setw(24) << "triage-pipeline" << std::right
              << std::fixed << std::setprecision(2) << std::setw(9) << summary.actionable_f1
              << std::setw(13) << summary.nonactionable_f1 << std::setw(13)
              << summary.subclass_macro_f1 << std::setw(10) << summary.fpr * 100.0 << '\n';
    std::cout << '\n';
    std::cout << "       " << std::left << std::setw(24) << "Model" << std::right
              << std::setw(9) << "Tokens" << std::setw(12) << "Tool Calls" << std::setw(13)
              << "Latency (s)" << '\n';
    std::cout << "       " << std::left << std::setw(24) << "triage-pipeline" << std::right
              << std::setw(9) << "n/a" << std::setw(12) << std::setprecision(2)
              << stats.mean_tool_calls << std::setw(13) << std::setprecision(4) << seconds
              << '\n';
    std::cout << '\n';
    std::cout << "       NOTE: the published reference results in this table format "
                 "(Act. F1 0.78, FPR 14.2%, ~23.6k tokens, 152.4s latency) were measured on "
                 "proprietary SOC data with hosted model inference and are NOT reproduced "
                 "here. The figures above come from the deterministic fixture corpus; the "
                 "property suites in criteria 1-8 substitute for the published evaluation."
              << '\n';

    // the harness itself must emit these exact column names
    require(summary.actionable_f1 >= 0.0 && summary.fpr >= 0.0, "metrics are ill-formed");
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria{
        {"1. golden case studies reproduce field-for-field", criterion_golden_cases},
        {"2. threshold boundary suite matches exactly", criterion_boundaries},
        {"3. escalate-on-any holds over 10000 fuzzed multisets", criterion_escalate_on_any},
        {"4. corpus oracle: verdicts match construction labels", criterion_corpus_oracle},
        {"5. score() equals brute-force metric recount", criterion_metric_oracle},
        {"6. haversine(London, New York) within [3430, 3500] mi", criterion_geo},
        {"7. parallel and shuffled runs are byte-identical", criterion_determinism},
        {"8. audit trails are complete and within tool budgets", criterion_audit},
        {"9. evaluation tables emitted; reference results disclosed", criterion_tables},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto started = Clock::now();
        try {
            criterion.run();
            const auto elapsed =
                std::chrono::duration<double>(Clock::now() - started).count();
            std::printf("[PASS] %s (%.2fs)\n", criterion.label, elapsed);
        } catch (const std::exception& error) {
            ++failures;
            std::printf("[FAIL] %s: %s\n", criterion.label, error.what());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
    } else {
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    }
    return failures;
}
