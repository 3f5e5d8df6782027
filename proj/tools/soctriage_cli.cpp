// soctriage: deterministic alert-triage pipeline over fixture-backed telemetry.
//
// Subcommands: triage, batch, validate, gen, score. Exit codes: 0 success,
// 2 schema/validation error, 3 I/O error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "triage/corpus.hpp"
#include "triage/errors.hpp"
#include "triage/metrics.hpp"
#include "triage/orchestrator.hpp"
#include "triage/synthesis.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitSchema = 2;
constexpr int kExitIo = 3;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw triage::IoError(path.string(), "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw triage::IoError(path.string(), "cannot write " + path.string());
    out << content;
}

triage::FixtureBundle load_fixtures_file(const fs::path& path) {
    json object;
    try {
        object = json::parse(read_file(path));
    } catch (const json::exception& error) {
        throw triage::ParseError(triage::ParseError::Code::MalformedDocument, "",
                                 path.string() + ": " + error.what());
    }
    return triage::parse_fixture_bundle(object);
}

double seconds(std::chrono::nanoseconds duration) {
    return std::chrono::duration<double>(duration).count();
}

struct ScoreRow {
    std::string model;
    triage::MetricsSummary summary;
    bool has_efficiency = false;
};

// Mirrors the published decision/efficiency tables so externally measured
// systems can be slotted in next to this pipeline's numbers.
void print_tables(const ScoreRow& row, std::ostream& out) {
    const auto& m = row.summary;
    out << std::left << std::setw(24) << "Model" << std::right << std::setw(9) << "Act. F1"
        << std::setw(13) << "Non-act. F1" << std::setw(13) << "Subclass F1" << std::setw(10)
        << "FPR (%)" << '\n';
    out << std::fixed << std::setprecision(2);
    out << std::left << std::setw(24) << row.model << std::right << std::setw(9)
        << m.actionable_f1 << std::setw(13) << m.nonactionable_f1 << std::setw(13)
        << m.subclass_macro_f1 << std::setw(10) << m.fpr * 100.0 << '\n';
    out << '\n';
    out << std::left << std::setw(24) << "Model" << std::right << std::setw(9) << "Tokens"
        << std::setw(12) << "Tool Calls" << std::setw(13) << "Latency (s)" << '\n';
    out << std::left << std::setw(24) << row.model << std::right << std::setw(9) << "n/a";
    if (row.has_efficiency) {
        out << std::setw(12) << m.mean_tool_calls << std::setw(13)
            << seconds(m.median_wall_time) << '\n';
    } else {
        out << std::setw(12) << "n/a" << std::setw(13) << "n/a" << '\n';
    }
}

json summary_to_json(const triage::MetricsSummary& summary, bool has_efficiency) {
    json object = json::object();
    object["Act. F1"] = summary.actionable_f1;
    object["Non-act. F1"] = summary.nonactionable_f1;
    object["Subclass F1"] = summary.subclass_macro_f1;
    object["FPR (%)"] = summary.fpr * 100.0;
    object["Macro F1"] = summary.macro_f1;
    object["Recall (actionable)"] = summary.recall_actionable;
    object["Subclass classes present"] = summary.subclass_classes_present;
    object["Tokens"] = nullptr;  // not measured by this pipeline
    if (has_efficiency) {
        object["Tool Calls"] = summary.mean_tool_calls;
        object["Latency (s)"] = seconds(summary.median_wall_time);
    } else {
        object["Tool Calls"] = nullptr;
        object["Latency (s)"] = nullptr;
    }
    return object;
}

triage::LabelList load_labels_file(const fs::path& path) {
    triage::LabelList labels;
    std::ifstream in(path);
    if (!in) throw triage::IoError(path.string(), "cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json object;
        try {
            object = json::parse(line);
        } catch (const json::exception& error) {
            throw triage::ParseError(
                triage::ParseError::Code::MalformedDocument, "",
                path.string() + ":" + std::to_string(line_no) + ": " + error.what());
        }
        const std::string id = object.value("id", std::string{});
        const std::string verdict = object.value("verdict", std::string{});
        triage::GroundTruthLabel label;
        if (verdict == "Actionable") {
            label.actionable = true;
        } else if (verdict == "NonActionable") {
            label.actionable = false;
            label.subclass = triage::parse_subclass(object.value("subclass", std::string{}));
            if (!label.subclass) {
                throw triage::ParseError(triage::ParseError::Code::SchemaViolation, "subclass",
                                         path.string() + ":" + std::to_string(line_no) +
                                             ": missing or unknown subclass");
            }
        } else {
            throw triage::ParseError(triage::ParseError::Code::SchemaViolation, "verdict",
                                     path.string() + ":" + std::to_string(line_no) +
                                         ": unknown verdict");
        }
        if (id.empty()) {
            throw triage::ParseError(triage::ParseError::Code::SchemaViolation, "id",
                                     path.string() + ":" + std::to_string(line_no) +
                                         ": missing id");
        }
        labels.emplace_back(id, label);
    }
    return labels;
}

int run_triage(const fs::path& trace_path, const fs::path& fixtures_path, bool write_back,
               bool print_audit, const triage::OrchestratorConfig& base) {
    const auto trace = triage::parse_alert(read_file(trace_path));
    const auto fixtures = load_fixtures_file(fixtures_path);

    triage::OrchestratorConfig config = base;
    config.write_back = write_back;

    triage::AuditRegistry registry;
    const auto outcome = triage::triage(trace, fixtures, config, &registry);
    std::cout << outcome.rendered_report << '\n';
    if (print_audit) {
        std::cerr << outcome.audit->export_tool_records();
    }
    return 0;
}

int run_batch(const fs::path& corpus_dir, unsigned parallelism, const fs::path& out_dir,
              const triage::OrchestratorConfig& base) {
    const auto corpus = triage::load_corpus(corpus_dir);
    triage::OrchestratorConfig config = base;
    config.write_back = false;  // evaluation runs never mutate incident state

    const auto outcomes = triage::triage_batch(corpus, config, parallelism);

    if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw triage::IoError(out_dir.string(), "cannot create " + out_dir.string());
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            write_file(out_dir / (corpus.entries[i].trace.id + ".report.json"),
                       outcomes[i].rendered_report + "\n");
        }
        const auto stats = triage::efficiency(outcomes);
        json efficiency_doc = json::object();
        efficiency_doc["alerts"] = outcomes.size();
        efficiency_doc["Tool Calls"] = stats.mean_tool_calls;
        efficiency_doc["Latency (s)"] = seconds(stats.median_wall_time);
        write_file(out_dir / "efficiency.json", efficiency_doc.dump(2) + "\n");
    }

    std::size_t actionable = 0;
    for (const auto& outcome : outcomes) {
        if (outcome.report.actionable()) ++actionable;
    }
    std::cout << "triaged " << outcomes.size() << " alerts, " << actionable << " escalated"
              << (out_dir.empty() ? "" : ", reports in " + out_dir.string()) << '\n';
    return 0;
}

int run_validate(const fs::path& corpus_dir) {
    const auto corpus = triage::load_corpus(corpus_dir);
    std::size_t clean = 0;
    std::size_t flagged = 0;
    for (const auto& entry : corpus.entries) {
        const auto violations = triage::validate_trace(entry.trace);
        if (violations.empty()) {
            ++clean;
            continue;
        }
        ++flagged;
        for (const auto& violation : violations) {
            std::cout << entry.trace.id << ": " << violation.field << " " << violation.reason
                      << '\n';
        }
    }
    std::cout << corpus.entries.size() << " traces, " << clean << " clean, " << flagged
              << " flagged" << '\n';
    return 0;
}

int run_gen(const std::string& scenario_name, std::uint64_t seed, std::size_t n,
            const fs::path& out_dir) {
    triage::LabeledCorpus corpus;
    corpus.seed = seed;
    if (scenario_name == "all") {
        for (const auto scenario : triage::all_workflows()) {
            auto part = triage::generate(scenario, seed, n);
            for (auto& entry : part.entries) corpus.entries.push_back(std::move(entry));
        }
    } else {
        const auto scenario = triage::parse_workflow_id(scenario_name);
        if (!scenario) {
            std::cerr << "unknown scenario: " << scenario_name << '\n';
            return kExitSchema;
        }
        corpus = triage::generate(*scenario, seed, n);
    }
    triage::write_corpus(corpus, out_dir);
    std::cout << "wrote " << corpus.entries.size() << " labeled alerts to " << out_dir.string()
              << '\n';
    return 0;
}

int run_score(const fs::path& pred_dir, const fs::path& labels_path, const fs::path& summary_out) {
    triage::PredictionList predictions;
    if (!fs::is_directory(pred_dir)) {
        throw triage::IoError(pred_dir.string(), "not a directory: " + pred_dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(pred_dir)) {
        const auto name = entry.path().filename().string();
        if (name.size() > 12 && name.ends_with(".report.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        const auto id = file.filename().string().substr(
            0, file.filename().string().size() - std::string(".report.json").size());
        predictions.emplace_back(id, triage::parse_report(read_file(file)));
    }

    const auto labels = load_labels_file(labels_path);
    auto summary = triage::score(predictions, labels);

    ScoreRow row{"soctriage", summary, false};
    const auto efficiency_path = pred_dir / "efficiency.json";
    if (fs::exists(efficiency_path)) {
        try {
            const auto doc = json::parse(read_file(efficiency_path));
            row.summary.mean_tool_calls = doc.value("Tool Calls", 0.0);
            row.summary.median_wall_time = std::chrono::nanoseconds(
                static_cast<std::int64_t>(doc.value("Latency (s)", 0.0) * 1e9));
            row.has_efficiency = true;
        } catch (const json::exception&) {
            // efficiency sidecar is optional; ignore a malformed one
        }
    }

    print_tables(row, std::cout);
    if (!summary_out.empty()) {
        write_file(summary_out, summary_to_json(row.summary, row.has_efficiency).dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic SOC alert triage pipeline"};
    app.require_subcommand(1);

    std::string policy_path;
    std::string routing_path;
    app.add_option("--policy", policy_path, "policy config JSON overriding built-in defaults");
    app.add_option("--routing", routing_path, "routing config JSON overriding built-in defaults");

    auto* triage_cmd = app.add_subcommand("triage", "triage a single alert trace");
    std::string trace_file;
    std::string fixtures_file;
    bool write_back = true;
    bool print_audit = false;
    triage_cmd->add_option("trace", trace_file, "alert trace JSON file")->required();
    triage_cmd->add_option("--fixtures", fixtures_file, "fixture bundle JSON file")->required();
    triage_cmd->add_flag("--write-back,!--no-write-back", write_back,
                         "write the verdict back to the incident record (default on)");
    triage_cmd->add_flag("--audit", print_audit, "dump the tool-call audit log to stderr");

    auto* batch_cmd = app.add_subcommand("batch", "triage a labeled corpus directory");
    std::string corpus_dir;
    unsigned parallelism = 1;
    std::string out_dir;
    batch_cmd->add_option("corpus", corpus_dir, "corpus directory")->required();
    batch_cmd->add_option("--parallelism", parallelism, "worker threads")->default_val(1u);
    batch_cmd->add_option("--out", out_dir, "directory for rendered reports");

    auto* validate_cmd = app.add_subcommand("validate", "validate a corpus directory");
    std::string validate_dir;
    validate_cmd->add_option("corpus", validate_dir, "corpus directory")->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate a labeled synthetic corpus");
    std::string scenario = "all";
    std::uint64_t seed = 1;
    std::size_t count = 100;
    std::string gen_out;
    gen_cmd->add_option("--scenario", scenario, "workflow scenario name, or 'all'");
    gen_cmd->add_option("--seed", seed, "generator seed")->default_val(std::uint64_t{1});
    gen_cmd->add_option("--n", count, "alerts per scenario")->default_val(std::size_t{100});
    gen_cmd->add_option("--out", gen_out, "output corpus directory")->required();

    auto* score_cmd = app.add_subcommand("score", "score rendered reports against labels");
    std::string pred_dir;
    std::string labels_file;
    std::string summary_file;
    score_cmd->add_option("--pred", pred_dir, "directory of <id>.report.json files")->required();
    score_cmd->add_option("--labels", labels_file, "labels.jsonl file")->required();
    score_cmd->add_option("--summary-out", summary_file,
                          "machine-readable summary JSON (default <pred>/summary.json)");

    CLI11_PARSE(app, argc, argv);

    try {
        triage::OrchestratorConfig config;
        if (!policy_path.empty()) config.policy = triage::load_policy_config(policy_path);
        if (!routing_path.empty()) config.routing = triage::load_routing_config(routing_path);

        if (*triage_cmd) {
            return run_triage(trace_file, fixtures_file, write_back, print_audit, config);
        }
        if (*batch_cmd) {
            return run_batch(corpus_dir, parallelism, out_dir, config);
        }
        if (*validate_cmd) {
            return run_validate(validate_dir);
        }
        if (*gen_cmd) {
            return run_gen(scenario, seed, count, gen_out);
        }
        if (*score_cmd) {
            const fs::path summary =
                summary_file.empty() ? fs::path(pred_dir) / "summary.json" : fs::path(summary_file);
            return run_score(pred_dir, labels_file, summary);
        }
    } catch (const triage::IoError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitIo;
    } catch (const triage::ParseError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitSchema;
    } catch (const triage::ToolError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitSchema;
    } catch (const triage::EvalError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitSchema;
    } catch (const std::exception& error) {
        std::cerr << "internal error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}
