#include "triage/audit.hpp"

#include <sstream>

#include <json.hpp>

#include "triage/errors.hpp"

namespace triage {

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::Orchestrate: return "Orchestrate";
        case Stage::Classify: return "Classify";
        case Stage::Analyze: return "Analyze";
        case Stage::Synthesize: return "Synthesize";
        case Stage::Done: return "Done";
    }
    return "Orchestrate";
}

AuditTrail::AuditTrail(std::string session_id)
    : session_id_(std::move(session_id)),
      started_(std::chrono::steady_clock::now()),
      mutex_(std::make_unique<std::mutex>()) {}

std::chrono::nanoseconds AuditTrail::since_start() const {
    return std::chrono::steady_clock::now() - started_;
}

void AuditTrail::record_stage(Stage stage) {
    const auto at = since_start();
    std::lock_guard lock(*mutex_);
    entries_.push_back(StageRecord{stage, at});
}

std::uint64_t AuditTrail::record_tool_call(std::string tool, AttributeMap arguments, bool success,
                                           std::string outcome) {
    const auto at = since_start();
    std::lock_guard lock(*mutex_);
    ToolCallRecord record;
    record.sequence_no = next_sequence_++;
    record.session_id = session_id_;
    record.tool = std::move(tool);
    record.arguments = std::move(arguments);
    record.success = success;
    record.outcome = std::move(outcome);
    record.monotonic_time = at;
    const auto assigned = record.sequence_no;
    entries_.push_back(std::move(record));
    return assigned;
}

std::vector<AuditTrail::Entry> AuditTrail::entries() const {
    std::lock_guard lock(*mutex_);
    return entries_;
}

std::vector<ToolCallRecord> AuditTrail::tool_records() const {
    std::lock_guard lock(*mutex_);
    std::vector<ToolCallRecord> records;
    for (const auto& entry : entries_) {
        if (const auto* record = std::get_if<ToolCallRecord>(&entry)) {
            records.push_back(*record);
        }
    }
    return records;
}

std::size_t AuditTrail::tool_call_count() const {
    std::lock_guard lock(*mutex_);
    std::size_t count = 0;
    for (const auto& entry : entries_) {
        if (std::holds_alternative<ToolCallRecord>(entry)) ++count;
    }
    return count;
}

std::vector<Stage> AuditTrail::stage_sequence() const {
    std::lock_guard lock(*mutex_);
    std::vector<Stage> stages;
    for (const auto& entry : entries_) {
        if (const auto* record = std::get_if<StageRecord>(&entry)) {
            stages.push_back(record->stage);
        }
    }
    return stages;
}

std::string AuditTrail::export_tool_records() const {
    using json = nlohmann::ordered_json;
    std::ostringstream out;
    for (const auto& record : tool_records()) {
        json line = json::object();
        line["sequence_no"] = record.sequence_no;
        line["session_id"] = record.session_id;
        line["tool"] = record.tool;
        json arguments = json::object();
        for (const auto& [key, value] : record.arguments) {
            arguments[key.name()] = value;
        }
        line["arguments"] = std::move(arguments);
        line["outcome"] = (record.success ? "Success(" : "Failure(") + record.outcome + ")";
        line["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(record.monotonic_time).count();
        out << line.dump() << '\n';
    }
    return out.str();
}

std::shared_ptr<AuditTrail> AuditRegistry::create(const std::string& session_id) {
    auto trail = std::make_shared<AuditTrail>(session_id);
    std::lock_guard lock(mutex_);
    trails_[session_id] = trail;
    return trail;
}

std::vector<ToolCallRecord> AuditRegistry::audit_log(const std::string& session_id) const {
    std::shared_ptr<AuditTrail> trail;
    {
        std::lock_guard lock(mutex_);
        auto it = trails_.find(session_id);
        if (it == trails_.end()) {
            throw ToolError(ToolError::Code::UnknownSession, "unknown session: " + session_id);
        }
        trail = it->second;
    }
    return trail->tool_records();
}

}  // namespace triage
