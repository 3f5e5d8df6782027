#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "triage/alert.hpp"

namespace triage {

enum class Stage { Orchestrate, Classify, Analyze, Synthesize, Done };

std::string_view stage_name(Stage stage);

struct ToolCallRecord {
    std::uint64_t sequence_no = 0;  // 1-based, counts tool calls only
    std::string session_id;
    std::string tool;
    AttributeMap arguments;
    bool success = true;
    std::string outcome;  // result digest on success, reason on failure
    std::chrono::nanoseconds monotonic_time{0};  // since session start
};

struct StageRecord {
    Stage stage = Stage::Orchestrate;
    std::chrono::nanoseconds monotonic_time{0};
};

// Append-only per-session history. Workflows for one alert may run
// concurrently, so appends are serialized; reads take a snapshot.
class AuditTrail {
public:
    using Entry = std::variant<StageRecord, ToolCallRecord>;

    explicit AuditTrail(std::string session_id);

    AuditTrail(const AuditTrail&) = delete;
    AuditTrail& operator=(const AuditTrail&) = delete;
    AuditTrail(AuditTrail&&) = default;
    AuditTrail& operator=(AuditTrail&&) = default;

    const std::string& session_id() const { return session_id_; }

    void record_stage(Stage stage);
    std::uint64_t record_tool_call(std::string tool, AttributeMap arguments, bool success,
                                   std::string outcome);

    std::vector<Entry> entries() const;
    std::vector<ToolCallRecord> tool_records() const;
    std::size_t tool_call_count() const;
    std::vector<Stage> stage_sequence() const;

    // Line-delimited JSON, one tool record per line:
    // {sequence_no, session_id, tool, arguments, outcome, elapsed_ms}
    std::string export_tool_records() const;

private:
    std::chrono::nanoseconds since_start() const;

    std::string session_id_;
    std::chrono::steady_clock::time_point started_;
    std::unique_ptr<std::mutex> mutex_;
    std::vector<Entry> entries_;
    std::uint64_t next_sequence_ = 1;
};

// Keeps finished sessions addressable so their histories can be pulled
// by id after the pipeline returns.
class AuditRegistry {
public:
    std::shared_ptr<AuditTrail> create(const std::string& session_id);

    // Complete ordered tool-call history. Throws ToolError{UnknownSession}
    // for ids never registered.
    std::vector<ToolCallRecord> audit_log(const std::string& session_id) const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<AuditTrail>> trails_;
};

}  // namespace triage
