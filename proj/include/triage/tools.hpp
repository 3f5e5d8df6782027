#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "triage/alert.hpp"
#include "triage/audit.hpp"
#include "triage/config.hpp"
#include "triage/fixtures.hpp"

namespace triage {

// Inclusive on both ends; epoch seconds UTC.
struct TimeWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;
};

// The tool layer a workflow is allowed to touch. Results come from the
// fixture bundle only; every call — including argument failures —
// appends exactly one record to the session's audit trail. Missing data
// is an answer ("absent" / zero rows), never an error.
class ToolSession {
public:
    ToolSession(std::string session_id, const FixtureBundle& fixtures, const PolicyConfig& policy,
                std::shared_ptr<AuditTrail> audit);

    const std::string& session_id() const { return session_id_; }
    const AuditTrail& audit() const { return *audit_; }

    // Throws ToolError{ArgumentSchemaViolation} for empty email.
    std::optional<UserRecord> get_user_record(std::string_view email, std::string_view account,
                                              std::string_view tenant);

    // Throws ToolError{ArgumentSchemaViolation} for empty hostname.
    std::optional<AssetRecord> get_asset_record(std::string_view hostname,
                                                std::string_view account,
                                                std::string_view tenant);

    // Rows matching every filter entry, timestamp within window, ordered
    // by timestamp. Throws ToolError{InvalidWindow} if start > end.
    QueryResult search_behavior_events(const AttributeMap& filter, TimeWindow window);

    // One row per distinct group_by value among the matching events, with
    // a "count" attribute; group order follows first occurrence.
    QueryResult search_behavior_summaries(const AttributeKey& group_by, const AttributeMap& filter,
                                          TimeWindow window);

    // Seeded table lookup restricted to the kind's lookback ending at
    // as_of: login activity 8h; high-risk activity additionally filters
    // riskScore > policy threshold; rule activity filters behaviorRule ==
    // rule when a rule is named. Throws ToolError{ArgumentSchemaViolation}
    // for an empty key or unparseable as_of.
    QueryResult run_structured_query(QueryKind kind, std::string_view account,
                                     std::string_view tenant, std::string_view key,
                                     std::string_view as_of, std::string_view rule = {});

    // Last-writer-wins, idempotent, session-local: writes never leak into
    // the shared bundle or other sessions. Returns the stored status.
    std::string update_incident_record(std::string_view id, std::string_view status,
                                       std::string_view report);

    // Session view: local writes shadow the bundle's seeded states.
    std::optional<std::string> incident_status(std::string_view id) const;

private:
    QueryResult scan_events(const AttributeMap& filter, TimeWindow window) const;

    std::string session_id_;
    const FixtureBundle& fixtures_;
    const PolicyConfig& policy_;
    std::shared_ptr<AuditTrail> audit_;
    mutable std::mutex incident_mutex_;
    std::map<std::string, std::string, std::less<>> incident_overlay_;
};

}  // namespace triage
