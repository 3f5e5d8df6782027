#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "triage/alert.hpp"

namespace triage {

enum class UserType { Member, Guest };
enum class Criticality { Low, Medium, High };

struct UserRecord {
    std::string email;
    std::string created;  // ISO-8601 UTC
    std::vector<std::string> roles;
    UserType user_type = UserType::Member;
    std::string display_name;
    bool enabled = true;

    bool operator==(const UserRecord& other) const = default;
};

struct AssetRecord {
    std::string hostname;
    std::string os;
    std::optional<std::string> owner;
    Criticality criticality = Criticality::Low;

    bool operator==(const AssetRecord& other) const = default;
};

enum class QueryKind {
    GetRecentLoginActivity,
    GetRecentHighRiskActivity,
    GetRecentRuleActivity,
};

std::string_view query_kind_name(QueryKind kind);
std::optional<QueryKind> parse_query_kind(std::string_view name);

// One telemetry row: event timestamp plus the same attribute value domain
// as TriggeredRule.attributes (login rows additionally carry latitude,
// longitude, City, ISP and so on as attributes).
struct FixtureRow {
    std::int64_t timestamp = 0;
    AttributeMap attributes;

    bool operator==(const FixtureRow& other) const = default;
};

struct QueryResult {
    std::vector<FixtureRow> rows;
    std::size_t row_count = 0;  // always rows.size()
};

// Deterministic stand-in for the enterprise systems behind the tool layer.
// Missing keys are answered with empty/none results, never an error.
struct FixtureBundle {
    std::map<std::string, UserRecord> users;          // email -> record
    std::map<std::string, AssetRecord> assets;        // hostname -> record
    std::vector<FixtureRow> events;
    std::map<std::pair<QueryKind, std::string>, std::vector<FixtureRow>> query_tables;
    std::map<std::string, std::string> incident_states;

    bool operator==(const FixtureBundle& other) const = default;
};

FixtureBundle parse_fixture_bundle(const nlohmann::ordered_json& object);
nlohmann::ordered_json serialize_fixture_bundle(const FixtureBundle& bundle);

}  // namespace triage
