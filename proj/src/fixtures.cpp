#include "triage/fixtures.hpp"

#include "triage/errors.hpp"

namespace triage {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fixture_error(const std::string& field, const std::string& reason) {
    throw ParseError(ParseError::Code::SchemaViolation, field, "fixture " + field + ": " + reason);
}

AttributeMap parse_attribute_map(const json& object, const std::string& where) {
    if (!object.is_object()) fixture_error(where, "not an object");
    AttributeMap attributes;
    for (const auto& [name, value] : object.items()) {
        if (!value.is_string()) fixture_error(where + "." + name, "not a string");
        attributes.set(AttributeKey::parse(name), value.get<std::string>());
    }
    return attributes;
}

json serialize_attribute_map(const AttributeMap& attributes) {
    json object = json::object();
    for (const auto& [key, value] : attributes) {
        object[key.name()] = value;
    }
    return object;
}

FixtureRow parse_row(const json& object, const std::string& where) {
    if (!object.is_object()) fixture_error(where, "not an object");
    FixtureRow row;
    if (auto it = object.find("timestamp"); it != object.end() && it->is_number_integer()) {
        row.timestamp = it->get<std::int64_t>();
    }
    if (auto it = object.find("attributes"); it != object.end()) {
        row.attributes = parse_attribute_map(*it, where + ".attributes");
    }
    return row;
}

json serialize_row(const FixtureRow& row) {
    json object = json::object();
    object["timestamp"] = row.timestamp;
    object["attributes"] = serialize_attribute_map(row.attributes);
    return object;
}

}  // namespace

std::string_view query_kind_name(QueryKind kind) {
    switch (kind) {
        case QueryKind::GetRecentLoginActivity: return "GetRecentLoginActivity";
        case QueryKind::GetRecentHighRiskActivity: return "GetRecentHighRiskActivity";
        case QueryKind::GetRecentRuleActivity: return "GetRecentRuleActivity";
    }
    return "GetRecentLoginActivity";
}

std::optional<QueryKind> parse_query_kind(std::string_view name) {
    if (name == "GetRecentLoginActivity") return QueryKind::GetRecentLoginActivity;
    if (name == "GetRecentHighRiskActivity") return QueryKind::GetRecentHighRiskActivity;
    if (name == "GetRecentRuleActivity") return QueryKind::GetRecentRuleActivity;
    return std::nullopt;
}

FixtureBundle parse_fixture_bundle(const json& object) {
    if (!object.is_object()) fixture_error("bundle", "not an object");
    FixtureBundle bundle;

    if (auto users = object.find("users"); users != object.end()) {
        if (!users->is_object()) fixture_error("users", "not an object");
        for (const auto& [email, record_json] : users->items()) {
            UserRecord record;
            record.email = record_json.value("email", email);
            record.created = record_json.value("created", std::string{});
            if (auto roles = record_json.find("roles"); roles != record_json.end()) {
                record.roles = roles->get<std::vector<std::string>>();
            }
            record.user_type =
                record_json.value("user_type", std::string{"Member"}) == "Guest" ? UserType::Guest
                                                                                 : UserType::Member;
            record.display_name = record_json.value("display_name", std::string{});
            record.enabled = record_json.value("enabled", true);
            bundle.users.emplace(email, std::move(record));
        }
    }

    if (auto assets = object.find("assets"); assets != object.end()) {
        if (!assets->is_object()) fixture_error("assets", "not an object");
        for (const auto& [hostname, record_json] : assets->items()) {
            AssetRecord record;
            record.hostname = record_json.value("hostname", hostname);
            record.os = record_json.value("os", std::string{});
            if (auto owner = record_json.find("owner"); owner != record_json.end() && owner->is_string()) {
                record.owner = owner->get<std::string>();
            }
            const std::string level = record_json.value("criticality", std::string{"Low"});
            record.criticality = level == "High"     ? Criticality::High
                                 : level == "Medium" ? Criticality::Medium
                                                     : Criticality::Low;
            bundle.assets.emplace(hostname, std::move(record));
        }
    }

    if (auto events = object.find("events"); events != object.end()) {
        if (!events->is_array()) fixture_error("events", "not an array");
        for (std::size_t i = 0; i < events->size(); ++i) {
            bundle.events.push_back(parse_row((*events)[i], "events[" + std::to_string(i) + "]"));
        }
    }

    if (auto tables = object.find("query_tables"); tables != object.end()) {
        if (!tables->is_array()) fixture_error("query_tables", "not an array");
        for (std::size_t i = 0; i < tables->size(); ++i) {
            const auto& table = (*tables)[i];
            const std::string where = "query_tables[" + std::to_string(i) + "]";
            if (!table.is_object()) fixture_error(where, "not an object");
            const auto kind = parse_query_kind(table.value("kind", std::string{}));
            if (!kind) fixture_error(where + ".kind", "unknown query kind");
            const std::string key = table.value("key", std::string{});
            std::vector<FixtureRow> rows;
            if (auto rows_json = table.find("rows"); rows_json != table.end()) {
                if (!rows_json->is_array()) fixture_error(where + ".rows", "not an array");
                for (std::size_t r = 0; r < rows_json->size(); ++r) {
                    rows.push_back(parse_row((*rows_json)[r],
                                             where + ".rows[" + std::to_string(r) + "]"));
                }
            }
            bundle.query_tables[{*kind, key}] = std::move(rows);
        }
    }

    if (auto states = object.find("incident_states"); states != object.end()) {
        if (!states->is_object()) fixture_error("incident_states", "not an object");
        for (const auto& [id, status] : states->items()) {
            if (!status.is_string()) fixture_error("incident_states." + id, "not a string");
            bundle.incident_states[id] = status.get<std::string>();
        }
    }
    return bundle;
}

json serialize_fixture_bundle(const FixtureBundle& bundle) {
    json object = json::object();

    json users = json::object();
    for (const auto& [email, record] : bundle.users) {
        json record_json = json::object();
        record_json["email"] = record.email;
        record_json["created"] = record.created;
        record_json["roles"] = record.roles;
        record_json["user_type"] = record.user_type == UserType::Guest ? "Guest" : "Member";
        record_json["display_name"] = record.display_name;
        record_json["enabled"] = record.enabled;
        users[email] = std::move(record_json);
    }
    object["users"] = std::move(users);

    json assets = json::object();
    for (const auto& [hostname, record] : bundle.assets) {
        json record_json = json::object();
        record_json["hostname"] = record.hostname;
        record_json["os"] = record.os;
        if (record.owner) record_json["owner"] = *record.owner;
        record_json["criticality"] = record.criticality == Criticality::High     ? "High"
                                     : record.criticality == Criticality::Medium ? "Medium"
                                                                                 : "Low";
        assets[hostname] = std::move(record_json);
    }
    object["assets"] = std::move(assets);

    json events = json::array();
    for (const auto& row : bundle.events) {
        events.push_back(serialize_row(row));
    }
    object["events"] = std::move(events);

    json tables = json::array();
    for (const auto& [table_key, rows] : bundle.query_tables) {
        json table = json::object();
        table["kind"] = std::string(query_kind_name(table_key.first));
        table["key"] = table_key.second;
        json rows_json = json::array();
        for (const auto& row : rows) {
            rows_json.push_back(serialize_row(row));
        }
        table["rows"] = std::move(rows_json);
        tables.push_back(std::move(table));
    }
    object["query_tables"] = std::move(tables);

    json states = json::object();
    for (const auto& [id, status] : bundle.incident_states) {
        states[id] = status;
    }
    object["incident_states"] = std::move(states);
    return object;
}

}  // namespace triage
