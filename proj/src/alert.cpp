#include "triage/alert.hpp"

#include <array>
#include <cstdlib>
#include <unordered_map>

#include <json.hpp>

#include "triage/errors.hpp"
#include "triage/time_util.hpp"

namespace triage {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kKnownKeyCount = static_cast<std::size_t>(AttrKind::Unknown);

const std::array<std::string, kKnownKeyCount>& known_key_names() {
    static const std::array<std::string, kKnownKeyCount> names = {
        "Username", "ARN",       "UserType",  "ClientIP",      "ActorIP",  "City",
        "Country",  "ISP",       "OS",        "BrowserType",   "Hostname", "Workload",
        "Operation", "EventName", "CmdLine",  "ParentProcess", "FileName", "ExploitPath",
        "MFA",      "Severity",  "Remediation", "Verdict",     "TargetUser",
    };
    return names;
}

const std::unordered_map<std::string_view, AttrKind>& known_key_lookup() {
    static const auto* lookup = [] {
        auto* map = new std::unordered_map<std::string_view, AttrKind>;
        const auto& names = known_key_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            map->emplace(names[i], static_cast<AttrKind>(i));
        }
        return map;
    }();
    return *lookup;
}

[[noreturn]] void schema_error(const std::string& field, const std::string& reason) {
    throw ParseError(ParseError::Code::SchemaViolation, field, field + ": " + reason);
}

std::string require_string(const json& object, const std::string& field) {
    auto it = object.find(field);
    if (it == object.end()) schema_error(field, "missing");
    if (!it->is_string()) schema_error(field, "not a string");
    return it->get<std::string>();
}

std::int64_t require_integer(const json& object, const std::string& field) {
    auto it = object.find(field);
    if (it == object.end()) schema_error(field, "missing");
    if (!it->is_number_integer()) schema_error(field, "not an integer");
    return it->get<std::int64_t>();
}

}  // namespace

AttributeKey AttributeKey::parse(std::string_view name) {
    const auto& lookup = known_key_lookup();
    auto it = lookup.find(name);
    if (it != lookup.end()) {
        return of(it->second);
    }
    return unknown(std::string(name));
}

AttributeKey AttributeKey::of(AttrKind kind) {
    AttributeKey key;
    key.kind_ = kind;
    return key;
}

AttributeKey AttributeKey::unknown(std::string name) {
    AttributeKey key;
    key.kind_ = AttrKind::Unknown;
    key.name_ = std::move(name);
    return key;
}

const std::string& AttributeKey::name() const {
    if (kind_ == AttrKind::Unknown) return name_;
    return known_key_names()[static_cast<std::size_t>(kind_)];
}

void AttributeMap::set(AttributeKey key, std::string value) {
    for (auto& [existing, stored] : entries_) {
        if (existing == key) {
            stored = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string_view> AttributeMap::get(const AttributeKey& key) const {
    for (const auto& [existing, value] : entries_) {
        if (existing == key) return std::string_view(value);
    }
    return std::nullopt;
}

std::optional<std::string_view> AttributeMap::get(AttrKind kind) const {
    return get(AttributeKey::of(kind));
}

std::string_view subclass_name(Subclass subclass) {
    switch (subclass) {
        case Subclass::BenignPositive: return "BenignPositive";
        case Subclass::FalsePositiveLogic: return "FalsePositiveLogic";
        case Subclass::FalsePositiveData: return "FalsePositiveData";
        case Subclass::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

std::optional<Subclass> parse_subclass(std::string_view name) {
    if (name == "BenignPositive") return Subclass::BenignPositive;
    if (name == "FalsePositiveLogic") return Subclass::FalsePositiveLogic;
    if (name == "FalsePositiveData") return Subclass::FalsePositiveData;
    if (name == "Undetermined") return Subclass::Undetermined;
    return std::nullopt;
}

AlertTrace parse_alert(std::string_view text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::exception& error) {
        throw ParseError(ParseError::Code::MalformedDocument, "",
                         std::string("malformed document: ") + error.what());
    }
    if (!document.is_object()) {
        throw ParseError(ParseError::Code::MalformedDocument, "", "top level is not an object");
    }

    AlertTrace trace;
    trace.id = require_string(document, "id");
    trace.entity = require_string(document, "entity");
    trace.account = require_string(document, "account");
    trace.tenant = require_string(document, "tenant");
    trace.timestamp = require_integer(document, "timestamp");
    trace.time_iso = require_string(document, "time_iso");
    trace.risk_score = require_integer(document, "riskScore");

    const auto iso_epoch = parse_iso8601_utc(trace.time_iso);
    if (!iso_epoch) schema_error("time_iso", "not an ISO-8601 UTC timestamp");
    const std::int64_t delta = *iso_epoch - trace.timestamp;
    if (delta > 1 || delta < -1) {
        throw ParseError(ParseError::Code::TimestampMismatch, "time_iso",
                         "time_iso " + trace.time_iso + " disagrees with timestamp by " +
                             std::to_string(delta) + "s");
    }

    auto properties = document.find("properties");
    if (properties != document.end()) {
        if (!properties->is_object()) schema_error("properties", "not an object");
        for (const auto& [rule_key, rule_json] : properties->items()) {
            const std::string where = "properties." + rule_key;
            if (!rule_json.is_object()) schema_error(where, "not an object");

            TriggeredRule rule;
            auto behavior = rule_json.find("behaviorRule");
            if (behavior == rule_json.end()) schema_error(where + ".behaviorRule", "missing");
            if (!behavior->is_string()) schema_error(where + ".behaviorRule", "not a string");
            rule.behavior_rule = behavior->get<std::string>();

            if (auto description = rule_json.find("description"); description != rule_json.end()) {
                if (!description->is_string()) schema_error(where + ".description", "not a string");
                rule.description = description->get<std::string>();
            }
            if (auto risk = rule_json.find("riskScore"); risk != rule_json.end()) {
                if (!risk->is_number_integer()) schema_error(where + ".riskScore", "not an integer");
                rule.risk_score = risk->get<std::int64_t>();
            }
            if (auto attributes = rule_json.find("attributes"); attributes != rule_json.end()) {
                if (!attributes->is_object()) schema_error(where + ".attributes", "not an object");
                for (const auto& [attr_name, attr_value] : attributes->items()) {
                    if (!attr_value.is_string()) {
                        schema_error(where + ".attributes." + attr_name, "not a string");
                    }
                    rule.attributes.set(AttributeKey::parse(attr_name), attr_value.get<std::string>());
                }
            }
            if (auto risks = rule_json.find("risks"); risks != rule_json.end()) {
                if (!risks->is_array()) schema_error(where + ".risks", "not an array");
                std::vector<std::string> tags;
                for (const auto& tag : *risks) {
                    if (!tag.is_string()) schema_error(where + ".risks", "tag not a string");
                    tags.push_back(tag.get<std::string>());
                }
                rule.risks = std::move(tags);
            }
            trace.rules.push_back(std::move(rule));
        }
    }
    return trace;
}

std::string serialize_alert(const AlertTrace& trace) {
    json document = json::object();
    document["id"] = trace.id;
    document["entity"] = trace.entity;
    document["account"] = trace.account;
    document["tenant"] = trace.tenant;
    document["timestamp"] = trace.timestamp;
    document["time_iso"] = trace.time_iso;
    document["riskScore"] = trace.risk_score;

    json properties = json::object();
    for (const auto& rule : trace.rules) {
        std::string key = rule.behavior_rule;
        int suffix = 2;
        while (properties.contains(key)) {
            key = rule.behavior_rule + "#" + std::to_string(suffix++);
        }
        json rule_json = json::object();
        rule_json["behaviorRule"] = rule.behavior_rule;
        rule_json["description"] = rule.description;
        json attributes = json::object();
        for (const auto& [attr_key, value] : rule.attributes) {
            attributes[attr_key.name()] = value;
        }
        rule_json["attributes"] = std::move(attributes);
        rule_json["riskScore"] = rule.risk_score;
        if (rule.risks) {
            rule_json["risks"] = *rule.risks;
        }
        properties[key] = std::move(rule_json);
    }
    document["properties"] = std::move(properties);
    return document.dump();
}

std::vector<Violation> validate_trace(const AlertTrace& trace) {
    std::vector<Violation> violations;
    if (trace.id.empty()) violations.push_back({"id", "empty"});
    if (trace.entity.empty()) violations.push_back({"entity", "empty"});
    if (trace.risk_score < 0) violations.push_back({"risk_score", "negative"});

    const auto iso_epoch = parse_iso8601_utc(trace.time_iso);
    if (!iso_epoch) {
        violations.push_back({"time_iso", "unparseable"});
    } else {
        const std::int64_t delta = *iso_epoch - trace.timestamp;
        if (delta > 1 || delta < -1) {
            violations.push_back({"time_iso", "timestamp mismatch"});
        }
    }

    for (std::size_t i = 0; i < trace.rules.size(); ++i) {
        const auto& rule = trace.rules[i];
        const std::string prefix = "rules[" + std::to_string(i) + "].";
        if (rule.behavior_rule.empty()) violations.push_back({prefix + "behavior_rule", "empty"});
        if (rule.risk_score < 0) violations.push_back({prefix + "risk_score", "negative"});
    }
    return violations;
}

std::optional<std::string_view> get_attribute(const TriggeredRule& rule, const AttributeKey& key) {
    return rule.attributes.get(key);
}

}  // namespace triage
