#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace triage {

// The closed attribute vocabulary of the trace schema. Keys outside the
// vocabulary are carried as Unknown with their original spelling.
enum class AttrKind {
    Username,
    Arn,
    UserType,
    ClientIp,
    ActorIp,
    City,
    Country,
    Isp,
    Os,
    BrowserType,
    Hostname,
    Workload,
    Operation,
    EventName,
    CmdLine,
    ParentProcess,
    FileName,
    ExploitPath,
    Mfa,
    Severity,
    Remediation,
    Verdict,
    TargetUser,
    Unknown,
};

class AttributeKey {
public:
    AttributeKey() = default;

    // Canonical spelling -> known kind; anything else -> Unknown(name).
    static AttributeKey parse(std::string_view name);
    static AttributeKey of(AttrKind kind);  // kind must not be Unknown
    static AttributeKey unknown(std::string name);

    AttrKind kind() const { return kind_; }
    // Render: canonical spelling for known keys, verbatim name for Unknown.
    const std::string& name() const;

    bool operator==(const AttributeKey& other) const {
        if (kind_ != other.kind_) return false;
        return kind_ != AttrKind::Unknown || name_ == other.name_;
    }
    bool operator!=(const AttributeKey& other) const { return !(*this == other); }

private:
    AttrKind kind_ = AttrKind::Unknown;
    std::string name_;  // populated for Unknown only
};

// Insertion-ordered key/value pairs. Traces carry 6-12 attributes per
// rule, so linear lookup is the right trade.
class AttributeMap {
public:
    using Entry = std::pair<AttributeKey, std::string>;
    using const_iterator = std::vector<Entry>::const_iterator;

    void set(AttributeKey key, std::string value);
    std::optional<std::string_view> get(const AttributeKey& key) const;
    std::optional<std::string_view> get(AttrKind kind) const;
    bool contains(const AttributeKey& key) const { return get(key).has_value(); }
    bool contains(AttrKind kind) const { return get(kind).has_value(); }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const_iterator begin() const { return entries_.begin(); }
    const_iterator end() const { return entries_.end(); }

    bool operator==(const AttributeMap& other) const { return entries_ == other.entries_; }

private:
    std::vector<Entry> entries_;
};

struct TriggeredRule {
    std::string behavior_rule;
    std::string description;
    AttributeMap attributes;
    std::int64_t risk_score = 0;
    std::optional<std::vector<std::string>> risks;

    bool operator==(const TriggeredRule& other) const = default;
};

struct AlertTrace {
    std::string id;
    std::string entity;   // user email, IAM role ARN, or endpoint hostname
    std::string account;
    std::string tenant;
    std::int64_t timestamp = 0;  // seconds since Unix epoch
    std::string time_iso;
    std::int64_t risk_score = 0;  // ticket total, independent of rule-local scores
    std::vector<TriggeredRule> rules;

    bool operator==(const AlertTrace& other) const = default;
};

enum class Subclass {
    BenignPositive,
    FalsePositiveLogic,
    FalsePositiveData,
    Undetermined,
};

std::string_view subclass_name(Subclass subclass);
std::optional<Subclass> parse_subclass(std::string_view name);

struct GroundTruthLabel {
    bool actionable = false;
    std::optional<Subclass> subclass;  // present iff non-actionable

    bool operator==(const GroundTruthLabel& other) const = default;
};

struct Violation {
    std::string field;
    std::string reason;

    bool operator==(const Violation& other) const = default;
};

// Strict parse of one trace interchange document. Throws ParseError:
// MalformedDocument for unparseable text, SchemaViolation for a missing or
// ill-typed required field, TimestampMismatch when time_iso and timestamp
// disagree by more than one second.
AlertTrace parse_alert(std::string_view text);

// Canonical single-line form of the interchange format.
std::string serialize_alert(const AlertTrace& trace);

// Value-level invariant check. Violations are data, not errors; the
// pipeline degrades them into subclassified verdicts.
std::vector<Violation> validate_trace(const AlertTrace& trace);

std::optional<std::string_view> get_attribute(const TriggeredRule& rule, const AttributeKey& key);

}  // namespace triage
