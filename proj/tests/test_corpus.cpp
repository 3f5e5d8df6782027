#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "triage/corpus.hpp"
#include "triage/errors.hpp"
#include "triage/orchestrator.hpp"
#include "triage/routing.hpp"

using namespace triage;
namespace fs = std::filesystem;

namespace {

const std::vector<Scenario> kAllScenarios = {
    Scenario::AddUser,      Scenario::AuthChange, Scenario::Coro,
    Scenario::MultipleISP,  Scenario::O365Guest,  Scenario::O365Login,
    Scenario::PowerShell,   Scenario::SalesforceAbnormalLogin,
    Scenario::SharePointFile, Scenario::Generic,
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("corpus-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("generation is deterministic and seed-sensitive") {
    for (const auto scenario : {Scenario::AddUser, Scenario::MultipleISP, Scenario::Generic}) {
        const auto first = generate(scenario, 42, 30);
        const auto second = generate(scenario, 42, 30);
        CHECK(first == second);

        const auto other = generate(scenario, 43, 30);
        CHECK(first.entries.size() == other.entries.size());
        CHECK_FALSE(first == other);
    }
}

TEST_CASE("corpus shape: rule and attribute budgets") {
    std::size_t total = 0;
    std::size_t degenerate = 0;
    for (const auto scenario : kAllScenarios) {
        const auto corpus = generate(scenario, 7, 100);
        REQUIRE(corpus.entries.size() == 100);
        std::set<std::string> ids;
        for (const auto& entry : corpus.entries) {
            ids.insert(entry.trace.id);
            ++total;

            bool shape_ok = entry.trace.rules.size() >= 2 && entry.trace.rules.size() <= 4;
            for (const auto& rule : entry.trace.rules) {
                const auto count = rule.attributes.size();
                shape_ok = shape_ok && count >= 6 && count <= 12;
            }
            if (!shape_ok) ++degenerate;

            // labels are well-formed: subclass present iff non-actionable
            CHECK(entry.label.actionable == !entry.label.subclass.has_value());
        }
        CHECK(ids.size() == corpus.entries.size());  // unique ids
    }
    // deliberately malformed cases stay within their documented budget
    CHECK(degenerate <= total / 20);
    CHECK(degenerate > 0);  // ...but they do exist
}

TEST_CASE("constructed labels match pipeline verdicts") {
    // the acceptance run covers every scenario at depth; keep this quick
    for (const auto scenario : {Scenario::AuthChange, Scenario::O365Login, Scenario::Coro}) {
        const auto corpus = generate(scenario, 3, 40);
        const auto outcomes = triage_batch(corpus, {}, 2);
        REQUIRE(outcomes.size() == corpus.entries.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto& label = corpus.entries[i].label;
            CHECK(outcomes[i].report.actionable() == label.actionable);
            if (!label.actionable && label.subclass) {
                CHECK(outcomes[i].report.subclass == label.subclass);
            }
        }
    }
}

TEST_CASE("scenario corpora route to their own workflow") {
    const RoutingTable router{RoutingConfig{}};
    for (const auto scenario : kAllScenarios) {
        const auto corpus = generate(scenario, 5, 25);
        for (const auto& entry : corpus.entries) {
            const auto routed = router.route(entry.trace);
            bool found = false;
            for (const auto id : routed) found = found || id == scenario;
            CHECK(found);
            if (scenario == Scenario::Generic) {
                CHECK(routed == std::vector<WorkflowId>{WorkflowId::Generic});
            }
        }
    }
}

TEST_CASE("write twice produces byte-identical files") {
    const auto corpus = generate(Scenario::PowerShell, 21, 25);
    TempDir first;
    TempDir second;
    write_corpus(corpus, first.path);
    write_corpus(corpus, second.path);
    for (const auto* name : {"traces.jsonl", "labels.jsonl", "fixtures.jsonl", "meta.json"}) {
        CAPTURE(name);
        CHECK(slurp(first.path / name) == slurp(second.path / name));
    }
}

TEST_CASE("write/load round trip") {
    auto corpus = generate(Scenario::AddUser, 9, 30);
    {
        auto extra = generate(Scenario::SharePointFile, 10, 10);
        corpus.entries.insert(corpus.entries.end(), extra.entries.begin(), extra.entries.end());
    }
    TempDir dir;
    write_corpus(corpus, dir.path);
    const auto loaded = load_corpus(dir.path);
    CHECK(loaded.entries == corpus.entries);
    CHECK(loaded.seed == corpus.seed);
}

TEST_CASE("loading rejects duplicates, mismatches and missing files") {
    const auto corpus = generate(Scenario::Coro, 13, 4);

    SUBCASE("duplicate trace id") {
        TempDir dir;
        write_corpus(corpus, dir.path);
        const auto traces = slurp(dir.path / "traces.jsonl");
        const auto first_line = traces.substr(0, traces.find('\n') + 1);
        std::ofstream out(dir.path / "traces.jsonl", std::ios::binary | std::ios::app);
        out << first_line;
        out.close();
        CHECK_THROWS_AS(load_corpus(dir.path), ParseError);
    }
    SUBCASE("label for an unknown trace") {
        TempDir dir;
        write_corpus(corpus, dir.path);
        std::ofstream out(dir.path / "labels.jsonl", std::ios::binary | std::ios::app);
        out << R"({"id":"ghost-0001","actionable":true})" << "\n";
        out.close();
        CHECK_THROWS_AS(load_corpus(dir.path), ParseError);
    }
    SUBCASE("malformed row points at its line") {
        TempDir dir;
        write_corpus(corpus, dir.path);
        std::ofstream out(dir.path / "fixtures.jsonl", std::ios::binary | std::ios::app);
        out << "{broken\n";
        out.close();
        try {
            load_corpus(dir.path);
            FAIL("expected ParseError");
        } catch (const ParseError& error) {
            const std::string what = error.what();
            CHECK(what.find("fixtures.jsonl:5") != std::string::npos);
        }
    }
    SUBCASE("missing directory") {
        CHECK_THROWS_AS(load_corpus("/nonexistent/corpus/dir"), IoError);
    }
    SUBCASE("missing labels file") {
        TempDir dir;
        write_corpus(corpus, dir.path);
        fs::remove(dir.path / "labels.jsonl");
        CHECK_THROWS_AS(load_corpus(dir.path), IoError);
    }
}

TEST_CASE("generator honors the options knobs") {
    GeneratorOptions all_benign;
    all_benign.actionable_rate = 0.0;
    const auto quiet = generate(Scenario::SharePointFile, 31, 60, all_benign);
    std::size_t actionable = 0;
    for (const auto& entry : quiet.entries) actionable += entry.label.actionable ? 1 : 0;
    CHECK(actionable == 0);

    GeneratorOptions all_hot;
    all_hot.actionable_rate = 1.0;
    all_hot.degenerate_rate = 0.0;
    const auto loud = generate(Scenario::SharePointFile, 31, 60, all_hot);
    actionable = 0;
    for (const auto& entry : loud.entries) actionable += entry.label.actionable ? 1 : 0;
    CHECK(actionable == 60);
}
