#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "triage/alert.hpp"
#include "triage/fixtures.hpp"
#include "triage/routing.hpp"

namespace triage {

// Scenarios map one-to-one onto workflows.
using Scenario = WorkflowId;

struct CorpusEntry {
    AlertTrace trace;
    GroundTruthLabel label;
    FixtureBundle fixtures;

    bool operator==(const CorpusEntry& other) const = default;
};

struct LabeledCorpus {
    std::vector<CorpusEntry> entries;
    std::uint64_t seed = 0;

    bool operator==(const LabeledCorpus& other) const = default;
};

struct GeneratorOptions {
    double actionable_rate = 0.2;
    double degenerate_rate = 0.05;  // deliberately malformed cases, at most
};

// Deterministic for fixed (scenario, seed, n): same call, same bytes.
// Labels are assigned by construction — the generator knows which side of
// each decision threshold it sampled — so a generated corpus is an exact
// oracle for the pipeline.
LabeledCorpus generate(Scenario scenario, std::uint64_t seed, std::size_t n,
                       const GeneratorOptions& options = {});

// traces.jsonl + labels.jsonl + fixtures.jsonl. Loading fails atomically:
// IoError for unreadable files, ParseError (with the line number in the
// message) for malformed rows or duplicate ids.
LabeledCorpus load_corpus(const std::filesystem::path& dir);
void write_corpus(const LabeledCorpus& corpus, const std::filesystem::path& dir);

}  // namespace triage
