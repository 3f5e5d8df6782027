#pragma once

#include <string>
#include <vector>

#include "triage/alert.hpp"
#include "triage/report.hpp"

namespace triage {

// Escalate-on-any reconciliation of the workflow reports, plus subclass,
// observables and follow-ups. Throws EmptyReportsError on an empty report
// list (the router's totality guarantee makes that a programming error).
TriageReport synthesize(const AlertTrace& trace, const std::vector<WorkflowReport>& reports,
                        const std::vector<Violation>& violations);

// Priority table: data errors, then insufficient evidence, then
// contradicted rule premises, then benign-by-default.
Subclass classify_nonactionable(const std::vector<WorkflowReport>& reports,
                                const std::vector<Violation>& violations);

std::vector<Observable> extract_observables(const AlertTrace& trace,
                                            const std::vector<WorkflowReport>& reports);

// Byte-stable canonical document; parse_report inverts it.
std::string render_report(const TriageReport& report);
TriageReport parse_report(const std::string& text);

}  // namespace triage
