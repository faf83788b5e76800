// Structured run reports: a stable JSON schema plus an aligned text
// rendering. Wall-clock timings are opt-in because they break the
// byte-determinism guarantee of structured output.
#pragma once

#include <string>
#include <vector>

#include "ccg/experiments.hpp"

namespace ccg {

inline const char* tool_version() { return "0.1.0"; }

struct ReportDocument {
    std::uint64_t seed = 0;
    int trials = 0;
    Tolerances tolerances;
    std::vector<ExperimentReport> reports;
    bool with_timing = false;
    std::vector<double> elapsed_ms;  // parallel to reports when with_timing
};

bool document_passed(const ReportDocument& doc);

// Schema "ccg-report/1". Non-finite metric values serialize as strings
// ("inf", "-inf", "nan") so the document stays valid JSON.
std::string document_json(const ReportDocument& doc);

std::string document_text(const ReportDocument& doc);

// path "-" writes to stdout; anything else to the file, throwing
// io_failure_error when the file cannot be written.
void write_text_file(const std::string& path, const std::string& payload);

}  // namespace ccg
