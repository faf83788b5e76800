#include "ccg/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace ccg {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

ordered_json tolerances_json(const Tolerances& t) {
    ordered_json j;
    j["form"] = t.form;
    j["geometry"] = t.geometry;
    j["symmetry"] = t.symmetry;
    j["membership"] = t.membership;
    j["tangency"] = t.tangency;
    j["chart_limit"] = t.chart_limit;
    return j;
}

ordered_json report_json(const ExperimentReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["trials_run"] = r.trials_run;
    j["failures"] = ordered_json::array();
    for (const ExperimentFailure& f : r.failures) {
        ordered_json fj;
        fj["seed"] = f.seed;
        fj["description"] = f.description;
        fj["witness"] = f.witness;
        j["failures"].push_back(fj);
    }
    j["metrics"] = ordered_json::object();
    for (const auto& [name, value] : r.metrics) j["metrics"][name] = json_number(value);
    j["notes"] = r.notes;
    return j;
}

}  // namespace

bool document_passed(const ReportDocument& doc) {
    for (const ExperimentReport& r : doc.reports)
        if (!r.passed) return false;
    return true;
}

std::string document_json(const ReportDocument& doc) {
    ordered_json j;
    j["schema"] = "ccg-report/1";
    j["tool_version"] = tool_version();
    j["seed"] = doc.seed;
    j["trials"] = doc.trials;
    j["tolerances"] = tolerances_json(doc.tolerances);
    j["passed"] = document_passed(doc);
    j["experiments"] = ordered_json::array();
    for (std::size_t i = 0; i < doc.reports.size(); ++i) {
        ordered_json rj = report_json(doc.reports[i]);
        if (doc.with_timing && i < doc.elapsed_ms.size())
            rj["elapsed_ms"] = json_number(doc.elapsed_ms[i]);
        j["experiments"].push_back(rj);
    }
    return j.dump(2) + "\n";
}

std::string document_text(const ReportDocument& doc) {
    std::ostringstream out;
    char line[256];
    out << "seed " << doc.seed << ", trials " << doc.trials << "\n";
    int passed = 0;
    for (std::size_t i = 0; i < doc.reports.size(); ++i) {
        const ExperimentReport& r = doc.reports[i];
        passed += r.passed ? 1 : 0;
        std::snprintf(line, sizeof line, "%-32s %s  trials=%d", r.name.c_str(),
                      r.passed ? "PASS" : "FAIL", r.trials_run);
        out << line;
        if (doc.with_timing && i < doc.elapsed_ms.size()) {
            std::snprintf(line, sizeof line, "  (%.1f ms)", doc.elapsed_ms[i]);
            out << line;
        }
        out << "\n";
        for (const auto& [name, value] : r.metrics) {
            std::snprintf(line, sizeof line, "    %-28s %g", name.c_str(), value);
            out << line << "\n";
        }
        for (const ExperimentFailure& f : r.failures) {
            out << "    !! seed=" << f.seed << " " << f.description;
            if (!f.witness.empty()) out << " | " << f.witness;
            out << "\n";
        }
    }
    out << passed << "/" << doc.reports.size() << " experiments passed\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& payload) {
    if (path == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_failure_error("cannot open for writing: " + path);
    f << payload;
    f.flush();
    if (!f) throw io_failure_error("write failed: " + path);
}

}  // namespace ccg
