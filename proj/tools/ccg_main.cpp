// ccg: run the verification suite, intersect region files, render scenes.
//
// Exit codes: 0 success (all selected experiments passed / intersection
// classified), 1 experiment failures, 2 usage or input errors (unknown
// experiment, parse error, space mismatch, degenerate contact), 3 I/O
// failures. No environment variables are consulted.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccg/region_io.hpp"
#include "ccg/report.hpp"
#include "ccg/svg.hpp"
#include "ccg/symmetry.hpp"

namespace {

using nlohmann::ordered_json;

ccg::Tolerances scaled_tolerances(double tol_scale) {
    ccg::Tolerances t = ccg::default_tolerances();
    t.symmetry *= tol_scale;
    t.tangency *= tol_scale;
    return t;
}

std::string chart_coords(const ccg::Point& p) {
    ccg::Vec xy = ccg::to_chart(ccg::conformal_chart(p.space), p);
    char b[64];
    std::snprintf(b, sizeof b, "(%.6f, %.6f)", xy[0], xy[1]);
    return b;
}

int run_verify(std::vector<std::string> names, std::uint64_t seed, int trials,
               double tol_scale, const std::string& format, const std::string& out,
               bool timing) {
    std::vector<std::string> known = ccg::experiment_names();
    bool all = names.empty();
    for (const std::string& n : names) all = all || n == "all";
    if (all) {
        names = known;
    } else {
        for (const std::string& n : names)
            if (std::find(known.begin(), known.end(), n) == known.end()) {
                std::ostringstream msg;
                msg << "unknown experiment: " << n << "\nknown experiments:";
                for (const std::string& k : known) msg << " " << k;
                std::cerr << msg.str() << "\n";
                return 2;
            }
    }

    ccg::ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.tolerances = scaled_tolerances(tol_scale);

    ccg::ReportDocument doc;
    doc.seed = seed;
    doc.trials = trials;
    doc.tolerances = cfg.tolerances;
    doc.with_timing = timing;
    for (const std::string& n : names) {
        auto t0 = std::chrono::steady_clock::now();
        doc.reports.push_back(ccg::run_experiment(n, cfg));
        auto t1 = std::chrono::steady_clock::now();
        doc.elapsed_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }

    std::string payload =
        format == "text" ? ccg::document_text(doc) : ccg::document_json(doc);
    try {
        ccg::write_text_file(out, payload);
    } catch (const ccg::io_failure_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return ccg::document_passed(doc) ? 0 : 1;
}

struct IntersectOutcome {
    std::string kind;        // empty, empty_interior, compact, noncompact
    std::string line;        // human-readable classification
    int arcs = 0;
    int ideal_points = 0;
    std::string verdict;     // symmetric, not_symmetric, indeterminate, unknown
    double residual = 0;
    std::optional<ccg::Point> center;
    std::optional<ccg::ArcPolygon> polygon;
    int exit_code = 0;
};

IntersectOutcome classify_intersection(const ccg::Region& a, const ccg::Region& b,
                                       const ccg::Tolerances& tol) {
    IntersectOutcome o;
    ccg::IntersectionResult res;
    try {
        res = ccg::intersect_regions(a, b, tol);
    } catch (const ccg::degenerate_contact_error& e) {
        o.kind = "empty_interior";
        o.line = std::string("EmptyInterior (") + e.what() + ")";
        o.verdict = "unknown";
        o.exit_code = 2;
        return o;
    } catch (const ccg::degenerate_vertex_error& e) {
        o.kind = "empty_interior";
        o.line = std::string("EmptyInterior (") + e.what() + ")";
        o.verdict = "unknown";
        o.exit_code = 2;
        return o;
    }

    switch (res.kind) {
        case ccg::IntersectionKind::empty:
            o.kind = "empty";
            o.line = "Empty";
            o.verdict = "unknown";
            return o;
        case ccg::IntersectionKind::empty_interior:
            o.kind = "empty_interior";
            o.line = "EmptyInterior";
            o.verdict = "unknown";
            o.exit_code = 2;
            return o;
        case ccg::IntersectionKind::compact: {
            o.kind = "compact";
            o.polygon = res.polygon;
            o.arcs = static_cast<int>(res.polygon->arcs.size());
            ccg::SymmetryReport s =
                ccg::is_centrally_symmetric_polygon(*res.polygon, tol.symmetry);
            o.residual = s.residual;
            std::ostringstream line;
            line << "Compact(" << o.arcs << ")";
            if (s.verdict == ccg::SymmetryVerdict::symmetric && s.center) {
                o.verdict = "symmetric";
                o.center = *s.center;
                line << ", symmetric, center=" << chart_coords(*s.center);
            } else if (s.verdict == ccg::SymmetryVerdict::indeterminate) {
                o.verdict = "indeterminate";
                line << ", symmetry indeterminate (residual " << s.residual << ")";
            } else {
                o.verdict = "not_symmetric";
                line << ", not symmetric";
            }
            o.line = line.str();
            return o;
        }
        case ccg::IntersectionKind::noncompact: {
            o.kind = "noncompact";
            o.ideal_points = ccg::ideal_component_count(res.ideal);
            std::ostringstream line;
            line << "Noncompact, ideal points: " << o.ideal_points;
            if (ccg::region_equal(a, b, 1e-9)) {
                ccg::SymmetryReport s = ccg::is_centrally_symmetric_region(a, tol.symmetry);
                o.residual = s.residual;
                if (s.verdict == ccg::SymmetryVerdict::symmetric && s.center) {
                    o.verdict = "symmetric";
                    o.center = *s.center;
                    line << ", symmetric, center=" << chart_coords(*s.center);
                } else {
                    o.verdict = "not_symmetric";
                    line << ", not symmetric";
                }
            } else if (o.ideal_points % 2 == 1) {
                // a half-turn has no fixed ideal point, so an odd ideal count
                // certifies asymmetry
                o.verdict = "not_symmetric";
                line << ", not symmetric";
            } else {
                o.verdict = "unknown";
                line << ", symmetry not determined";
            }
            o.line = line.str();
            return o;
        }
    }
    o.kind = "empty";
    o.line = "Empty";
    return o;
}

int run_intersect(const std::string& file_a, const std::string& file_b,
                  const std::string& svg_path, const std::string& report_path,
                  double tol_scale) {
    ccg::Region a, b;
    try {
        a = ccg::load_region(file_a);
        b = ccg::load_region(file_b);
    } catch (const ccg::io_failure_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ccg::parse_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ccg::geometry_error& e) {
        std::cerr << "invalid region: " << e.what() << "\n";
        return 2;
    }
    if (!(a.space == b.space)) {
        std::cerr << "space mismatch: " << a.space.name() << " vs " << b.space.name() << "\n";
        return 2;
    }

    ccg::Tolerances tol = scaled_tolerances(tol_scale);
    IntersectOutcome o;
    try {
        o = classify_intersection(a, b, tol);
    } catch (const ccg::geometry_error& e) {
        std::cerr << "intersection failed: " << e.what() << "\n";
        return 2;
    }
    std::cout << o.line << "\n";

    try {
        if (!svg_path.empty()) {
            ccg::Scene scene = ccg::make_scene(a.space);
            ccg::add_region(scene, a, "a");
            ccg::add_region(scene, b, "b");
            if (o.polygon) ccg::add_polygon(scene, *o.polygon, "lens");
            if (o.center) ccg::add_point(scene, *o.center, "center");
            ccg::write_text_file(svg_path, ccg::render_svg(scene));
        }
        if (!report_path.empty()) {
            ordered_json j;
            j["schema"] = "ccg-intersect/1";
            j["tool_version"] = ccg::tool_version();
            j["space"] = a.space.name();
            j["kind"] = o.kind;
            j["arcs"] = o.arcs;
            j["ideal_points"] = o.ideal_points;
            ordered_json sym;
            sym["verdict"] = o.verdict;
            sym["residual"] = std::isfinite(o.residual) ? ordered_json(o.residual)
                                                        : ordered_json("inf");
            if (o.center) {
                auto [azimuth, dist] = ccg::polar_of_point(*o.center);
                sym["center"] = {{"azimuth", azimuth}, {"distance", dist}};
            }
            j["symmetry"] = sym;
            ccg::write_text_file(report_path, j.dump(2) + "\n");
        }
    } catch (const ccg::io_failure_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return o.exit_code;
}

int run_render(const std::string& scene_path, const std::string& out_path) {
    std::ifstream f(scene_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open scene file: " << scene_path << "\n";
        return 3;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    try {
        ccg::Scene scene = ccg::parse_scene(buf.str());
        ccg::write_text_file(out_path, ccg::render_svg(scene));
    } catch (const ccg::parse_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ccg::geometry_error& e) {
        std::cerr << "invalid scene: " << e.what() << "\n";
        return 2;
    } catch (const ccg::io_failure_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-curvature geometry workbench"};
    app.set_version_flag("--version", ccg::tool_version());
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run verification experiments");
    std::vector<std::string> names;
    std::uint64_t seed = 20260817;
    int trials = 200;
    double tol_scale = 1.0;
    std::string format = "text", out = "-";
    bool timing = false;
    verify->add_option("names", names, "experiment names, or 'all'");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--trials", trials, "trials per experiment")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol", tol_scale, "scale factor on the verdict tolerance bands")
        ->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "text | structured | json")
        ->check(CLI::IsMember({"text", "structured", "json"}));
    verify->add_option("--out", out, "output path, '-' for stdout");
    verify->add_flag("--timing", timing, "include wall-clock timings (breaks byte determinism)");

    // intersect
    auto* intersect = app.add_subcommand("intersect", "intersect two region files");
    std::string file_a, file_b, svg_path, report_path;
    double itol_scale = 1.0;
    intersect->add_option("file_a", file_a, "first region file")->required();
    intersect->add_option("file_b", file_b, "second region file")->required();
    intersect->add_option("--svg", svg_path, "write an SVG of the configuration");
    intersect->add_option("--report", report_path, "write a structured JSON report");
    intersect->add_option("--tol", itol_scale, "scale factor on the verdict tolerance bands")
        ->check(CLI::PositiveNumber);

    // render
    auto* render = app.add_subcommand("render", "render a scene file to SVG");
    std::string scene_path, render_out;
    render->add_option("scene", scene_path, "scene file")->required();
    render->add_option("out", render_out, "output SVG path, '-' for stdout")->required();

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed())
        return run_verify(names, seed, trials, tol_scale,
                          format == "structured" ? "json" : format, out, timing);
    if (intersect->parsed())
        return run_intersect(file_a, file_b, svg_path, report_path, itol_scale);
    return run_render(scene_path, render_out);
}
