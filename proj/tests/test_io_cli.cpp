// Region file round trips, scene parsing, SVG determinism, and the CLI
// surface driven through the real binary (path injected via CCG_CLI_PATH).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "ccg/region_io.hpp"
#include "ccg/report.hpp"
#include "ccg/svg.hpp"

using namespace ccg;

namespace {

std::filesystem::path work_dir() {
    static std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "ccg_io_cli_tests";
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// Runs the CLI with shell-level redirection; returns the exit status.
int run_cli(const std::string& args, std::string* out = nullptr, std::string* err = nullptr) {
    std::string out_path = path_of("cli_stdout.txt");
    std::string err_path = path_of("cli_stderr.txt");
    std::string cmd = std::string("\"") + CCG_CLI_PATH + "\" " + args + " > " + out_path +
                      " 2> " + err_path;
    int rc = std::system(cmd.c_str());
    if (out) *out = read_file(out_path);
    if (err) *err = read_file(err_path);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

Region roundtrip(const Region& r) { return parse_region(region_json(r)); }

}  // namespace

TEST_CASE("polar encoding round trips about the model base") {
    for (const SpaceKind& sp :
         {SpaceKind::sphere(2), SpaceKind::euclidean(2), SpaceKind::hyperbolic(2)}) {
        Point base = model_base(sp);
        CHECK(distance(point_from_polar(sp, 1.3, 0.0), base) < 1e-15);
        auto [az0, d0] = polar_of_point(base);
        CHECK(az0 == 0.0);
        CHECK(d0 == 0.0);
        for (double az : {-2.8, -0.4, 0.0, 1.1, 3.0}) {
            for (double d : {0.2, 0.9, 1.4}) {
                Point p = point_from_polar(sp, az, d);
                auto [az2, d2] = polar_of_point(p);
                CHECK(distance(p, point_from_polar(sp, az2, d2)) < 1e-12);
                CHECK(std::fabs(d2 - d) < 1e-12);
                // azimuths agree modulo 2*pi
                double gap = std::fabs(std::remainder(az2 - az, 2 * pi));
                CHECK(gap < 1e-12);
            }
        }
    }
}

TEST_CASE("region files round trip for every kind and space") {
    SpaceKind H = SpaceKind::hyperbolic(2);
    SpaceKind E = SpaceKind::euclidean(2);
    SpaceKind S = SpaceKind::sphere(2);

    SUBCASE("disks") {
        struct Case {
            SpaceKind sp;
            double az, d, r;
        } cases[] = {{S, 0.7, 0.6, 0.8}, {E, 1.2, 2.0, 1.5}, {H, -2.1, 1.0, 0.9}};
        for (const auto& c : cases) {
            Region r = make_disk(point_from_polar(c.sp, c.az, c.d), c.r);
            Region q = roundtrip(r);
            CHECK(q.kind == RegionKind::disk);
            CHECK(q.space == r.space);
            CHECK(distance(q.center, r.center) < 1e-12);
            CHECK(std::fabs(q.radius - r.radius) < 1e-12);
            CHECK(region_equal(r, q, 1e-9));
        }
    }

    SUBCASE("paraball") {
        Region r = make_paraball(H, 0.9, -0.35);
        Region q = roundtrip(r);
        CHECK(q.kind == RegionKind::paraball);
        CHECK(std::fabs(q.ideal_angle - r.ideal_angle) < 1e-12);
        CHECK(std::fabs(q.horo_param - r.horo_param) < 1e-12);
        CHECK(region_equal(r, q, 1e-9));
    }

    SUBCASE("padded") {
        Region r = make_padded({geodesic_from_ideal_angles(H, 0.8, -0.8),
                                geodesic_from_ideal_angles(H, pi - 0.6, pi + 0.6)},
                               0.4);
        Region q = roundtrip(r);
        CHECK(q.kind == RegionKind::padded);
        CHECK(std::fabs(q.lambda - r.lambda) < 1e-12);
        REQUIRE(q.core.size() == r.core.size());
        for (size_t i = 0; i < r.core.size(); ++i) {
            CHECK(std::fabs(q.core[i].theta1 - r.core[i].theta1) < 1e-12);
            CHECK(std::fabs(q.core[i].theta2 - r.core[i].theta2) < 1e-12);
        }
        CHECK(region_equal(r, q, 1e-9));
    }

    SUBCASE("halfplanes") {
        auto dir_at = [](const Point& p, double ang) {
            auto fr = tangent_frame(p);
            return fr[0] * std::cos(ang) + fr[1] * std::sin(ang);
        };
        Point pe = model_base(E);
        Point ps = point_from_polar(S, 0.3, 0.5);
        std::vector<Region> cases = {
            make_halfplane(geodesic_from_ideal_angles(H, 2.2, -0.3)),
            make_halfplane(geodesic_through_direction(pe, dir_at(pe, 0.7))),
            make_halfplane(geodesic_through_direction(ps, dir_at(ps, 1.9))),
        };
        for (const Region& r : cases) {
            Region q = roundtrip(r);
            CHECK(q.kind == RegionKind::halfplane);
            CHECK(same_geodesic(q.boundary_line, r.boundary_line, 1e-12));
            CHECK(region_equal(r, q, 1e-9));
        }
    }

    SUBCASE("two-component padded region built by the mirror construction") {
        Region r = construct_two_component_region(H, 2 * pi / 3, 0.4, Isometry::identity(H));
        Region q = roundtrip(r);
        CHECK(region_equal(r, q, 1e-9));
    }
}

TEST_CASE("region parse failures") {
    CHECK_THROWS_AS(parse_region("not json at all"), parse_error);
    CHECK_THROWS_AS(parse_region("{\"space\": \"X2\", \"kind\": \"disk\"}"), parse_error);
    CHECK_THROWS_AS(
        parse_region("{\"space\": \"E2\", \"kind\": \"blob\"}"), parse_error);
    // missing required key
    CHECK_THROWS_AS(parse_region("{\"space\": \"E2\", \"kind\": \"disk\", \"radius\": 1.0}"),
                    parse_error);
    // well-formed file describing an invalid object: geometry error, not parse
    CHECK_THROWS_AS(parse_region("{\"space\": \"E2\", \"kind\": \"disk\", "
                                 "\"center\": {\"azimuth\": 0.0, \"distance\": 0.0}, "
                                 "\"radius\": -1.0}"),
                    geometry_error);
    CHECK_THROWS_AS(parse_region("{\"space\": \"E2\", \"kind\": \"paraball\", "
                                 "\"ideal_angle\": 0.0, \"axis_offset\": 0.1}"),
                    unsupported_region_error);
}

TEST_CASE("load_region reads files and reports I/O failures") {
    Region r = make_disk(point_from_polar(SpaceKind::hyperbolic(2), 0.4, 0.7), 0.6);
    std::string path = path_of("disk_h2.json");
    write_file(path, region_json(r));
    CHECK(region_equal(load_region(path), r, 1e-9));
    CHECK_THROWS_AS(load_region(path_of("does_not_exist.json")), io_failure_error);
}

TEST_CASE("scenes: construction, parsing, and space guards") {
    SpaceKind H = SpaceKind::hyperbolic(2);
    Scene s = make_scene(H);
    add_region(s, make_disk(model_base(H), 0.8), "a");
    add_cycle(s, make_paracycle(H, 0.3, -0.1), "edge");
    add_point(s, point_from_polar(H, 0.2, 0.3), "mark");
    CHECK(s.elements.size() == 3);
    CHECK_THROWS_AS(add_region(s, make_disk(model_base(SpaceKind::euclidean(2)), 1.0), "b"),
                    space_mismatch_error);

    std::string scene_text = R"({
      "space": "H2",
      "elements": [
        {"type": "region", "style": "a", "space": "H2", "kind": "disk",
         "center": {"azimuth": 0.0, "distance": 0.5}, "radius": 0.7},
        {"type": "cycle", "style": "edge", "cycle": "geodesic",
         "base": {"theta1": 0.4, "theta2": 2.9}},
        {"type": "point", "style": "mark", "position": {"azimuth": 1.0, "distance": 0.2}}
      ]
    })";
    Scene parsed = parse_scene(scene_text);
    CHECK(parsed.space == H);
    CHECK(parsed.elements.size() == 3);

    CHECK_THROWS_AS(parse_scene("{"), parse_error);
    CHECK_THROWS_AS(parse_scene(R"({"space": "H2", "elements": [{"type": "widget"}]})"),
                    parse_error);
    // element from another space must trip the scene guard, not parse
    CHECK_THROWS_AS(parse_scene(R"({
      "space": "H2",
      "elements": [{"type": "region", "space": "E2", "kind": "disk",
                    "center": {"azimuth": 0.0, "distance": 0.0}, "radius": 1.0}]})"),
                    space_mismatch_error);
}

TEST_CASE("svg output is deterministic and structurally sane") {
    SpaceKind H = SpaceKind::hyperbolic(2);

    SUBCASE("empty scene carries exactly the model circle") {
        Scene s = make_scene(H);
        std::string svg = render_svg(s);
        CHECK(svg.find("viewBox=\"-520 -520 1040 1040\"") != std::string::npos);
        CHECK(svg.find("class=\"model\"") != std::string::npos);
        size_t circles = 0;
        for (size_t at = svg.find("<circle"); at != std::string::npos;
             at = svg.find("<circle", at + 1))
            ++circles;
        CHECK(circles == 1);
        CHECK(render_svg(s) == svg);
    }

    SUBCASE("populated scene renders styled footprints and the lens path") {
        Point c1 = point_from_polar(H, 0.0, 0.4);
        Point c2 = point_from_polar(H, pi, 0.4);
        Region a = make_disk(c1, 0.9), b = make_disk(c2, 0.9);
        auto res = intersect_regions(a, b, default_tolerances());
        REQUIRE(res.polygon.has_value());

        Scene s = make_scene(H);
        add_region(s, a, "a");
        add_region(s, b, "b");
        add_polygon(s, *res.polygon, "lens");
        add_point(s, model_base(H), "center");
        std::string svg = render_svg(s);
        CHECK(svg.find("class=\"a\"") != std::string::npos);
        CHECK(svg.find("class=\"b\"") != std::string::npos);
        CHECK(svg.find("<path class=\"lens\"") != std::string::npos);
        CHECK(svg.find("class=\"center\"") != std::string::npos);  // cross marker
        CHECK(render_svg(s) == svg);
    }
}

TEST_CASE("cli: version and verify surface") {
    std::string out, err;
    CHECK(run_cli("--version", &out) == 0);
    CHECK(out.find(tool_version()) != std::string::npos);

    CHECK(run_cli("verify nosuch", &out, &err) == 2);
    CHECK(err.find("unknown experiment") != std::string::npos);

    // structured output is byte-deterministic for a fixed seed
    std::string f1 = path_of("verify1.json"), f2 = path_of("verify2.json");
    CHECK(run_cli("verify paraball_cases --trials 20 --seed 42 --format json --out " + f1) == 0);
    CHECK(run_cli("verify paraball_cases --trials 20 --seed 42 --format json --out " + f2) == 0);
    std::string j1 = read_file(f1);
    CHECK(j1 == read_file(f2));
    auto doc = nlohmann::json::parse(j1);
    CHECK(doc["schema"] == "ccg-report/1");
    CHECK(doc["seed"] == 42);
    CHECK(doc["passed"] == true);
    CHECK(doc["experiments"][0]["name"] == "paraball_cases");
    CHECK(!doc["experiments"][0].contains("elapsed_ms"));

    // --timing adds wall clock fields (and is allowed to break determinism)
    std::string ft = path_of("verify_t.json");
    CHECK(run_cli("verify paraball_cases --trials 10 --seed 42 --format json --timing --out " +
                  ft) == 0);
    auto timed = nlohmann::json::parse(read_file(ft));
    CHECK(timed["experiments"][0].contains("elapsed_ms"));

    // text format to stdout
    CHECK(run_cli("verify paraball_cases --trials 10 --format text", &out) == 0);
    CHECK(out.find("PASS") != std::string::npos);
    CHECK(out.find("experiments passed") != std::string::npos);

    // bad usage is rejected (exact code owned by the option parser)
    CHECK(run_cli("") != 0);
    CHECK(run_cli("verify --trials 0") != 0);
}

TEST_CASE("cli: full verify battery at smoke scale") {
    std::string f = path_of("verify_all.json");
    std::string err;
    int rc = run_cli("verify all --seed 20260817 --trials 30 --format json --out " + f, nullptr,
                     &err);
    INFO(err);
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(read_file(f));
    CHECK(doc["experiments"].size() == experiment_names().size());
    CHECK(doc["passed"] == true);
}

TEST_CASE("cli: intersect region files") {
    SpaceKind H = SpaceKind::hyperbolic(2);
    SpaceKind E = SpaceKind::euclidean(2);
    std::string out, err;

    std::string da = path_of("lens_a.json"), db = path_of("lens_b.json");
    write_file(da, region_json(make_disk(point_from_polar(H, 0.0, 0.4), 0.9)));
    write_file(db, region_json(make_disk(point_from_polar(H, pi, 0.4), 0.9)));

    SUBCASE("congruent lens with svg and report sidecars") {
        std::string svg1 = path_of("lens1.svg"), svg2 = path_of("lens2.svg");
        std::string repj = path_of("lens_report.json");
        CHECK(run_cli("intersect " + da + " " + db + " --svg " + svg1 + " --report " + repj,
                      &out) == 0);
        CHECK(out.rfind("Compact(2), symmetric, center=", 0) == 0);

        auto j = nlohmann::json::parse(read_file(repj));
        CHECK(j["schema"] == "ccg-intersect/1");
        CHECK(j["space"] == "H2");
        CHECK(j["kind"] == "compact");
        CHECK(j["arcs"] == 2);
        CHECK(j["symmetry"]["verdict"] == "symmetric");
        CHECK(j["symmetry"].contains("center"));
        CHECK(j["symmetry"]["center"]["distance"].get<double>() < 1e-6);

        std::string svg = read_file(svg1);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("class=\"lens\"") != std::string::npos);
        CHECK(run_cli("intersect " + da + " " + db + " --svg " + svg2) == 0);
        CHECK(read_file(svg2) == svg);
    }

    SUBCASE("paraball against itself keeps one ideal point") {
        std::string pa = path_of("paraball.json");
        write_file(pa, region_json(make_paraball(H, 0.9, -0.2)));
        CHECK(run_cli("intersect " + pa + " " + pa, &out) == 0);
        CHECK(out == "Noncompact, ideal points: 1, not symmetric\n");
    }

    SUBCASE("two-component kernel and its perturbation") {
        Region K = construct_two_component_region(H, 2 * pi / 3, 0.4, Isometry::identity(H));
        Region L = construct_two_component_region(
            H, 2 * pi / 3, 0.4, rotation_about_point(model_base(H), pi / 2));
        Region Lslid = transform_region(translation_along_geodesic(L.core[0], 0.02), L);
        std::string k = path_of("ctorK.json"), l = path_of("ctorL.json"),
                    ls = path_of("ctorLs.json");
        write_file(k, region_json(K));
        write_file(l, region_json(L));
        write_file(ls, region_json(Lslid));

        CHECK(run_cli("intersect " + k + " " + l, &out) == 0);
        CHECK(out.rfind("Compact(4), symmetric, center=", 0) == 0);
        CHECK(run_cli("intersect " + k + " " + ls, &out) == 0);
        CHECK(out == "Compact(4), not symmetric\n");
    }

    SUBCASE("disjoint, tangent, mismatched, and broken inputs") {
        std::string e1 = path_of("e2_unit.json"), e2 = path_of("e2_far.json"),
                    e3 = path_of("e2_touch.json");
        write_file(e1, region_json(make_disk(model_base(E), 0.5)));
        write_file(e2, region_json(make_disk(point_from_polar(E, 0.0, 5.0), 0.5)));
        write_file(e3, region_json(make_disk(point_from_polar(E, 0.0, 1.0), 0.5)));

        CHECK(run_cli("intersect " + e1 + " " + e2, &out) == 0);
        CHECK(out == "Empty\n");

        CHECK(run_cli("intersect " + e1 + " " + e3, &out) == 2);
        CHECK(out.rfind("EmptyInterior (", 0) == 0);

        CHECK(run_cli("intersect " + da + " " + e1, &out, &err) == 2);
        CHECK(err.find("space mismatch") != std::string::npos);

        CHECK(run_cli("intersect " + da + " " + path_of("missing.json"), &out, &err) == 3);

        std::string bad = path_of("bad.json");
        write_file(bad, "certainly { not json");
        CHECK(run_cli("intersect " + da + " " + bad) == 2);

        std::string neg = path_of("neg.json");
        write_file(neg,
                   "{\"space\": \"E2\", \"kind\": \"disk\", "
                   "\"center\": {\"azimuth\": 0.0, \"distance\": 0.0}, \"radius\": -1.0}");
        CHECK(run_cli("intersect " + e1 + " " + neg, &out, &err) == 2);
        CHECK(err.find("invalid region") != std::string::npos);
    }
}

TEST_CASE("cli: render scenes") {
    std::string scene = path_of("scene.json");
    write_file(scene, R"({
      "space": "H2",
      "elements": [
        {"type": "region", "style": "a", "space": "H2", "kind": "disk",
         "center": {"azimuth": 0.0, "distance": 0.5}, "radius": 0.7},
        {"type": "point", "style": "mark", "position": {"azimuth": 1.0, "distance": 0.2}}
      ]
    })");
    std::string s1 = path_of("scene1.svg"), s2 = path_of("scene2.svg");
    CHECK(run_cli("render " + scene + " " + s1) == 0);
    CHECK(run_cli("render " + scene + " " + s2) == 0);
    std::string svg = read_file(s1);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("class=\"model\"") != std::string::npos);
    CHECK(read_file(s2) == svg);

    std::string out, err;
    CHECK(run_cli("render " + scene + " -", &out) == 0);
    CHECK(out.find("</svg>") != std::string::npos);

    CHECK(run_cli("render " + path_of("no_scene.json") + " " + s1, &out, &err) == 3);
    std::string bad = path_of("bad_scene.json");
    write_file(bad, "{]");
    CHECK(run_cli("render " + bad + " " + s1, &out, &err) == 2);
}
