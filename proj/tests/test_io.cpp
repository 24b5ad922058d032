#include <doctest.h>

#include <string>

#include "qwalk/io.hpp"
#include "qwalk/svg.hpp"

using namespace qwalk;

namespace {

RunRecord sample_record() {
    RunRecord r;
    r.scenario = "sta-diff";
    r.spec = {5, 3, 1.0};
    r.vertices = {{1, 1}, {2, 3}};
    r.init = "loop";
    r.backend = Backend::reduced;
    r.series = {{0, 0.0, 0.0, 0.0},
                {1, 0.012345678901234567, 0.001, 0.011345678901234567},
                {2, 1.0 / 3.0, 0.25, 1.0 / 3.0 - 0.25}};
    r.markers = {{"T_same", 92.55}, {"T_diff", 86.0}};
    r.wall_seconds = 0.125;
    return r;
}

}  // namespace

TEST_CASE("floats print with 12 significant digits") {
    CHECK(format_float(0.5) == "0.5");
    CHECK(format_float(1.0 / 3.0) == "0.333333333333");
    CHECK(format_float(1234567.89) == "1234567.89");
}

TEST_CASE("curve CSV format and round trip") {
    const RunRecord r = sample_record();
    const std::string csv = curve_csv(r);
    CHECK(csv.substr(0, 17) == "t,total,loop,arcs");
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');

    const auto parsed = parse_curve_csv(csv);
    REQUIRE(parsed.size() == r.series.size());
    // emit(parse(emit(x))) is byte-identical to emit(x)
    RunRecord reparsed = r;
    reparsed.series = parsed;
    CHECK(curve_csv(reparsed) == csv);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].t == r.series[i].t);
        CHECK(parsed[i].value == doctest::Approx(r.series[i].value).epsilon(1e-11));
    }
    CHECK_THROWS_AS(parse_curve_csv("a,b\n"), std::invalid_argument);
}

TEST_CASE("identical records emit identical bytes") {
    CHECK(curve_csv(sample_record()) == curve_csv(sample_record()));
}

TEST_CASE("JSON round trip is field-exact") {
    const RunRecord r = sample_record();
    const nlohmann::json j = to_json(r);
    const RunRecord back = run_record_from_json(j);
    CHECK(back == r);
    CHECK(run_record_from_json(nlohmann::json::parse(j.dump())) == r);
}

TEST_CASE("sweep serialization") {
    SweepResult s;
    s.kind = SweepKind::active_switch;
    s.metric_name = "1-F(2T)";
    s.points = {{10, 25, 0.0027}, {10, 50, 0.00018}, {10, 100, 0.0045}};
    s.fit = {-0.79, 1.25, 0.3};
    const std::string csv = sweep_csv(s);
    CHECK(csv.substr(0, 10) == "N,M,metric");
    const auto pts = parse_sweep_csv(csv);
    REQUIRE(pts.size() == 3);
    CHECK(pts[1].M == 50);

    const SweepResult back = sweep_result_from_json(to_json(s));
    CHECK(back == s);
}

TEST_CASE("SVG output is well-formed and self-contained") {
    PlotSpec plot;
    plot.title = "scaling < test >";
    plot.x_label = "M";
    plot.y_label = "1-P";
    plot.log_x = true;
    plot.log_y = true;
    plot.series.push_back(
        {"data", {{25, 0.005}, {50, 0.002}, {100, 0.003}, {400, 0.0003}}, "#806000",
         false});
    plot.series.push_back({"1/M", {{25, 0.01}, {400, 0.000625}}, "#c00000", true, true});
    const std::string svg = render_svg(plot);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    // escaped text, no external references
    CHECK(svg.find("&lt; test &gt;") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("url(") == std::string::npos);

    // every opened tag closes
    for (const char* tag : {"svg", "text", "polyline", "circle", "line", "rect"}) {
        std::size_t open = 0, close = 0, pos = 0;
        const std::string opener = std::string("<") + tag;
        const std::string closer = std::string("</") + tag + ">";
        while ((pos = svg.find(opener, pos)) != std::string::npos) {
            ++open;
            pos += opener.size();
        }
        pos = 0;
        std::size_t selfclosed = 0, scan = 0;
        while ((scan = svg.find(opener, scan)) != std::string::npos) {
            const std::size_t end = svg.find('>', scan);
            if (end != std::string::npos && svg[end - 1] == '/') ++selfclosed;
            scan = end;
        }
        while ((pos = svg.find(closer, pos)) != std::string::npos) {
            ++close;
            pos += closer.size();
        }
        CHECK(open == close + selfclosed);
    }
}
