#include "qwalk/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qwalk {

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string curve_csv(const RunRecord& record) {
    std::string out = "t,total,loop,arcs\n";
    for (const SeriesPoint& p : record.series) {
        out += std::to_string(p.t);
        out += ',';
        out += format_float(p.value);
        out += ',';
        out += format_float(p.loop_component);
        out += ',';
        out += format_float(p.arc_component);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::vector<SeriesPoint> parse_curve_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_line(line) !=
                                       std::vector<std::string>{"t", "total", "loop", "arcs"})
        throw std::invalid_argument("parse_curve_csv: bad header");
    std::vector<SeriesPoint> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 4) throw std::invalid_argument("parse_curve_csv: bad row");
        series.push_back({std::stoi(f[0]), std::stod(f[1]), std::stod(f[2]),
                          std::stod(f[3])});
    }
    return series;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "N,M,metric\n";
    for (const SweepPoint& p : result.points) {
        out += std::to_string(p.N);
        out += ',';
        out += std::to_string(p.M);
        out += ',';
        out += format_float(p.metric);
        out += '\n';
    }
    return out;
}

std::vector<SweepPoint> parse_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        split_line(line) != std::vector<std::string>{"N", "M", "metric"})
        throw std::invalid_argument("parse_sweep_csv: bad header");
    std::vector<SweepPoint> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 3) throw std::invalid_argument("parse_sweep_csv: bad row");
        points.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2])});
    }
    return points;
}

std::string backend_name(Backend backend) {
    return backend == Backend::full ? "full" : "reduced";
}

Backend backend_from_name(const std::string& name) {
    if (name == "full") return Backend::full;
    if (name == "reduced") return Backend::reduced;
    throw std::invalid_argument("unknown backend: " + name);
}

std::string sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::search: return "search";
        case SweepKind::sta_same: return "sta-same";
        case SweepKind::sta_diff: return "sta-diff";
        case SweepKind::active_switch: return "switch";
    }
    return "search";
}

SweepKind sweep_kind_from_name(const std::string& name) {
    if (name == "search") return SweepKind::search;
    if (name == "sta-same") return SweepKind::sta_same;
    if (name == "sta-diff") return SweepKind::sta_diff;
    if (name == "switch") return SweepKind::active_switch;
    throw std::invalid_argument("unknown sweep kind: " + name);
}

nlohmann::json to_json(const RunRecord& record) {
    nlohmann::json j;
    j["scenario"] = record.scenario;
    j["spec"] = {{"partitions", record.spec.partitions},
                 {"partition_size", record.spec.partition_size},
                 {"loop_weight", record.spec.loop_weight}};
    nlohmann::json verts = nlohmann::json::array();
    for (const Vertex& v : record.vertices)
        verts.push_back({{"partition", v.partition}, {"index", v.index}});
    j["vertices"] = verts;
    j["init"] = record.init;
    j["backend"] = backend_name(record.backend);
    nlohmann::json markers = nlohmann::json::array();
    for (const auto& [name, value] : record.markers)
        markers.push_back({{"name", name}, {"value", value}});
    j["markers"] = markers;
    j["wall_seconds"] = record.wall_seconds;
    nlohmann::json series = nlohmann::json::array();
    for (const SeriesPoint& p : record.series)
        series.push_back({p.t, p.value, p.loop_component, p.arc_component});
    j["series"] = series;
    return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.scenario = j.at("scenario").get<std::string>();
    r.spec.partitions = j.at("spec").at("partitions").get<int>();
    r.spec.partition_size = j.at("spec").at("partition_size").get<int>();
    r.spec.loop_weight = j.at("spec").at("loop_weight").get<double>();
    for (const auto& v : j.at("vertices"))
        r.vertices.push_back({v.at("partition").get<int>(), v.at("index").get<int>()});
    r.init = j.at("init").get<std::string>();
    r.backend = backend_from_name(j.at("backend").get<std::string>());
    for (const auto& m : j.at("markers"))
        r.markers.emplace_back(m.at("name").get<std::string>(),
                               m.at("value").get<double>());
    r.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& p : j.at("series"))
        r.series.push_back({p.at(0).get<int>(), p.at(1).get<double>(),
                            p.at(2).get<double>(), p.at(3).get<double>()});
    return r;
}

nlohmann::json to_json(const SweepResult& result) {
    nlohmann::json j;
    j["scenario"] = sweep_kind_name(result.kind);
    j["metric"] = result.metric_name;
    nlohmann::json pts = nlohmann::json::array();
    for (const SweepPoint& p : result.points) pts.push_back({p.N, p.M, p.metric});
    j["points"] = pts;
    j["fit"] = {{"slope", result.fit.slope},
                {"intercept", result.fit.intercept},
                {"rms_residual", result.fit.rms_residual}};
    return j;
}

SweepResult sweep_result_from_json(const nlohmann::json& j) {
    SweepResult r;
    r.kind = sweep_kind_from_name(j.at("scenario").get<std::string>());
    r.metric_name = j.at("metric").get<std::string>();
    for (const auto& p : j.at("points"))
        r.points.push_back(
            {p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<double>()});
    r.fit.slope = j.at("fit").at("slope").get<double>();
    r.fit.intercept = j.at("fit").at("intercept").get<double>();
    r.fit.rms_residual = j.at("fit").at("rms_residual").get<double>();
    return r;
}

}  // namespace qwalk
