#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/protocols.hpp"
#include "qwalk/sweep.hpp"

namespace qwalk {

// Floats are printed with 12 significant digits everywhere in CSV output.
std::string format_float(double x);

// Curve CSV: header "t,total,loop,arcs", one row per recorded step, LF line
// endings. Carries the series only; the JSON form carries the whole record.
std::string curve_csv(const RunRecord& record);
std::vector<SeriesPoint> parse_curve_csv(const std::string& text);

// Sweep CSV: header "N,M,metric".
std::string sweep_csv(const SweepResult& result);
std::vector<SweepPoint> parse_sweep_csv(const std::string& text);

nlohmann::json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const nlohmann::json& j);

std::string backend_name(Backend backend);
Backend backend_from_name(const std::string& name);

std::string sweep_kind_name(SweepKind kind);
SweepKind sweep_kind_from_name(const std::string& name);

}  // namespace qwalk
