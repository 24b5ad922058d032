#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qwalk/protocols.hpp"

namespace qwalk {

enum class SweepKind { search, sta_same, sta_diff, active_switch };

enum class TransferConfig { same_partition, diff_partition };

struct SweepPoint {
    int N = 0;
    int M = 0;
    double metric = 0.0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

// Ordinary least squares on (ln x, ln y). Throws std::invalid_argument for
// fewer than two points or nonpositive coordinates.
FitResult fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

struct SweepResult {
    SweepKind kind = SweepKind::search;
    std::string metric_name;
    std::vector<SweepPoint> points;  // M ascending within each N series
    FitResult fit;                   // slope of metric vs M over all points

    bool operator==(const SweepResult& o) const {
        if (kind != o.kind || metric_name != o.metric_name ||
            points.size() != o.points.size())
            return false;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i].N != o.points[i].N || points[i].M != o.points[i].M ||
                points[i].metric != o.points[i].metric)
                return false;
        return fit.slope == o.fit.slope && fit.intercept == o.fit.intercept &&
               fit.rms_residual == o.fit.rms_residual;
    }
};

std::vector<int> default_sweep_n();  // {10, 50, 100}
std::vector<int> default_sweep_m();  // {25, 50, 100, 200, 400}

// Runs each (N, M) at the scenario's optimal time and records the deviation
// from the ideal outcome: 1 - P(T) for search, F1 - F(T) for same-partition
// transfer, 1 - F(T) across partitions, 1 - F(2T) for the active switch.
// Points run concurrently; the reduced backend falls back to the full engine
// where its models do not apply.
SweepResult sweep(SweepKind kind, const std::vector<int>& n_list,
                  const std::vector<int>& m_list, Backend backend = Backend::reduced,
                  TransferConfig config = TransferConfig::same_partition,
                  double loop_weight = 1.0);

}  // namespace qwalk
