#include "qwalk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

FitResult fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("fit_loglog_slope: coordinates must be positive");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(points.size());
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double r2 = 0.0;
    for (const auto& [x, y] : points) {
        const double e = std::log(y) - (fit.intercept + fit.slope * std::log(x));
        r2 += e * e;
    }
    fit.rms_residual = std::sqrt(r2 / n);
    return fit;
}

std::vector<int> default_sweep_n() { return {10, 50, 100}; }
std::vector<int> default_sweep_m() { return {25, 50, 100, 200, 400}; }

namespace {

bool reduced_applies(SweepKind kind, const GraphSpec& spec,
                     TransferConfig config) {
    if (spec.loop_weight != 1.0) return false;
    switch (kind) {
        case SweepKind::search:
            return spec.partition_size >= 2;
        case SweepKind::sta_same:
            return spec.partition_size >= 3;
        case SweepKind::sta_diff:
            return spec.partition_size >= 2;
        case SweepKind::active_switch:
            return config == TransferConfig::same_partition ? spec.partition_size >= 3
                                                            : spec.partition_size >= 2;
    }
    return false;
}

double point_metric(SweepKind kind, const GraphSpec& spec, Backend backend,
                    TransferConfig config) {
    const Vertex a{1, 1};
    const Vertex b = config == TransferConfig::same_partition ? Vertex{1, 2} : Vertex{2, 1};
    switch (kind) {
        case SweepKind::search: {
            const int T = static_cast<int>(std::llround(search_T(spec)));
            const RunRecord rec = run_search(spec, a, T, backend);
            return 1.0 - rec.series.back().value;
        }
        case SweepKind::sta_same: {
            const FirstMax ideal = sta_same_first_max(spec, FrequencyMode::asymptotic);
            const int T = static_cast<int>(std::llround(ideal.t));
            const RunRecord rec =
                run_state_transfer(spec, Vertex{1, 1}, Vertex{1, 2}, InitState::loop, T,
                                   backend);
            return ideal.value - rec.series.back().value;
        }
        case SweepKind::sta_diff: {
            const int T = static_cast<int>(
                std::llround(sta_diff_T(spec, FrequencyMode::asymptotic)));
            const RunRecord rec = run_state_transfer(spec, Vertex{1, 1}, Vertex{2, 1},
                                                     InitState::loop, T, backend);
            return 1.0 - rec.series.back().value;
        }
        case SweepKind::active_switch: {
            const int T = static_cast<int>(std::llround(search_T(spec)));
            return 1.0 - run_switch_transfer(spec, a, b, T, backend).final_fidelity;
        }
    }
    throw std::logic_error("point_metric: unknown sweep kind");
}

}  // namespace

SweepResult sweep(SweepKind kind, const std::vector<int>& n_list,
                  const std::vector<int>& m_list, Backend backend, TransferConfig config,
                  double loop_weight) {
    if (n_list.empty() || m_list.empty())
        throw std::invalid_argument("sweep: empty parameter grid");
    std::vector<int> ns = n_list, ms = m_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

    SweepResult result;
    result.kind = kind;
    switch (kind) {
        case SweepKind::search: result.metric_name = "1-P(T)"; break;
        case SweepKind::sta_same: result.metric_name = "F1-F(T)"; break;
        case SweepKind::sta_diff: result.metric_name = "1-F(T)"; break;
        case SweepKind::active_switch: result.metric_name = "1-F(2T)"; break;
    }
    for (int N : ns)
        for (int M : ms) result.points.push_back({N, M, 0.0});

    // independent runs, one work item per grid point
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= result.points.size() || failed.load()) return;
            SweepPoint& p = result.points[i];
            const GraphSpec spec{p.M, p.N, loop_weight};
            try {
                const Backend chosen = backend == Backend::reduced &&
                                               reduced_applies(kind, spec, config)
                                           ? Backend::reduced
                                           : Backend::full;
                p.metric = point_metric(kind, spec, chosen, config);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    const int workers =
        std::min<int>(worker_count(), static_cast<int>(result.points.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(failure);

    std::vector<std::pair<double, double>> xy;
    for (const SweepPoint& p : result.points) xy.emplace_back(p.M, p.metric);
    result.fit = fit_loglog_slope(xy);
    return result;
}

}  // namespace qwalk
