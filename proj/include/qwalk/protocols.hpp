#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/engine.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/reduced.hpp"

namespace qwalk {

enum class Backend { full, reduced };

enum class InitState { loop, local_uniform };

struct SeriesPoint {
    int t = 0;
    double value = 0.0;  // probability or fidelity, = loop + arcs
    double loop_component = 0.0;
    double arc_component = 0.0;
};

// Time series of one protocol run plus everything needed to reproduce it.
struct RunRecord {
    std::string scenario;  // "search" | "sta-same" | "sta-diff" | "switch"
    GraphSpec spec;
    std::vector<Vertex> vertices;  // marked, or {sender, receiver}
    std::string init;
    Backend backend = Backend::full;
    std::vector<SeriesPoint> series;
    std::vector<std::pair<std::string, double>> markers;  // optimal-time hints
    double wall_seconds = 0.0;

    bool operator==(const RunRecord& o) const {
        return scenario == o.scenario && spec == o.spec && vertices == o.vertices &&
               init == o.init && backend == o.backend && markers == o.markers &&
               wall_seconds == o.wall_seconds && series.size() == o.series.size() &&
               [&] {
                   for (std::size_t i = 0; i < series.size(); ++i) {
                       const SeriesPoint &a = series[i], &b = o.series[i];
                       if (a.t != b.t || a.value != b.value ||
                           a.loop_component != b.loop_component ||
                           a.arc_component != b.arc_component)
                           return false;
                   }
                   return true;
               }();
    }
};

// Search for one marked vertex from the equal-weight start; records the
// probability at the marked vertex for t = 0..t_max.
RunRecord run_search(const GraphSpec& spec, Vertex m, int t_max,
                     Backend backend = Backend::full);

// State transfer under the two-marked-vertex evolution; the configuration
// (same or different partitions) is detected from the vertices and decides
// which reduced model backs the reduced backend. Records fidelity at the
// receiver for t = 0..t_max.
RunRecord run_state_transfer(const GraphSpec& spec, Vertex s, Vertex r, InitState init,
                             int t_max, Backend backend = Backend::full);

struct SwitchRun {
    RunRecord record;
    double final_fidelity = 0.0;
    int switch_step = 0;
};

// Active switch: the loop state at the sender evolves T steps with only the
// sender marked, then T steps with only the receiver marked. The sender
// equal to the receiver degenerates to a plain 2T-step search (full backend
// only).
SwitchRun run_switch_transfer(const GraphSpec& spec, Vertex s, Vertex r, int T,
                              Backend backend = Backend::full);

struct SwitchDiagnostics {
    cd alpha_s{0.0, 0.0};  // target-state amplitude after T search steps at s
    cd alpha_r{0.0, 0.0};
    cd beta_s{0.0, 0.0};   // return amplitude after 2T steps
    double eps_s = 0.0;    // off-target remainder after T steps
    double delta_s = 0.0;  // off-start remainder after 2T steps
    double bound = 0.0;    // lower bound on sqrt(fidelity)
    double measured_fidelity = 0.0;
};

// Fidelity floor of the active switch assembled from single-vertex search
// quantities, |alpha_r|/|alpha_s| |beta_s| - |delta_s|/|alpha_s|
// - |eps_s|/|alpha_s|, together with the measured switch fidelity.
SwitchDiagnostics switch_bound(const GraphSpec& spec, Vertex s, Vertex r, int T,
                               Backend backend = Backend::full);

// Receiver-block probabilities for the cross-partition configuration:
// loop, arc back to the sender, arcs into the rest of the sender partition,
// arcs leaving both marked partitions.
std::array<double, 4> receiver_components(const StateVector& state,
                                          const GraphSpec& spec, Vertex s, Vertex r);

}  // namespace qwalk
