#include "qwalk/protocols.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwalk/spectral.hpp"

namespace qwalk {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

SeriesPoint point_from(int t, const VertexProbability& p) {
    return {t, p.total, p.loop, p.arcs};
}

void add_transfer_markers(RunRecord& rec, const GraphSpec& spec) {
    if (spec.partition_size < 2) return;  // no spectral regime for N = 1
    // both candidate measurement times, so a mistimed readout is visible
    rec.markers.emplace_back("T_same", sta_same_first_max(spec).t);
    rec.markers.emplace_back("T_diff", sta_diff_T(spec));
}

}  // namespace

RunRecord run_search(const GraphSpec& spec, Vertex m, int t_max, Backend backend) {
    validate(spec);
    if (!is_valid_vertex(spec, m))
        throw std::invalid_argument("run_search: marked vertex outside the graph");
    if (t_max < 0) throw std::invalid_argument("run_search: negative step count");
    const auto t0 = clock_type::now();

    RunRecord rec;
    rec.scenario = "search";
    rec.spec = spec;
    rec.vertices = {m};
    rec.init = "uniform";
    rec.backend = backend;
    rec.markers.emplace_back("T_opt", search_T(spec));
    rec.series.reserve(t_max + 1);

    if (backend == Backend::reduced) {
        const ReducedModel model = build_search_model(spec, m);
        Eigen::VectorXcd c = model.uniform_coefficients();
        for (int t = 0;; ++t) {
            rec.series.push_back(point_from(t, model.vertex_probability(c, m)));
            if (t == t_max) break;
            c = model.matrix() * c;
        }
    } else {
        StateVector psi = uniform_state(spec);
        const MarkedSet marked = MarkedSet::of(m);
        for (int t = 0;; ++t) {
            rec.series.push_back(point_from(t, vertex_probability(psi, spec, m)));
            if (t == t_max) break;
            step(psi, spec, marked);
        }
    }
    rec.wall_seconds = seconds_since(t0);
    return rec;
}

RunRecord run_state_transfer(const GraphSpec& spec, Vertex s, Vertex r, InitState init,
                             int t_max, Backend backend) {
    validate(spec);
    if (!is_valid_vertex(spec, s) || !is_valid_vertex(spec, r))
        throw std::invalid_argument("run_state_transfer: vertex outside the graph");
    if (s == r) throw std::invalid_argument("run_state_transfer: sender equals receiver");
    if (t_max < 0) throw std::invalid_argument("run_state_transfer: negative step count");
    const auto t0 = clock_type::now();
    const bool same = s.partition == r.partition;

    RunRecord rec;
    rec.scenario = same ? "sta-same" : "sta-diff";
    rec.spec = spec;
    rec.vertices = {s, r};
    rec.init = init == InitState::loop ? "loop" : "local-uniform";
    rec.backend = backend;
    add_transfer_markers(rec, spec);
    rec.series.reserve(t_max + 1);

    if (backend == Backend::reduced) {
        const ReducedModel model =
            same ? build_sta_same_model(spec, s, r) : build_sta_diff_model(spec, s, r);
        Eigen::VectorXcd c = init == InitState::loop
                                 ? model.loop_coefficients(s).cast<cd>().eval()
                                 : model.local_uniform_coefficients(s).cast<cd>().eval();
        for (int t = 0;; ++t) {
            rec.series.push_back(point_from(t, model.vertex_probability(c, r)));
            if (t == t_max) break;
            c = model.matrix() * c;
        }
    } else {
        StateVector psi =
            init == InitState::loop ? loop_state(spec, s) : local_uniform_state(spec, s);
        const MarkedSet marked = MarkedSet::of(s, r);
        for (int t = 0;; ++t) {
            rec.series.push_back(point_from(t, vertex_probability(psi, spec, r)));
            if (t == t_max) break;
            step(psi, spec, marked);
        }
    }
    rec.wall_seconds = seconds_since(t0);
    return rec;
}

SwitchRun run_switch_transfer(const GraphSpec& spec, Vertex s, Vertex r, int T,
                              Backend backend) {
    validate(spec);
    if (!is_valid_vertex(spec, s) || !is_valid_vertex(spec, r))
        throw std::invalid_argument("run_switch_transfer: vertex outside the graph");
    if (T < 0) throw std::invalid_argument("run_switch_transfer: negative switch time");
    const auto t0 = clock_type::now();
    const bool same = s.partition == r.partition;

    SwitchRun run;
    run.switch_step = T;
    RunRecord& rec = run.record;
    rec.scenario = "switch";
    rec.spec = spec;
    rec.vertices = {s, r};
    rec.init = "loop";
    rec.backend = backend;
    rec.markers.emplace_back("switch_step", T);
    rec.markers.emplace_back("T_opt", 2.0 * T);
    rec.series.reserve(2 * T + 1);

    if (backend == Backend::reduced) {
        if (s == r)
            throw std::invalid_argument(
                "run_switch_transfer: sender equal to receiver needs the full backend");
        const ReducedModel model =
            same ? build_sta_same_model(spec, s, r) : build_sta_diff_model(spec, s, r);
        const Eigen::MatrixXd sender_phase = model.single_marked_matrix(MarkedOne::sender);
        const Eigen::MatrixXd receiver_phase =
            model.single_marked_matrix(MarkedOne::receiver);
        Eigen::VectorXcd c = model.loop_coefficients(s).cast<cd>().eval();
        for (int t = 0;; ++t) {
            rec.series.push_back(point_from(t, model.vertex_probability(c, r)));
            if (t == 2 * T) break;
            c = (t < T ? sender_phase : receiver_phase) * c;
        }
    } else {
        StateVector psi = loop_state(spec, s);
        const MarkedSet at_s = MarkedSet::of(s), at_r = MarkedSet::of(r);
        for (int t = 0;; ++t) {
            rec.series.push_back(point_from(t, vertex_probability(psi, spec, r)));
            if (t == 2 * T) break;
            step(psi, spec, t < T ? at_s : at_r);
        }
    }
    run.final_fidelity = rec.series.back().value;
    rec.wall_seconds = seconds_since(t0);
    return run;
}

SwitchDiagnostics switch_bound(const GraphSpec& spec, Vertex s, Vertex r, int T,
                               Backend backend) {
    validate(spec);
    if (T < 1) throw std::invalid_argument("switch_bound: needs at least one step");
    SwitchDiagnostics diag;

    if (backend == Backend::reduced) {
        const ReducedModel at_s = build_search_model(spec, s);
        const ReducedModel at_r = build_search_model(spec, r);
        const Eigen::VectorXd start = at_s.uniform_coefficients();
        Eigen::VectorXcd c = start.cast<cd>();
        for (int t = 0; t < T; ++t) c = at_s.matrix() * c;
        diag.alpha_s = c[0];
        diag.eps_s = std::sqrt(std::max(0.0, c.squaredNorm() - std::norm(diag.alpha_s)));
        for (int t = 0; t < T; ++t) c = at_s.matrix() * c;
        diag.beta_s = start.cast<cd>().dot(c);
        diag.delta_s = (c - diag.beta_s * start.cast<cd>()).norm();
        Eigen::VectorXcd cr = at_r.uniform_coefficients().cast<cd>();
        for (int t = 0; t < T; ++t) cr = at_r.matrix() * cr;
        diag.alpha_r = cr[0];
    } else {
        const StateVector start = uniform_state(spec);
        StateVector psi = start;
        const MarkedSet at_s = MarkedSet::of(s);
        for (int t = 0; t < T; ++t) step(psi, spec, at_s);
        diag.alpha_s = psi[arc_index(spec, s, s)];
        // the target is a basis state, so the remainder norm is pythagorean
        diag.eps_s =
            std::sqrt(std::max(0.0, psi.squared_norm() - std::norm(diag.alpha_s)));
        for (int t = 0; t < T; ++t) step(psi, spec, at_s);
        diag.beta_s = start.inner(psi);
        double rem = psi.squared_norm() - std::norm(diag.beta_s);
        diag.delta_s = std::sqrt(std::max(0.0, rem));
        StateVector psr = start;
        const MarkedSet at_r = MarkedSet::of(r);
        for (int t = 0; t < T; ++t) step(psr, spec, at_r);
        diag.alpha_r = psr[arc_index(spec, r, r)];
    }

    const double as = std::abs(diag.alpha_s);
    diag.bound = (std::abs(diag.alpha_r) * std::abs(diag.beta_s) - diag.delta_s -
                  diag.eps_s) /
                 as;
    diag.measured_fidelity = run_switch_transfer(spec, s, r, T, backend).final_fidelity;
    return diag;
}

std::array<double, 4> receiver_components(const StateVector& state,
                                          const GraphSpec& spec, Vertex s, Vertex r) {
    if (s.partition == r.partition)
        throw std::invalid_argument("receiver_components: cross-partition split only");
    const int d = spec.degree();
    const int N = spec.partition_size;
    std::array<double, 4> comp{};
    comp[0] = std::norm(state[arc_index(spec, r, r)]);
    comp[1] = std::norm(state[arc_index(spec, r, s)]);
    cd into_sender_partition{0.0, 0.0};
    for (int j = 1; j <= N; ++j)
        if (j != s.index)
            into_sender_partition += state[arc_index(spec, r, Vertex{s.partition, j})];
    comp[2] = N > 1 ? std::norm(into_sender_partition) / (N - 1) : 0.0;
    cd outward{0.0, 0.0};
    const std::int64_t block = arc_index(spec, r, r) - d;
    for (int slot = 0; slot < d; ++slot) {
        const auto [v, w] = arc_endpoints(spec, block + slot);
        if (w.partition != s.partition && w.partition != r.partition)
            outward += state[block + slot];
    }
    comp[3] = d > N ? std::norm(outward) / (d - N) : 0.0;
    return comp;
}

}  // namespace qwalk
