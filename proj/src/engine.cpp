#include "qwalk/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "qwalk/parallel.hpp"

namespace qwalk {

int worker_count() {
    static const int cached = [] {
        if (const char* env = std::getenv("QWALK_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return cached;
}

void apply_coin(StateVector& state, const GraphSpec& spec, const MarkedSet& marked) {
    const int d = spec.degree();
    const double l = spec.loop_weight;
    const double inv = 1.0 / (d + l);
    const double omega_arc = std::sqrt(inv);            // reflection axis, arc slots
    const double omega_loop = std::sqrt(l) * omega_arc; // reflection axis, loop slot
    const std::int64_t n = spec.vertex_count();

    std::vector<std::int64_t> marked_vids;
    for (const Vertex& m : marked.vertices) {
        if (!is_valid_vertex(spec, m))
            throw std::invalid_argument("apply_coin: marked vertex outside the graph");
        marked_vids.push_back(static_cast<std::int64_t>(m.partition - 1) * spec.partition_size +
                              (m.index - 1));
    }

    const std::int64_t min_blocks = (1 << 20) / (d + 1) + 1;
    parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t vid = lo; vid < hi; ++vid) {
            cd* block = state.data() + vid * (d + 1);
            cd sum{0.0, 0.0};
            for (int s = 0; s < d; ++s) sum += block[s];
            const cd overlap = sum * omega_arc + block[d] * omega_loop;
            double sign = 1.0;
            for (std::int64_t mv : marked_vids)
                if (mv == vid) sign = -1.0;
            const cd two_arc = 2.0 * overlap * omega_arc;
            const cd two_loop = 2.0 * overlap * omega_loop;
            for (int s = 0; s < d; ++s) block[s] = sign * (two_arc - block[s]);
            block[d] = sign * (two_loop - block[d]);
        }
    }, min_blocks);
}

void apply_shift(StateVector& state, const GraphSpec& spec) {
    const int d = spec.degree();
    const int N = spec.partition_size;
    const std::int64_t n = spec.vertex_count();
    cd* a = state.data();

    // Each unordered arc pair is swapped by the thread owning the lower
    // vertex block, so writes never collide.
    const std::int64_t min_blocks = (1 << 20) / (d + 1) + 1;
    parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t vid = lo; vid < hi; ++vid) {
            const int vp = static_cast<int>(vid / N);
            const int vi = static_cast<int>(vid % N);
            // targets in partitions above vp have vertex ids above vid
            for (int wp = vp + 1; wp < spec.partitions; ++wp) {
                const std::int64_t here = vid * (d + 1) +
                                          static_cast<std::int64_t>(wp - 1) * N;
                // slot of v inside w's block: v's partition is below wp
                const std::int64_t back_slot = static_cast<std::int64_t>(vp) * N + vi;
                for (int k = 0; k < N; ++k) {
                    const std::int64_t wvid = static_cast<std::int64_t>(wp) * N + k;
                    const std::int64_t there = wvid * (d + 1) + back_slot;
                    const cd tmp = a[here + k];
                    a[here + k] = a[there];
                    a[there] = tmp;
                }
            }
        }
    }, min_blocks);
}

void step(StateVector& state, const GraphSpec& spec, const MarkedSet& marked) {
    apply_coin(state, spec, marked);
    apply_shift(state, spec);
}

StateVector uniform_state(const GraphSpec& spec) {
    validate(spec);
    const int d = spec.degree();
    const std::int64_t n = spec.vertex_count();
    StateVector psi(hilbert_dim(spec));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n) * d);
    for (std::int64_t vid = 0; vid < n; ++vid) {
        cd* block = psi.data() + vid * (d + 1);
        for (int s = 0; s < d; ++s) block[s] = amp;
    }
    return psi;
}

StateVector loop_state(const GraphSpec& spec, Vertex v) {
    validate(spec);
    StateVector psi(hilbert_dim(spec));
    psi[arc_index(spec, v, v)] = 1.0;
    return psi;
}

StateVector local_uniform_state(const GraphSpec& spec, Vertex v) {
    validate(spec);
    if (!is_valid_vertex(spec, v))
        throw std::invalid_argument("local_uniform_state: vertex outside the graph");
    const int d = spec.degree();
    StateVector psi(hilbert_dim(spec));
    const std::int64_t block = arc_index(spec, v, v) - d;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int s = 0; s < d; ++s) psi[block + s] = amp;
    return psi;
}

VertexProbability vertex_probability(const StateVector& state, const GraphSpec& spec,
                                     Vertex v) {
    if (!is_valid_vertex(spec, v))
        throw std::invalid_argument("vertex_probability: vertex outside the graph");
    const int d = spec.degree();
    const std::int64_t block = arc_index(spec, v, v) - d;
    VertexProbability p;
    for (int s = 0; s < d; ++s) p.arcs += std::norm(state[block + s]);
    p.loop = std::norm(state[block + d]);
    p.total = p.arcs + p.loop;
    return p;
}

}  // namespace qwalk
