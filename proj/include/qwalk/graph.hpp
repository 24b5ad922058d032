#pragma once

#include <complex>
#include <cstdint>
#include <utility>

namespace qwalk {

using cd = std::complex<double>;
using arc_id = std::int64_t;

// Complete M-partite graph with N vertices per partition and one weighted
// loop on every vertex. Partitions and vertex indices are 1-based in the
// public API.
struct GraphSpec {
    int partitions = 0;      // M, must be >= 3
    int partition_size = 0;  // N, >= 1
    double loop_weight = 1.0;

    int degree() const { return partition_size * (partitions - 1); }
    std::int64_t vertex_count() const {
        return static_cast<std::int64_t>(partition_size) * partitions;
    }
    bool operator==(const GraphSpec&) const = default;
};

// Throws std::invalid_argument if M < 3, N < 1 or loop_weight < 0.
void validate(const GraphSpec& spec);

struct Vertex {
    int partition = 1;  // 1..M
    int index = 1;      // 1..N

    bool operator==(const Vertex&) const = default;
    auto operator<=>(const Vertex&) const = default;
};

bool is_valid_vertex(const GraphSpec& spec, Vertex v);

// Number of basis states: one per directed arc plus one loop per vertex,
// n*(d+1) with n = N*M and d = N*(M-1).
std::int64_t hilbert_dim(const GraphSpec& spec);

// Vertex-major arc layout. Each vertex owns a contiguous block of d+1
// slots: the d outgoing arcs ordered by target (partition, index), the
// vertex's own partition skipped, and the loop in the final slot.
arc_id arc_index(const GraphSpec& spec, Vertex v, Vertex w);

// Inverse of arc_index. Throws std::out_of_range for id outside
// [0, hilbert_dim).
std::pair<Vertex, Vertex> arc_endpoints(const GraphSpec& spec, arc_id id);

}  // namespace qwalk
