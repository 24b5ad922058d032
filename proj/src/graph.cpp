#include "qwalk/graph.hpp"

#include <stdexcept>
#include <string>

namespace qwalk {

void validate(const GraphSpec& spec) {
    if (spec.partitions < 3)
        throw std::invalid_argument("GraphSpec: need at least 3 partitions, got " +
                                    std::to_string(spec.partitions));
    if (spec.partition_size < 1)
        throw std::invalid_argument("GraphSpec: partition size must be positive");
    if (spec.loop_weight < 0.0)
        throw std::invalid_argument("GraphSpec: loop weight must be nonnegative");
}

bool is_valid_vertex(const GraphSpec& spec, Vertex v) {
    return v.partition >= 1 && v.partition <= spec.partitions && v.index >= 1 &&
           v.index <= spec.partition_size;
}

std::int64_t hilbert_dim(const GraphSpec& spec) {
    return spec.vertex_count() * (spec.degree() + 1);
}

namespace {

std::int64_t vertex_id(const GraphSpec& spec, Vertex v) {
    return static_cast<std::int64_t>(v.partition - 1) * spec.partition_size +
           (v.index - 1);
}

}  // namespace

arc_id arc_index(const GraphSpec& spec, Vertex v, Vertex w) {
    if (!is_valid_vertex(spec, v) || !is_valid_vertex(spec, w))
        throw std::invalid_argument("arc_index: vertex outside the graph");
    const int d = spec.degree();
    const std::int64_t block = vertex_id(spec, v) * (d + 1);
    if (v == w) return block + d;  // loop
    if (v.partition == w.partition)
        throw std::invalid_argument(
            "arc_index: no edge between distinct vertices of one partition");
    const int shifted =
        w.partition < v.partition ? w.partition - 1 : w.partition - 2;
    return block + static_cast<std::int64_t>(shifted) * spec.partition_size +
           (w.index - 1);
}

std::pair<Vertex, Vertex> arc_endpoints(const GraphSpec& spec, arc_id id) {
    if (id < 0 || id >= hilbert_dim(spec))
        throw std::out_of_range("arc_endpoints: arc id out of range");
    const int d = spec.degree();
    const std::int64_t vid = id / (d + 1);
    const int slot = static_cast<int>(id % (d + 1));
    const Vertex v{static_cast<int>(vid / spec.partition_size) + 1,
                   static_cast<int>(vid % spec.partition_size) + 1};
    if (slot == d) return {v, v};
    int wp = slot / spec.partition_size;
    if (wp >= v.partition - 1) ++wp;  // undo the skipped own partition
    return {v, Vertex{wp + 1, slot % spec.partition_size + 1}};
}

}  // namespace qwalk
