#pragma once

#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Vertices carrying the marked coin -G. Empty, one or two vertices in all
// scenarios treated analytically; any size is accepted.
struct MarkedSet {
    std::vector<Vertex> vertices;

    static MarkedSet none() { return {}; }
    static MarkedSet of(Vertex m) { return {{m}}; }
    static MarkedSet of(Vertex a, Vertex b) { return {{a, b}}; }
    bool contains(Vertex v) const {
        for (const Vertex& m : vertices)
            if (m == v) return true;
        return false;
    }
};

// Per-vertex coin: reflection about the loop-weighted local superposition,
// negated on marked vertices. In place, one block at a time.
void apply_coin(StateVector& state, const GraphSpec& spec, const MarkedSet& marked);

// Flip-flop shift: amplitude at (v,w) swaps with (w,v), loops stay. In place.
void apply_shift(StateVector& state, const GraphSpec& spec);

// One walk step: coin followed by shift.
void step(StateVector& state, const GraphSpec& spec, const MarkedSet& marked);

// Equal-weight superposition over all non-loop arcs (loops excluded).
StateVector uniform_state(const GraphSpec& spec);

// Unit basis state on the loop of v.
StateVector loop_state(const GraphSpec& spec, Vertex v);

// Equal-weight superposition over the d outgoing arcs of v, loop excluded.
StateVector local_uniform_state(const GraphSpec& spec, Vertex v);

struct VertexProbability {
    double total = 0.0;  // = loop + arcs
    double loop = 0.0;
    double arcs = 0.0;
};

// Probability of finding the walker at v: |amplitude|^2 summed over all d+1
// slots of v's block, with the loop contribution reported separately.
VertexProbability vertex_probability(const StateVector& state, const GraphSpec& spec,
                                     Vertex v);

}  // namespace qwalk
