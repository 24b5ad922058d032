#pragma once

#include <Eigen/Dense>
#include <random>

#include "qwalk/engine.hpp"
#include "qwalk/graph.hpp"

namespace qwalk::testing {

// Dense one-step evolution operator assembled straight from the defining
// pieces: per-vertex reflection coins (negated on marked vertices) composed
// with the arc-reversal permutation. Independent of the structured engine;
// usable up to a few hundred basis states.
Eigen::MatrixXcd dense_step_matrix(const GraphSpec& spec, const MarkedSet& marked);

Eigen::VectorXcd to_eigen(const StateVector& psi);
StateVector from_eigen(const GraphSpec& spec, const Eigen::VectorXcd& v);

StateVector random_state(const GraphSpec& spec, unsigned seed);

}  // namespace qwalk::testing
