#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qwalk/engine.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

enum class Scenario {
    search_one_marked,   // 8 basis vectors
    sta_same_partition,  // 11 basis vectors, split 8 + 3
    sta_diff_partition,  // 22 basis vectors, split 12 + 10 (21 when M = 3)
};

// Which of the two special vertices carries the marked coin when only one
// of them is marked (active-switch phases).
enum class MarkedOne { sender, receiver };

// Exact invariant subspace of the evolution operator: an orthonormal basis
// of symmetry-adapted superpositions plus the reduced unitary acting on
// coefficient vectors. Basis vectors are uniform over disjoint arc classes
// and are materialized as full-space states only on demand.
class ReducedModel {
  public:
    Scenario scenario() const { return scenario_; }
    const GraphSpec& spec() const { return spec_; }
    Vertex sender() const { return sender_; }    // the marked vertex for search
    Vertex receiver() const { return receiver_; }

    int dimension() const { return static_cast<int>(class_size_.size()); }

    // Reduced unitary over the ordered basis; column j holds the expansion
    // of the evolved j-th basis vector.
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    // Symmetry split under the sender/receiver exchange (STA scenarios only).
    // change_of_basis columns express the even block followed by the odd
    // block in the ordered basis; matrix() equals the conjugated block
    // diagonal of even_block and odd_block.
    bool has_symmetry_blocks() const { return scenario_ != Scenario::search_one_marked; }
    const Eigen::MatrixXd& even_block() const { return even_block_; }  // 8x8 / 12x12
    const Eigen::MatrixXd& odd_block() const { return odd_block_; }    // 3x3 / 10x10
    const Eigen::MatrixXd& change_of_basis() const { return change_of_basis_; }
    std::vector<int> even_indices() const;  // positions of the even block
    std::vector<int> odd_indices() const;

    // Basis permutation of the exchange symmetry: basis vector i maps to
    // basis vector parity_permutation()[i]. Identity for search.
    const std::vector<int>& parity_permutation() const { return parity_perm_; }

    // Class of one arc in the ordered basis, -1 if outside the subspace.
    int classify(arc_id id) const;
    std::int64_t class_size(int i) const { return class_size_[i]; }

    // i-th basis vector as a full-space state (O(hilbert_dim) memory).
    StateVector materialize(int i) const;

    // Coefficients <nu_i|psi> for all i in one pass over the state.
    Eigen::VectorXcd to_coefficients(const StateVector& psi) const;

    struct Projection {
        Eigen::VectorXcd coefficients;
        double residual = 0.0;  // norm of the off-subspace remainder
    };
    Projection project(const StateVector& psi) const;

    // Known expansions in this basis.
    Eigen::VectorXd uniform_coefficients() const;               // search initial state
    Eigen::VectorXd loop_coefficients(Vertex v) const;          // loop at sender/receiver
    Eigen::VectorXd local_uniform_coefficients(Vertex v) const; // equal-weight at s or r

    // Probability of finding the walker at v (sender or receiver), split as
    // in vertex_probability, evaluated from a coefficient vector.
    VertexProbability vertex_probability(const Eigen::VectorXcd& c, Vertex v) const;

    // Evolution operator with only one of the two special vertices marked,
    // expressed in this basis (the subspace is closed under it as well).
    // STA scenarios only.
    Eigen::MatrixXd single_marked_matrix(MarkedOne which) const;

  private:
    friend ReducedModel build_search_model(const GraphSpec&, Vertex);
    friend ReducedModel build_sta_same_model(const GraphSpec&, Vertex, Vertex);
    friend ReducedModel build_sta_diff_model(const GraphSpec&, Vertex, Vertex);

    int raw_classify(arc_id id) const;  // class before dropping empty ones

    Scenario scenario_;
    GraphSpec spec_;
    Vertex sender_, receiver_;
    std::vector<std::int64_t> class_size_;
    std::vector<int> active_;      // ordered class ids (drops the empty one at M=3)
    std::vector<int> class_to_index_;
    std::vector<int> parity_perm_;
    Eigen::MatrixXd matrix_, even_block_, odd_block_, change_of_basis_;
};

// Search with one marked vertex: 8-dimensional invariant subspace.
// Requires N >= 2 and unit loop weight.
ReducedModel build_search_model(const GraphSpec& spec, Vertex m);

// State transfer, sender and receiver in one partition: 11 basis vectors,
// symmetry split 8 + 3. Requires N >= 3 and unit loop weight.
ReducedModel build_sta_same_model(const GraphSpec& spec, Vertex s, Vertex r);

// State transfer across partitions: 22 basis vectors, split 12 + 10. At
// M = 3 the class of arcs among the remaining partitions is empty and the
// corresponding basis vector is dropped. Requires N >= 2, unit loop weight.
ReducedModel build_sta_diff_model(const GraphSpec& spec, Vertex s, Vertex r);

// Max over basis vectors of the one-step deviation from the tabulated
// action, ||U nu_i - sum_j M_ji nu_j||, with the step built from `spec`
// (which may differ from the model's own spec, e.g. to probe a loop weight
// the tables do not cover). Bounds the off-subspace residual from above.
double check_closure(const ReducedModel& model, const GraphSpec& spec);

}  // namespace qwalk
