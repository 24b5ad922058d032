#include <doctest.h>

#include <cmath>

#include "dense_oracle.hpp"
#include "qwalk/reduced.hpp"

using namespace qwalk;
using qwalk::testing::dense_step_matrix;
using qwalk::testing::random_state;
using qwalk::testing::to_eigen;

namespace {

ReducedModel build(Scenario sc, const GraphSpec& spec) {
    switch (sc) {
        case Scenario::search_one_marked:
            return build_search_model(spec, {1, 1});
        case Scenario::sta_same_partition:
            return build_sta_same_model(spec, {1, 1}, {1, 2});
        case Scenario::sta_diff_partition:
            return build_sta_diff_model(spec, {1, 1}, {2, 1});
    }
    throw std::logic_error("unreachable");
}

MarkedSet marked_of(const ReducedModel& m) {
    return m.scenario() == Scenario::search_one_marked
               ? MarkedSet::of(m.sender())
               : MarkedSet::of(m.sender(), m.receiver());
}

// reduced matrix measured from the full space, one column per basis vector
Eigen::MatrixXcd projected_matrix(const ReducedModel& model) {
    const int dim = model.dimension();
    Eigen::MatrixXcd out(dim, dim);
    for (int j = 0; j < dim; ++j) {
        StateVector psi = model.materialize(j);
        step(psi, model.spec(), marked_of(model));
        out.col(j) = model.to_coefficients(psi);
    }
    return out;
}

const std::vector<GraphSpec> probe_specs = {GraphSpec{3, 3}, GraphSpec{5, 4},
                                            GraphSpec{4, 5}};
const std::vector<Scenario> all_scenarios = {Scenario::search_one_marked,
                                             Scenario::sta_same_partition,
                                             Scenario::sta_diff_partition};

}  // namespace

TEST_CASE("bases are orthonormal and class sizes match enumeration") {
    for (Scenario sc : all_scenarios)
        for (const GraphSpec& spec : probe_specs) {
            const ReducedModel model = build(sc, spec);
            std::vector<StateVector> basis;
            for (int i = 0; i < model.dimension(); ++i)
                basis.push_back(model.materialize(i));
            for (int i = 0; i < model.dimension(); ++i) {
                std::int64_t members = 0;
                for (arc_id a = 0; a < hilbert_dim(spec); ++a)
                    if (model.classify(a) == i) ++members;
                CHECK(members == model.class_size(i));
                for (int j = 0; j <= i; ++j) {
                    const cd g = basis[i].inner(basis[j]);
                    CHECK(std::abs(g - (i == j ? cd{1.0} : cd{0.0})) < 1e-12);
                }
            }
        }
}

TEST_CASE("reduced matrices are unitary and certified by the full space") {
    for (Scenario sc : all_scenarios)
        for (const GraphSpec& spec : probe_specs) {
            const ReducedModel model = build(sc, spec);
            const int dim = model.dimension();
            const Eigen::MatrixXd& A = model.matrix();
            CHECK((A.transpose() * A - Eigen::MatrixXd::Identity(dim, dim))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);

            CHECK(check_closure(model, spec) < 1e-12);

            // coefficient-table entries against the independently projected ones
            const Eigen::MatrixXcd P = projected_matrix(model);
            CHECK(P.imag().cwiseAbs().maxCoeff() < 1e-14);
            CHECK((P.real() - A).cwiseAbs().maxCoeff() < 1e-12);

            // the exchange symmetry commutes with the evolution
            Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(dim, dim);
            for (int i = 0; i < dim; ++i) perm(model.parity_permutation()[i], i) = 1.0;
            CHECK((perm * A - A * perm).cwiseAbs().maxCoeff() < 1e-12);

            if (model.has_symmetry_blocks()) {
                const Eigen::MatrixXd& V = model.change_of_basis();
                const Eigen::MatrixXd blocks = V.transpose() * P.real() * V;
                const int ne = static_cast<int>(model.even_block().rows());
                const int no = static_cast<int>(model.odd_block().rows());
                CHECK(blocks.topRightCorner(ne, no).cwiseAbs().maxCoeff() < 1e-12);
                CHECK(blocks.bottomLeftCorner(no, ne).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((blocks.topLeftCorner(ne, ne) - model.even_block())
                          .cwiseAbs()
                          .maxCoeff() < 1e-12);
                CHECK((blocks.bottomRightCorner(no, no) - model.odd_block())
                          .cwiseAbs()
                          .maxCoeff() < 1e-12);
            }
        }
}

TEST_CASE("search model, exact column and initial expansion at N=3 M=3") {
    const GraphSpec spec{3, 3};  // d = 6
    const ReducedModel model = build_search_model(spec, {1, 1});
    const Eigen::MatrixXd& A = model.matrix();
    CHECK(A(0, 0) == doctest::Approx(5.0 / 7).epsilon(1e-15));
    CHECK(A(4, 0) == doctest::Approx(-2.0 * std::sqrt(6.0) / 7).epsilon(1e-15));
    for (int i : {1, 2, 3, 5, 6, 7}) CHECK(A(i, 0) == 0.0);

    const double d = spec.degree(), N = spec.partition_size;
    const double root_n = std::sqrt(static_cast<double>(spec.vertex_count()));
    const Eigen::VectorXd c = model.uniform_coefficients();
    CHECK(c[1] == doctest::Approx(1.0 / root_n).epsilon(1e-15));
    CHECK(c[4] == doctest::Approx(1.0 / root_n).epsilon(1e-15));
    CHECK(c[6] == doctest::Approx(std::sqrt(d - N) / root_n).epsilon(1e-15));
    CHECK(c[3] == doctest::Approx(std::sqrt(N - 1) / root_n).epsilon(1e-15));
    CHECK(c[5] == doctest::Approx(std::sqrt(N - 1) / root_n).epsilon(1e-15));
    CHECK(c[0] == 0.0);
    CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-14));

    // the same expansion measured against the full-space state
    const Eigen::VectorXcd measured = model.to_coefficients(uniform_state(spec));
    CHECK((measured - c.cast<cd>()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("odd-block action is exact") {
    const ReducedModel same = build_sta_same_model({4, 4}, {1, 1}, {1, 3});
    CHECK(same.odd_block()(1, 2) == -1.0);  // third odd vector maps to minus the second
    CHECK(same.odd_block()(0, 2) == 0.0);
    CHECK(same.odd_block()(2, 2) == 0.0);

    const ReducedModel diff = build_sta_diff_model({4, 3}, {1, 2}, {3, 1});
    CHECK(diff.odd_block()(3, 8) == -1.0);
    CHECK(diff.odd_block()(7, 9) == -1.0);
}

TEST_CASE("swapping sender and receiver permutes the basis") {
    const GraphSpec spec{3, 4};
    const ReducedModel fwd = build_sta_same_model(spec, {1, 1}, {1, 2});
    const ReducedModel bwd = build_sta_same_model(spec, {1, 2}, {1, 1});
    for (int i = 0; i < fwd.dimension(); ++i) {
        const StateVector a = fwd.materialize(i);
        const StateVector b = bwd.materialize(fwd.parity_permutation()[i]);
        for (std::int64_t k = 0; k < a.dim(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("symmetry block index sets") {
    const ReducedModel same = build_sta_same_model({4, 3}, {1, 1}, {1, 2});
    CHECK(same.even_indices() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(same.odd_indices() == std::vector<int>{8, 9, 10});
    const ReducedModel diff = build_sta_diff_model({4, 3}, {1, 1}, {2, 1});
    CHECK(diff.even_indices().size() == 12);
    CHECK(diff.odd_indices().front() == 12);
    CHECK(diff.odd_indices().size() == 10);
}

TEST_CASE("three partitions drop the empty outer-edge class") {
    const GraphSpec spec{3, 3};
    const ReducedModel model = build_sta_diff_model(spec, {1, 1}, {2, 1});
    CHECK(model.dimension() == 21);
    CHECK(model.even_block().rows() == 11);
    CHECK(model.odd_block().rows() == 10);
    CHECK(check_closure(model, spec) < 1e-12);
    const Eigen::MatrixXd& A = model.matrix();
    CHECK((A.transpose() * A - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("builder preconditions") {
    CHECK_THROWS_AS(build_search_model({3, 1}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_search_model(GraphSpec{3, 3, 0.5}, {1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_sta_same_model({4, 2}, {1, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_sta_same_model({4, 4}, {1, 1}, {2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_sta_same_model({4, 4}, {1, 1}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_sta_diff_model({4, 4}, {1, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_sta_diff_model({4, 1}, {1, 1}, {2, 1}), std::invalid_argument);
}

TEST_CASE("projection: coefficients and residuals") {
    const GraphSpec spec{4, 3};
    const ReducedModel model = build_search_model(spec, {2, 2});

    const auto on_loop = model.project(loop_state(spec, {2, 2}));
    CHECK(std::abs(on_loop.coefficients[0] - cd{1.0}) < 1e-15);
    CHECK(on_loop.coefficients.tail(7).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(on_loop.residual < 1e-15);

    CHECK(model.project(uniform_state(spec)).residual < 1e-13);

    CHECK(model.project(random_state(spec, 11)).residual > 0.1);
}

TEST_CASE("a perturbed basis vector leaves the subspace") {
    const GraphSpec spec{4, 3};
    const ReducedModel model = build_search_model(spec, {1, 1});
    StateVector psi = model.materialize(6);
    psi[arc_index(spec, {2, 1}, {3, 2})] += 1e-3;  // off-axis poke inside the class
    psi.scale(1.0 / psi.norm());
    step(psi, spec, MarkedSet::of(model.sender()));
    CHECK(model.project(psi).residual > 1e-4);
}

TEST_CASE("the tables assume unit loop weight") {
    const GraphSpec unit{4, 3};
    const ReducedModel model = build_search_model(unit, {1, 1});
    const GraphSpec loopless{4, 3, 0.0};
    CHECK(check_closure(model, loopless) > 1e-2);
}

TEST_CASE("coefficient evolution tracks the projected full evolution") {
    for (Scenario sc : all_scenarios) {
        const GraphSpec spec{3, 3};
        const ReducedModel model =
            sc == Scenario::sta_same_partition ? build(sc, GraphSpec{3, 4}) : build(sc, spec);
        const GraphSpec used = model.spec();
        Eigen::VectorXcd c = sc == Scenario::search_one_marked
                                 ? model.uniform_coefficients().cast<cd>().eval()
                                 : model.loop_coefficients(model.sender()).cast<cd>().eval();
        StateVector psi(hilbert_dim(used));
        for (int i = 0; i < model.dimension(); ++i) {
            const StateVector nu = model.materialize(i);
            for (std::int64_t k = 0; k < psi.dim(); ++k) psi[k] += c[i] * nu[k];
        }
        const MarkedSet marked = marked_of(model);
        double worst = 0.0;
        for (int t = 0; t < 300; ++t) {
            step(psi, used, marked);
            c = model.matrix() * c;
            const Eigen::VectorXcd measured = model.to_coefficients(psi);
            worst = std::max(worst, (measured - c).cwiseAbs().maxCoeff());
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("single-marked operators in the transfer bases match the full space") {
    struct Case {
        GraphSpec spec;
        Vertex s, r;
        bool same;
    };
    for (const Case& c : {Case{{3, 4}, {1, 1}, {1, 3}, true}, Case{{5, 3}, {1, 2}, {1, 3}, true},
                          Case{{4, 3}, {1, 1}, {2, 2}, false}, Case{{3, 2}, {2, 1}, {3, 1}, false}}) {
        const ReducedModel model = c.same ? build_sta_same_model(c.spec, c.s, c.r)
                                          : build_sta_diff_model(c.spec, c.s, c.r);
        for (MarkedOne which : {MarkedOne::sender, MarkedOne::receiver}) {
            const Eigen::MatrixXd A = model.single_marked_matrix(which);
            const int dim = model.dimension();
            CHECK((A.transpose() * A - Eigen::MatrixXd::Identity(dim, dim))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
            const MarkedSet marked =
                MarkedSet::of(which == MarkedOne::sender ? model.sender() : model.receiver());
            for (int j = 0; j < dim; ++j) {
                StateVector psi = model.materialize(j);
                step(psi, c.spec, marked);
                const auto proj = model.project(psi);
                CHECK(proj.residual < 1e-12);  // closed under either marking
                CHECK((proj.coefficients - A.col(j).cast<cd>()).cwiseAbs().maxCoeff() <
                      1e-12);
            }
        }
    }
}
