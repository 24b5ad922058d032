#include "qwalk/reduced.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

std::int64_t vid_of(const GraphSpec& spec, Vertex v) {
    return static_cast<std::int64_t>(v.partition - 1) * spec.partition_size +
           (v.index - 1);
}

void require_unit_loop(const GraphSpec& spec) {
    if (spec.loop_weight != 1.0)
        throw std::invalid_argument(
            "reduced model: coefficient tables hold for unit loop weight only");
}

// Convention throughout: the reduced unitary's column j expands the
// evolved j-th basis vector.

Eigen::MatrixXd search_table(int d, int N) {
    const double c = 1.0 / (d + 1);
    const double sd = std::sqrt(double(d)), sn1 = std::sqrt(double(N - 1));
    const double sdn = std::sqrt(double(d - N)), sdn1 = std::sqrt(double((d - N) * (N - 1)));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(8, 8);
    A(0, 0) = (d - 1) * c;        A(4, 0) = -2 * sd * c;
    A(0, 1) = -2 * sd * c;        A(4, 1) = -(d - 1) * c;
    A(2, 2) = (1 - d) * c;        A(5, 2) = 2 * sd * c;
    A(2, 3) = 2 * sd * c;         A(5, 3) = (d - 1) * c;
    A(1, 4) = (1 - d) * c;        A(3, 4) = 2 * sn1 * c;
    A(6, 4) = 2 * sdn * c;        A(7, 4) = 2 * c;
    A(1, 5) = 2 * sn1 * c;        A(3, 5) = -(d + 3 - 2 * N) * c;
    A(6, 5) = 2 * sdn1 * c;       A(7, 5) = 2 * sn1 * c;
    A(1, 6) = 2 * sdn * c;        A(3, 6) = 2 * sdn1 * c;
    A(6, 6) = (d - 1 - 2 * N) * c; A(7, 6) = 2 * sdn * c;
    A(1, 7) = 2 * c;              A(3, 7) = 2 * sn1 * c;
    A(6, 7) = 2 * sdn * c;        A(7, 7) = (1 - d) * c;
    return A;
}

Eigen::MatrixXd same_even_table(int d, int N) {
    const double c = 1.0 / (d + 1);
    const double sd = std::sqrt(double(d)), sn2 = std::sqrt(double(N - 2));
    const double sdn = std::sqrt(double(d - N));
    const double s2n2 = std::sqrt(2.0 * (N - 2)), s2dn = std::sqrt(2.0 * (d - N));
    const double sdn2 = std::sqrt(double((d - N) * (N - 2))), s2 = std::sqrt(2.0);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(8, 8);
    A(0, 0) = (d - 1) * c;         A(4, 0) = -2 * sd * c;
    A(0, 1) = -2 * sd * c;         A(4, 1) = -(d - 1) * c;
    A(2, 2) = (1 - d) * c;         A(5, 2) = 2 * sd * c;
    A(2, 3) = 2 * sd * c;          A(5, 3) = (d - 1) * c;
    A(1, 4) = (3 - d) * c;         A(3, 4) = 2 * s2n2 * c;
    A(6, 4) = 2 * s2dn * c;        A(7, 4) = 2 * s2 * c;
    A(1, 5) = 2 * s2n2 * c;        A(3, 5) = -(d - 2 * N + 5) * c;
    A(6, 5) = 2 * sdn2 * c;        A(7, 5) = 2 * sn2 * c;
    A(1, 6) = 2 * s2dn * c;        A(3, 6) = 2 * sdn2 * c;
    A(6, 6) = (d - 2 * N - 1) * c; A(7, 6) = 2 * sdn * c;
    A(1, 7) = 2 * s2 * c;          A(3, 7) = 2 * sn2 * c;
    A(6, 7) = 2 * sdn * c;         A(7, 7) = -(d - 1) * c;
    return A;
}

Eigen::MatrixXd same_odd_table(int d) {
    const double c = 1.0 / (d + 1);
    const double sd = std::sqrt(double(d));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3);
    A(0, 0) = (d - 1) * c;  A(2, 0) = -2 * sd * c;
    A(0, 1) = -2 * sd * c;  A(2, 1) = -(d - 1) * c;
    A(1, 2) = -1.0;
    return A;
}

Eigen::MatrixXd diff_even_table(int d, int N, int M) {
    const double c = 1.0 / (d + 1);
    const double sn1 = std::sqrt(double(N - 1)), sdn = std::sqrt(double(d - N));
    const double sdn1 = std::sqrt(double(d - N) * (N - 1));
    const double s2 = std::sqrt(2.0);
    const double snm = std::sqrt(2.0 * N * (M - 3));
    const double snm1 = std::sqrt(2.0 * N * (N - 1) * (M - 3));
    const double s2n1 = std::sqrt(2.0 * (N - 1)), snm0 = std::sqrt(double(N) * (M - 3));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(12, 12);
    A(0, 0) = (d - 1) * c;  A(1, 0) = -2 * c;        A(5, 0) = -2 * sn1 * c;  A(8, 0) = -2 * sdn * c;
    A(0, 1) = -2 * c;       A(1, 1) = (d - 1) * c;   A(5, 1) = -2 * sn1 * c;  A(8, 1) = -2 * sdn * c;
    A(0, 2) = -2 * sn1 * c; A(1, 2) = -2 * sn1 * c;  A(5, 2) = (d - 2 * N + 3) * c;
    A(8, 2) = -2 * sdn1 * c;
    A(0, 3) = -2 * sdn * c; A(1, 3) = -2 * sdn * c;  A(5, 3) = -2 * sdn1 * c;
    A(8, 3) = -(d - 2 * N - 1) * c;
    A(2, 4) = 2 * c;        A(4, 4) = -(d - 1) * c;  A(6, 4) = 2 * sn1 * c;   A(9, 4) = 2 * sdn * c;
    A(2, 5) = -(d - 1) * c; A(4, 5) = 2 * c;         A(6, 5) = 2 * sn1 * c;   A(9, 5) = 2 * sdn * c;
    A(2, 6) = 2 * sn1 * c;  A(4, 6) = 2 * sn1 * c;   A(6, 6) = -(d - 2 * N + 3) * c;
    A(9, 6) = 2 * sdn1 * c;
    A(2, 7) = 2 * sdn * c;  A(4, 7) = 2 * sdn * c;   A(6, 7) = 2 * sdn1 * c;
    A(9, 7) = (d - 2 * N - 1) * c;
    A(3, 8) = -(d - 3) * c; A(7, 8) = 4 * sn1 * c;   A(10, 8) = 2 * snm * c;  A(11, 8) = 2 * s2 * c;
    A(3, 9) = 4 * sn1 * c;  A(7, 9) = -(d - 4 * N + 5) * c;
    A(10, 9) = 2 * snm1 * c; A(11, 9) = 2 * s2n1 * c;
    A(3, 10) = 2 * snm * c; A(7, 10) = 2 * snm1 * c; A(10, 10) = (d - 4 * N - 1) * c;
    A(11, 10) = 2 * snm0 * c;
    A(3, 11) = 2 * s2 * c;  A(7, 11) = 2 * s2n1 * c; A(10, 11) = 2 * snm0 * c;
    A(11, 11) = -(d - 1) * c;
    return A;
}

Eigen::MatrixXd diff_odd_table(int d, int N) {
    const double c = 1.0 / (d + 1);
    const double sn1 = std::sqrt(double(N - 1)), sdn = std::sqrt(double(d - N));
    const double sdn1 = std::sqrt(double(d - N) * (N - 1));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(10, 10);
    A(0, 0) = (d - 1) * c;  A(1, 0) = 2 * c;         A(5, 0) = 2 * sn1 * c;   A(8, 0) = -2 * sdn * c;
    A(0, 1) = -2 * c;       A(1, 1) = -(d - 1) * c;  A(5, 1) = 2 * sn1 * c;   A(8, 1) = -2 * sdn * c;
    A(0, 2) = -2 * sn1 * c; A(1, 2) = 2 * sn1 * c;   A(5, 2) = -(d - 2 * N + 3) * c;
    A(8, 2) = -2 * sdn1 * c;
    A(0, 3) = -2 * sdn * c; A(1, 3) = 2 * sdn * c;   A(5, 3) = 2 * sdn1 * c;
    A(8, 3) = -(d - 2 * N - 1) * c;
    A(2, 4) = -2 * c;       A(4, 4) = -(d - 1) * c;  A(6, 4) = -2 * sn1 * c;  A(9, 4) = 2 * sdn * c;
    A(2, 5) = (d - 1) * c;  A(4, 5) = 2 * c;         A(6, 5) = -2 * sn1 * c;  A(9, 5) = 2 * sdn * c;
    A(2, 6) = -2 * sn1 * c; A(4, 6) = 2 * sn1 * c;   A(6, 6) = (d - 2 * N + 3) * c;
    A(9, 6) = 2 * sdn1 * c;
    A(2, 7) = -2 * sdn * c; A(4, 7) = 2 * sdn * c;   A(6, 7) = -2 * sdn1 * c;
    A(9, 7) = (d - 2 * N - 1) * c;
    A(3, 8) = -1.0;
    A(7, 9) = -1.0;
    return A;
}

}  // namespace

std::vector<int> ReducedModel::even_indices() const {
    const int ne = static_cast<int>(even_block_.rows());
    std::vector<int> v(ne);
    for (int i = 0; i < ne; ++i) v[i] = i;
    return v;
}

std::vector<int> ReducedModel::odd_indices() const {
    const int ne = static_cast<int>(even_block_.rows());
    const int no = static_cast<int>(odd_block_.rows());
    std::vector<int> v(no);
    for (int i = 0; i < no; ++i) v[i] = ne + i;
    return v;
}

int ReducedModel::raw_classify(arc_id id) const {
    const int d = spec_.degree();
    const int N = spec_.partition_size;
    const std::int64_t vid = id / (d + 1);
    const int slot = static_cast<int>(id % (d + 1));
    const int vp = static_cast<int>(vid / N);
    const std::int64_t s_vid = vid_of(spec_, sender_);
    const std::int64_t r_vid = vid_of(spec_, receiver_);
    const int ps = sender_.partition - 1;
    const int pr = receiver_.partition - 1;

    std::int64_t wvid;
    bool loop = slot == d;
    if (loop) {
        wvid = vid;
    } else {
        int wp = slot / N;
        if (wp >= vp) ++wp;
        wvid = static_cast<std::int64_t>(wp) * N + slot % N;
    }
    const int wp = static_cast<int>(wvid / N);

    switch (scenario_) {
        case Scenario::search_one_marked: {
            if (loop) {
                if (vid == s_vid) return 0;
                return vp == ps ? 2 : 7;
            }
            if (vid == s_vid) return 1;
            if (vp == ps) return 3;
            if (wvid == s_vid) return 4;
            if (wp == ps) return 5;
            return 6;
        }
        case Scenario::sta_same_partition: {
            if (loop) {
                if (vid == s_vid) return 0;
                if (vid == r_vid) return 2;
                return vp == ps ? 4 : 10;
            }
            if (vid == s_vid) return 1;
            if (vid == r_vid) return 3;
            if (vp == ps) return 5;
            if (wvid == s_vid) return 6;
            if (wvid == r_vid) return 7;
            if (wp == ps) return 8;
            return 9;
        }
        case Scenario::sta_diff_partition: {
            if (vid == s_vid) {
                if (loop) return 0;
                if (wvid == r_vid) return 1;
                return wp == pr ? 2 : 3;
            }
            if (vid == r_vid) {
                if (loop) return 4;
                if (wvid == s_vid) return 5;
                return wp == ps ? 6 : 7;
            }
            if (vp == ps) {
                if (loop) return 8;
                if (wvid == r_vid) return 9;
                return wp == pr ? 10 : 11;
            }
            if (vp == pr) {
                if (loop) return 12;
                if (wvid == s_vid) return 13;
                return wp == ps ? 14 : 15;
            }
            if (loop) return 21;
            if (wvid == s_vid) return 16;
            if (wvid == r_vid) return 17;
            if (wp == ps) return 18;
            if (wp == pr) return 19;
            return 20;
        }
    }
    return -1;
}

int ReducedModel::classify(arc_id id) const {
    const int raw = raw_classify(id);
    return raw < 0 ? -1 : class_to_index_[raw];
}

StateVector ReducedModel::materialize(int i) const {
    StateVector psi(hilbert_dim(spec_));
    const double amp = 1.0 / std::sqrt(static_cast<double>(class_size_[i]));
    for (std::int64_t a = 0; a < psi.dim(); ++a)
        if (classify(a) == i) psi[a] = amp;
    return psi;
}

Eigen::VectorXcd ReducedModel::to_coefficients(const StateVector& psi) const {
    if (psi.dim() != hilbert_dim(spec_))
        throw std::invalid_argument("to_coefficients: dimension mismatch");
    Eigen::VectorXcd sums = Eigen::VectorXcd::Zero(dimension());
    for (std::int64_t a = 0; a < psi.dim(); ++a) {
        const int c = classify(a);
        if (c >= 0) sums[c] += psi[a];
    }
    for (int i = 0; i < dimension(); ++i)
        sums[i] /= std::sqrt(static_cast<double>(class_size_[i]));
    return sums;
}

ReducedModel::Projection ReducedModel::project(const StateVector& psi) const {
    Projection p;
    p.coefficients = to_coefficients(psi);
    double r2 = 0.0;
    for (std::int64_t a = 0; a < psi.dim(); ++a) {
        const int c = classify(a);
        if (c < 0) {
            r2 += std::norm(psi[a]);
        } else {
            const cd expect =
                p.coefficients[c] / std::sqrt(static_cast<double>(class_size_[c]));
            r2 += std::norm(psi[a] - expect);
        }
    }
    p.residual = std::sqrt(r2);
    return p;
}

namespace {

bool is_loop_class_raw(Scenario sc, int raw) {
    switch (sc) {
        case Scenario::search_one_marked:
            return raw == 0 || raw == 2 || raw == 7;
        case Scenario::sta_same_partition:
            return raw == 0 || raw == 2 || raw == 4 || raw == 10;
        case Scenario::sta_diff_partition:
            return raw == 0 || raw == 4 || raw == 8 || raw == 12 || raw == 21;
    }
    return false;
}

}  // namespace

Eigen::VectorXd ReducedModel::uniform_coefficients() const {
    const double nd = static_cast<double>(spec_.vertex_count()) * spec_.degree();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dimension());
    for (int i = 0; i < dimension(); ++i) {
        if (is_loop_class_raw(scenario_, active_[i])) continue;
        c[i] = std::sqrt(static_cast<double>(class_size_[i]) / nd);
    }
    return c;
}

Eigen::VectorXd ReducedModel::loop_coefficients(Vertex v) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dimension());
    int raw;
    if (v == sender_)
        raw = 0;
    else if (v == receiver_)
        raw = scenario_ == Scenario::sta_diff_partition ? 4 : 2;
    else
        throw std::invalid_argument("loop_coefficients: not a marked vertex of this model");
    c[class_to_index_[raw]] = 1.0;
    return c;
}

Eigen::VectorXd ReducedModel::local_uniform_coefficients(Vertex v) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dimension());
    std::vector<int> raw;
    if (scenario_ == Scenario::sta_diff_partition)
        raw = v == sender_ ? std::vector<int>{1, 2, 3} : std::vector<int>{5, 6, 7};
    else
        raw = {v == sender_ ? 1 : 3};
    if (v != sender_ && v != receiver_)
        throw std::invalid_argument(
            "local_uniform_coefficients: not a marked vertex of this model");
    for (int k : raw) {
        const int i = class_to_index_[k];
        c[i] = std::sqrt(static_cast<double>(class_size_[i]) / spec_.degree());
    }
    return c;
}

VertexProbability ReducedModel::vertex_probability(const Eigen::VectorXcd& c,
                                                   Vertex v) const {
    std::vector<int> arcs;
    int loop;
    if (v == sender_) {
        loop = 0;
        arcs = scenario_ == Scenario::sta_diff_partition ? std::vector<int>{1, 2, 3}
                                                         : std::vector<int>{1};
    } else if (v == receiver_) {
        loop = scenario_ == Scenario::sta_diff_partition ? 4 : 2;
        arcs = scenario_ == Scenario::sta_diff_partition ? std::vector<int>{5, 6, 7}
                                                         : std::vector<int>{3};
    } else {
        throw std::invalid_argument("vertex_probability: not a marked vertex");
    }
    VertexProbability p;
    p.loop = std::norm(c[class_to_index_[loop]]);
    for (int k : arcs) p.arcs += std::norm(c[class_to_index_[k]]);
    p.total = p.loop + p.arcs;
    return p;
}

Eigen::MatrixXd ReducedModel::single_marked_matrix(MarkedOne which) const {
    if (scenario_ == Scenario::search_one_marked)
        throw std::invalid_argument("single_marked_matrix: STA scenarios only");
    const int d = spec_.degree();
    const int N = spec_.partition_size;
    const double c = 1.0 / (d + 1);
    Eigen::MatrixXd U = matrix_;
    // Unmarking one vertex replaces its coin -G by G, adding twice the
    // shifted local reflection. Only the basis vectors supported on that
    // vertex's block pick up corrections.
    if (scenario_ == Scenario::sta_same_partition) {
        const double sd = std::sqrt(static_cast<double>(d));
        // columns: loop and outgoing arcs of the unmarked vertex;
        // rows: their shift images (loop stays, outgoing become incoming)
        const int col_loop = which == MarkedOne::sender ? 2 : 0;
        const int col_out = which == MarkedOne::sender ? 3 : 1;
        const int row_in = which == MarkedOne::sender ? 7 : 6;
        U(col_loop, col_loop) += 2 * (1 - d) * c;
        U(row_in, col_loop) += 4 * sd * c;
        U(col_loop, col_out) += 4 * sd * c;
        U(row_in, col_out) += 2 * (d - 1) * c;
        return U;
    }
    // different partitions: the unmarked block spans four classes
    const double q[4] = {1.0, 1.0, std::sqrt(double(N - 1)), std::sqrt(double(d - N))};
    const int cols_s[4] = {0, 1, 2, 3};
    const int rows_s[4] = {0, 5, 13, 16};  // shift images of s's block classes
    const int cols_r[4] = {4, 5, 6, 7};
    const int rows_r[4] = {4, 1, 9, 17};   // shift images of r's block classes
    const int* cols = which == MarkedOne::sender ? cols_r : cols_s;
    const int* rows = which == MarkedOne::sender ? rows_r : rows_s;
    for (int j = 0; j < 4; ++j) {
        const int cj = class_to_index_[cols[j]];
        for (int i = 0; i < 4; ++i) U(class_to_index_[rows[i]], cj) += 4 * q[i] * q[j] * c;
        U(class_to_index_[rows[j]], cj) -= 2.0;
    }
    return U;
}

ReducedModel build_search_model(const GraphSpec& spec, Vertex m) {
    validate(spec);
    require_unit_loop(spec);
    if (spec.partition_size < 2)
        throw std::invalid_argument("search model: needs at least 2 vertices per partition");
    if (!is_valid_vertex(spec, m))
        throw std::invalid_argument("search model: marked vertex outside the graph");
    const int d = spec.degree();
    const int N = spec.partition_size;

    ReducedModel model;
    model.scenario_ = Scenario::search_one_marked;
    model.spec_ = spec;
    model.sender_ = m;
    model.receiver_ = m;
    model.matrix_ = search_table(d, N);
    model.even_block_ = model.matrix_;
    model.odd_block_ = Eigen::MatrixXd::Zero(0, 0);
    model.change_of_basis_ = Eigen::MatrixXd::Identity(8, 8);
    model.class_size_ = {1,
                         d,
                         static_cast<std::int64_t>(N - 1),
                         static_cast<std::int64_t>(d) * (N - 1),
                         d,
                         static_cast<std::int64_t>(d) * (N - 1),
                         static_cast<std::int64_t>(d) * (d - N),
                         d};
    model.active_ = {0, 1, 2, 3, 4, 5, 6, 7};
    model.class_to_index_ = model.active_;
    model.parity_perm_ = model.active_;
    return model;
}

ReducedModel build_sta_same_model(const GraphSpec& spec, Vertex s, Vertex r) {
    validate(spec);
    require_unit_loop(spec);
    if (!is_valid_vertex(spec, s) || !is_valid_vertex(spec, r))
        throw std::invalid_argument("sta model: vertex outside the graph");
    if (s == r) throw std::invalid_argument("sta model: sender equals receiver");
    if (s.partition != r.partition)
        throw std::invalid_argument("same-partition model: vertices in different partitions");
    if (spec.partition_size < 3)
        throw std::invalid_argument(
            "same-partition model: needs at least 3 vertices per partition");
    const int d = spec.degree();
    const int N = spec.partition_size;

    ReducedModel model;
    model.scenario_ = Scenario::sta_same_partition;
    model.spec_ = spec;
    model.sender_ = s;
    model.receiver_ = r;
    model.even_block_ = same_even_table(d, N);
    model.odd_block_ = same_odd_table(d);

    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(11, 11);
    const double iq = 1.0 / std::sqrt(2.0);
    V(0, 0) = iq; V(2, 0) = iq;
    V(1, 1) = iq; V(3, 1) = iq;
    V(4, 2) = 1;  V(5, 3) = 1;
    V(6, 4) = iq; V(7, 4) = iq;
    V(8, 5) = 1;  V(9, 6) = 1;  V(10, 7) = 1;
    V(0, 8) = iq;  V(2, 8) = -iq;
    V(1, 9) = iq;  V(3, 9) = -iq;
    V(6, 10) = iq; V(7, 10) = -iq;
    model.change_of_basis_ = V;

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(11, 11);
    B.topLeftCorner(8, 8) = model.even_block_;
    B.bottomRightCorner(3, 3) = model.odd_block_;
    model.matrix_ = V * B * V.transpose();

    const auto dn = static_cast<std::int64_t>(d);
    model.class_size_ = {1, dn, 1, dn, N - 2, dn * (N - 2), dn, dn, dn * (N - 2),
                         dn * (d - N), dn};
    model.active_.resize(11);
    for (int i = 0; i < 11; ++i) model.active_[i] = i;
    model.class_to_index_ = model.active_;
    model.parity_perm_ = {2, 3, 0, 1, 4, 5, 7, 6, 8, 9, 10};
    return model;
}

ReducedModel build_sta_diff_model(const GraphSpec& spec, Vertex s, Vertex r) {
    validate(spec);
    require_unit_loop(spec);
    if (!is_valid_vertex(spec, s) || !is_valid_vertex(spec, r))
        throw std::invalid_argument("sta model: vertex outside the graph");
    if (s.partition == r.partition)
        throw std::invalid_argument("diff-partition model: vertices share a partition");
    if (spec.partition_size < 2)
        throw std::invalid_argument(
            "diff-partition model: needs at least 2 vertices per partition");
    const int d = spec.degree();
    const int N = spec.partition_size;
    const int M = spec.partitions;

    ReducedModel model;
    model.scenario_ = Scenario::sta_diff_partition;
    model.spec_ = spec;
    model.sender_ = s;
    model.receiver_ = r;

    Eigen::MatrixXd even = diff_even_table(d, N, M);
    Eigen::MatrixXd odd = diff_odd_table(d, N);

    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(22, 22);
    const double iq = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 4; ++i) {
        V(i, i) = iq;     V(i + 4, i) = iq;         // even, marked blocks
        V(i, 12 + i) = iq; V(i + 4, 12 + i) = -iq;  // odd
    }
    for (int j = 4; j < 8; ++j) {
        V(j + 4, j) = iq;      V(j + 8, j) = iq;
        V(j + 4, 12 + j) = iq; V(j + 8, 12 + j) = -iq;
    }
    V(16, 8) = iq;  V(17, 8) = iq;
    V(18, 9) = iq;  V(19, 9) = iq;
    V(20, 10) = 1;  V(21, 11) = 1;
    V(16, 20) = iq; V(17, 20) = -iq;
    V(18, 21) = iq; V(19, 21) = -iq;

    const auto n1 = static_cast<std::int64_t>(N - 1);
    const auto dN = static_cast<std::int64_t>(d - N);
    std::vector<std::int64_t> sizes = {1,  1,  n1, dN, 1,       1,       n1,      dN,
                                       n1, n1, n1 * n1, dN * n1, n1,      n1,
                                       n1 * n1, dN * n1, dN, dN, dN * n1, dN * n1,
                                       static_cast<std::int64_t>(N) * dN * (M - 3), dN};
    std::vector<int> raw_parity = {4,  5,  6,  7,  0,  1,  2,  3,  12, 13, 14,
                                   15, 8,  9,  10, 11, 17, 16, 19, 18, 20, 21};

    if (M == 3) {
        // the "rest of the graph" has a single partition: no arcs among it
        Eigen::MatrixXd even2(11, 11);
        std::vector<int> keep;
        for (int i = 0; i < 12; ++i)
            if (i != 10) keep.push_back(i);
        for (int a = 0; a < 11; ++a)
            for (int b = 0; b < 11; ++b) even2(a, b) = even(keep[a], keep[b]);
        even = even2;

        Eigen::MatrixXd V2(21, 21);
        std::vector<int> rows, cols;
        for (int i = 0; i < 22; ++i)
            if (i != 20) rows.push_back(i);
        for (int j = 0; j < 22; ++j)
            if (j != 10) cols.push_back(j);
        for (int a = 0; a < 21; ++a)
            for (int b = 0; b < 21; ++b) V2(a, b) = V(rows[a], cols[b]);
        V = V2;

        model.active_.clear();
        for (int i = 0; i < 22; ++i)
            if (i != 20) model.active_.push_back(i);
    } else {
        model.active_.resize(22);
        for (int i = 0; i < 22; ++i) model.active_[i] = i;
    }

    model.even_block_ = even;
    model.odd_block_ = odd;
    model.change_of_basis_ = V;
    const int dim = static_cast<int>(model.active_.size());
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(dim, dim);
    B.topLeftCorner(even.rows(), even.cols()) = even;
    B.bottomRightCorner(10, 10) = odd;
    model.matrix_ = V * B * V.transpose();

    model.class_to_index_.assign(22, -1);
    model.class_size_.clear();
    for (int i = 0; i < dim; ++i) {
        model.class_to_index_[model.active_[i]] = i;
        model.class_size_.push_back(sizes[model.active_[i]]);
    }
    model.parity_perm_.resize(dim);
    for (int i = 0; i < dim; ++i)
        model.parity_perm_[i] = model.class_to_index_[raw_parity[model.active_[i]]];
    return model;
}

double check_closure(const ReducedModel& model, const GraphSpec& spec) {
    if (spec.partitions != model.spec().partitions ||
        spec.partition_size != model.spec().partition_size)
        throw std::invalid_argument("check_closure: graph shape mismatch");
    const MarkedSet marked =
        model.scenario() == Scenario::search_one_marked
            ? MarkedSet::of(model.sender())
            : MarkedSet::of(model.sender(), model.receiver());
    double worst = 0.0;
    for (int i = 0; i < model.dimension(); ++i) {
        StateVector psi = model.materialize(i);
        step(psi, spec, marked);
        const ReducedModel::Projection proj = model.project(psi);
        // deviation from the tabulated action: the subspace is invariant for
        // every loop weight, so escape alone cannot flag a stale table
        const double column_gap =
            (proj.coefficients - model.matrix().col(i).cast<cd>()).norm();
        worst = std::max(worst,
                         std::sqrt(proj.residual * proj.residual + column_gap * column_gap));
    }
    return worst;
}

}  // namespace qwalk
