#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/reduced.hpp"

namespace qwalk {

enum class FrequencyMode { exact, asymptotic };

// --- polynomial helpers -----------------------------------------------

// Coefficients in ascending order: c[0] + c[1] x + ... + c[k] x^k.
double polynomial_value(std::span<const double> coeffs, double x);

// Largest real root inside [lo, hi], located by sign changes on a fine grid
// and bisected to ~1e-14. Throws std::domain_error when no root is found.
double largest_root_in(std::span<const double> coeffs, double lo, double hi);

// Characteristic polynomials whose largest root in [-1, 1] is the cosine of
// the relevant eigenfrequency.
std::vector<double> search_char_poly(const GraphSpec& spec);      // quadratic
std::vector<double> sta_same_char_poly(const GraphSpec& spec);    // quadratic
std::vector<double> sta_same_omega3_poly(const GraphSpec& spec);  // linear
std::vector<double> sta_diff_cubic(const GraphSpec& spec);
std::vector<double> sta_diff_quartic(const GraphSpec& spec);

// --- eigenfrequencies (radians per step) ------------------------------

double omega2_search(const GraphSpec& spec);             // closed form
double omega2_search_asymptotic(const GraphSpec& spec);  // 2/sqrt(NM)

struct FrequencyPair {
    double omega2 = 0.0;
    double omega3 = 0.0;
};

FrequencyPair sta_same_frequencies(const GraphSpec& spec);
FrequencyPair sta_same_frequencies_asymptotic(const GraphSpec& spec);

FrequencyPair sta_diff_frequencies(const GraphSpec& spec);
FrequencyPair sta_diff_frequencies_asymptotic(const GraphSpec& spec);

// --- closed-form curves ------------------------------------------------

struct CurvePoint {
    double total = 0.0;  // = loop + arcs
    double loop = 0.0;
    double arcs = 0.0;
};

// Success probability of the search after t steps and its split into the
// loop and outgoing-arc parts.
CurvePoint search_curve(const GraphSpec& spec, double t,
                        FrequencyMode mode = FrequencyMode::exact);

// Steps to the first probability maximum, pi / omega2.
double search_T(const GraphSpec& spec, FrequencyMode mode = FrequencyMode::exact);

// Transfer fidelity, sender and receiver in one partition.
CurvePoint sta_same_curve(const GraphSpec& spec, double t,
                          FrequencyMode mode = FrequencyMode::exact);

struct FirstMax {
    double t = 0.0;
    double value = 0.0;
};

// First local maximum of the same-partition fidelity curve, grid scan plus
// golden-section refinement over one odd-frequency period.
FirstMax sta_same_first_max(const GraphSpec& spec,
                            FrequencyMode mode = FrequencyMode::exact);

struct DiffCurvePoint {
    double total = 0.0;
    // receiver-block split: loop, arc back to the sender, arcs to the rest
    // of the sender partition (identically zero asymptotically), arcs out
    double loop = 0.0;
    double to_sender = 0.0;
    double to_sender_partition = 0.0;
    double to_outside = 0.0;
};

// Transfer fidelity across partitions; totals sin^4(omega3 t / 2) in the
// asymptotic mode.
DiffCurvePoint sta_diff_curve(const GraphSpec& spec, double t,
                              FrequencyMode mode = FrequencyMode::exact);

// Steps to unit fidelity, pi / omega3 (about pi sqrt(NM/2)).
double sta_diff_T(const GraphSpec& spec, FrequencyMode mode = FrequencyMode::exact);

// --- bundled model ------------------------------------------------------

struct SpectralModel {
    Scenario scenario;
    double omega2 = 0.0;
    std::optional<double> omega3;
    double T_opt = 0.0;
    std::function<double(double)> curve;  // t -> probability or fidelity
};

SpectralModel make_spectral_model(const GraphSpec& spec, Scenario scenario,
                                  FrequencyMode mode = FrequencyMode::exact);

// Asymptotic forms of the evolution eigenvectors that keep an overlap with
// the initial state, as coefficient vectors over the block-ordered basis
// (even block stacked over odd block; plain basis for search). Three vectors
// for search, five for the transfer scenarios.
std::vector<Eigen::VectorXcd> relevant_eigenvectors(Scenario scenario);

}  // namespace qwalk
