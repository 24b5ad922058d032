#include "qwalk/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

constexpr double pi = std::numbers::pi;

double sq(double x) { return x * x; }

void require_search_regime(const GraphSpec& spec) {
    validate(spec);
    if (spec.partition_size < 2)
        throw std::invalid_argument("spectral model: needs at least 2 vertices per partition");
}

double bisect(std::span<const double> c, double lo, double hi) {
    double flo = polynomial_value(c, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = polynomial_value(c, mid);
        if (fm == 0.0) return mid;
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double polynomial_value(std::span<const double> coeffs, double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
}

double largest_root_in(std::span<const double> coeffs, double lo, double hi) {
    constexpr int grid = 2000;
    double best = std::numeric_limits<double>::quiet_NaN();
    double xprev = lo, fprev = polynomial_value(coeffs, lo);
    for (int k = 1; k <= grid; ++k) {
        const double x = lo + (hi - lo) * k / grid;
        const double f = polynomial_value(coeffs, x);
        if (f == 0.0) {
            best = x;
        } else if ((fprev < 0) != (f < 0)) {
            best = bisect(coeffs, xprev, x);
        } else if (fprev == 0.0) {
            best = xprev;
        }
        xprev = x;
        fprev = f;
    }
    if (std::isnan(best))
        throw std::domain_error("largest_root_in: no real root inside the interval");
    return best;
}

std::vector<double> search_char_poly(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    const double N = spec.partition_size;
    // The published constant term disagrees with the closed-form root it is
    // paired with except at N = 3; this constant reproduces the spectrum of
    // the reduced evolution operator for all N.
    return {-(d * (N - 2) + 1) / sq(d + 1), -(1.0 - N / (d + 1)), 1.0};
}

std::vector<double> sta_same_char_poly(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    const double N = spec.partition_size;
    // Same situation as the search quadratic (matches only at N = 5 there).
    return {-(d * (N - 3) + 2) / sq(d + 1), -(1.0 - N / (d + 1)), 1.0};
}

std::vector<double> sta_same_omega3_poly(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    return {-d / (d + 1), 1.0};
}

std::vector<double> sta_diff_cubic(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    const double N = spec.partition_size;
    const double NM = static_cast<double>(spec.partition_size) * spec.partitions;
    return {(NM - 4) / sq(d + 1), -((d + 1) * (N - 1) - N + 5) / sq(d + 1),
            -(1.0 - (N + 2) / (d + 1)), 1.0};
}

std::vector<double> sta_diff_quartic(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    const double N = spec.partition_size;
    const double NM = static_cast<double>(spec.partition_size) * spec.partitions;
    return {N * (spec.partitions - 2) / sq(d + 1), -(N - 2) * (d - 1) / sq(d + 1),
            -(1.0 - NM / sq(d + 1)), (N - 2) / (d + 1), 1.0};
}

namespace {

double arccos_checked(double x, const char* who) {
    if (x < -1.0 || x > 1.0)
        throw std::domain_error(std::string(who) + ": cosine outside [-1, 1]");
    return std::acos(x);
}

}  // namespace

double omega2_search(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    const double NM = static_cast<double>(spec.partition_size) * spec.partitions;
    const double disc = NM * NM - 6.0 * NM + 4.0 * spec.partition_size + 5.0;
    if (disc < 0.0) throw std::domain_error("omega2_search: negative discriminant");
    return arccos_checked(1.0 - (1.0 + NM - std::sqrt(disc)) / (2.0 * (d + 1)),
                          "omega2_search");
}

double omega2_search_asymptotic(const GraphSpec& spec) {
    require_search_regime(spec);
    return 2.0 / std::sqrt(static_cast<double>(spec.partition_size) * spec.partitions);
}

FrequencyPair sta_same_frequencies(const GraphSpec& spec) {
    require_search_regime(spec);
    const double d = spec.degree();
    const double NM = static_cast<double>(spec.partition_size) * spec.partitions;
    const double disc = NM * NM - 10.0 * NM + 8.0 * spec.partition_size + 9.0;
    if (disc < 0.0) throw std::domain_error("sta_same_frequencies: negative discriminant");
    FrequencyPair f;
    f.omega2 = arccos_checked(1.0 - (1.0 + NM - std::sqrt(disc)) / (2.0 * (d + 1)),
                              "sta_same_frequencies");
    f.omega3 = std::acos(1.0 - 1.0 / (d + 1));
    return f;
}

FrequencyPair sta_same_frequencies_asymptotic(const GraphSpec& spec) {
    require_search_regime(spec);
    const double NM = static_cast<double>(spec.partition_size) * spec.partitions;
    return {std::sqrt(6.0 / NM), std::sqrt(2.0 / NM)};
}

FrequencyPair sta_diff_frequencies(const GraphSpec& spec) {
    FrequencyPair f;
    f.omega2 = arccos_checked(largest_root_in(sta_diff_cubic(spec), -1.0, 1.0),
                              "sta_diff_frequencies");
    f.omega3 = arccos_checked(largest_root_in(sta_diff_quartic(spec), -1.0, 1.0),
                              "sta_diff_frequencies");
    return f;
}

FrequencyPair sta_diff_frequencies_asymptotic(const GraphSpec& spec) {
    require_search_regime(spec);
    const double NM = static_cast<double>(spec.partition_size) * spec.partitions;
    return {2.0 * std::sqrt(2.0 / NM), std::sqrt(2.0 / NM)};
}

CurvePoint search_curve(const GraphSpec& spec, double t, FrequencyMode mode) {
    const double w = mode == FrequencyMode::exact ? omega2_search(spec)
                                                  : omega2_search_asymptotic(spec);
    CurvePoint p;
    p.loop = sq(sq(std::sin(0.5 * w * t)));
    p.arcs = 0.25 * sq(std::sin(w * t));
    p.total = p.loop + p.arcs;
    return p;
}

double search_T(const GraphSpec& spec, FrequencyMode mode) {
    const double w = mode == FrequencyMode::exact ? omega2_search(spec)
                                                  : omega2_search_asymptotic(spec);
    return pi / w;
}

CurvePoint sta_same_curve(const GraphSpec& spec, double t, FrequencyMode mode) {
    const FrequencyPair f = mode == FrequencyMode::exact
                                ? sta_same_frequencies(spec)
                                : sta_same_frequencies_asymptotic(spec);
    CurvePoint p;
    p.loop = sq(2.0 + std::cos(f.omega2 * t) - 3.0 * std::cos(f.omega3 * t)) / 36.0;
    p.arcs = sq(std::sin(f.omega2 * t) - std::sqrt(3.0) * std::sin(f.omega3 * t)) / 24.0;
    p.total = p.loop + p.arcs;
    return p;
}

FirstMax sta_same_first_max(const GraphSpec& spec, FrequencyMode mode) {
    const FrequencyPair f = mode == FrequencyMode::exact
                                ? sta_same_frequencies(spec)
                                : sta_same_frequencies_asymptotic(spec);
    const auto value = [&](double t) { return sta_same_curve(spec, t, mode).total; };
    const double horizon = 2.0 * pi / f.omega3;
    const int grid = 4096;
    const double h = horizon / grid;
    int peak = -1;
    double prev = value(0.0), cur = value(h);
    for (int k = 1; k < grid; ++k) {
        const double next = value((k + 1) * h);
        if (cur >= prev && cur >= next) {
            peak = k;
            break;
        }
        prev = cur;
        cur = next;
    }
    if (peak < 0) throw std::domain_error("sta_same_first_max: no interior maximum");
    // golden-section refinement on the bracketing interval
    double a = (peak - 1) * h, b = (peak + 1) * h;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-10 * horizon) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = value(x1);
        }
    }
    const double t = 0.5 * (a + b);
    return {t, value(t)};
}

DiffCurvePoint sta_diff_curve(const GraphSpec& spec, double t, FrequencyMode mode) {
    const FrequencyPair f = mode == FrequencyMode::exact
                                ? sta_diff_frequencies(spec)
                                : sta_diff_frequencies_asymptotic(spec);
    DiffCurvePoint p;
    p.loop = sq(3.0 + std::cos(f.omega2 * t) - 4.0 * std::cos(f.omega3 * t)) / 64.0;
    p.to_sender = sq(sq(std::sin(0.5 * f.omega2 * t))) / 16.0;
    p.to_sender_partition = 0.0;
    p.to_outside = sq(std::sin(f.omega2 * t) - 2.0 * std::sin(f.omega3 * t)) / 32.0;
    p.total = p.loop + p.to_sender + p.to_sender_partition + p.to_outside;
    return p;
}

double sta_diff_T(const GraphSpec& spec, FrequencyMode mode) {
    const FrequencyPair f = mode == FrequencyMode::exact
                                ? sta_diff_frequencies(spec)
                                : sta_diff_frequencies_asymptotic(spec);
    return pi / f.omega3;
}

SpectralModel make_spectral_model(const GraphSpec& spec, Scenario scenario,
                                  FrequencyMode mode) {
    SpectralModel m;
    m.scenario = scenario;
    switch (scenario) {
        case Scenario::search_one_marked:
            m.omega2 = mode == FrequencyMode::exact ? omega2_search(spec)
                                                    : omega2_search_asymptotic(spec);
            m.T_opt = search_T(spec, mode);
            m.curve = [spec, mode](double t) { return search_curve(spec, t, mode).total; };
            break;
        case Scenario::sta_same_partition: {
            const FrequencyPair f = mode == FrequencyMode::exact
                                        ? sta_same_frequencies(spec)
                                        : sta_same_frequencies_asymptotic(spec);
            m.omega2 = f.omega2;
            m.omega3 = f.omega3;
            m.T_opt = sta_same_first_max(spec, mode).t;
            m.curve = [spec, mode](double t) { return sta_same_curve(spec, t, mode).total; };
            break;
        }
        case Scenario::sta_diff_partition: {
            const FrequencyPair f = mode == FrequencyMode::exact
                                        ? sta_diff_frequencies(spec)
                                        : sta_diff_frequencies_asymptotic(spec);
            m.omega2 = f.omega2;
            m.omega3 = f.omega3;
            m.T_opt = sta_diff_T(spec, mode);
            m.curve = [spec, mode](double t) { return sta_diff_curve(spec, t, mode).total; };
            break;
        }
    }
    return m;
}

std::vector<Eigen::VectorXcd> relevant_eigenvectors(Scenario scenario) {
    const cd i{0.0, 1.0};
    std::vector<Eigen::VectorXcd> out;
    switch (scenario) {
        case Scenario::search_one_marked: {
            Eigen::VectorXcd p1 = Eigen::VectorXcd::Zero(8);
            p1[6] = 1.0 / std::sqrt(2.0);
            p1[0] = -1.0 / std::sqrt(2.0);
            out.push_back(p1);
            for (double s : {+1.0, -1.0}) {
                Eigen::VectorXcd p = Eigen::VectorXcd::Zero(8);
                p[0] = 0.5;
                p[6] = 0.5;
                p[4] = s * i * 0.5;
                p[1] = -s * i * 0.5;
                out.push_back(p);
            }
            break;
        }
        case Scenario::sta_same_partition: {
            Eigen::VectorXcd p1 = Eigen::VectorXcd::Zero(11);
            p1[0] = std::sqrt(2.0 / 3.0);
            p1[6] = -1.0 / std::sqrt(3.0);
            out.push_back(p1);
            for (double s : {+1.0, -1.0}) {
                Eigen::VectorXcd p = Eigen::VectorXcd::Zero(11);
                p[0] = 1.0 / std::sqrt(6.0);
                p[6] = 1.0 / std::sqrt(3.0);
                p[4] = s * i * 0.5;
                p[1] = -s * i * 0.5;
                out.push_back(p);
            }
            for (double s : {+1.0, -1.0}) {
                Eigen::VectorXcd p = Eigen::VectorXcd::Zero(11);
                p[8] = 1.0 / std::sqrt(2.0);
                p[9] = s * i * 0.5;
                p[10] = -s * i * 0.5;
                out.push_back(p);
            }
            break;
        }
        case Scenario::sta_diff_partition: {
            Eigen::VectorXcd p1 = Eigen::VectorXcd::Zero(22);
            p1[0] = std::sqrt(3.0) / 2.0;
            p1[1] = -1.0 / (2.0 * std::sqrt(3.0));
            p1[10] = -1.0 / std::sqrt(6.0);
            out.push_back(p1);
            for (double s : {+1.0, -1.0}) {
                Eigen::VectorXcd p = Eigen::VectorXcd::Zero(22);
                p[0] = 1.0 / std::sqrt(8.0);
                p[1] = 1.0 / std::sqrt(8.0);
                p[8] = s * i * 0.5;
                p[3] = -s * i * 0.5;
                p[10] = 0.5;
                out.push_back(p);
            }
            for (double s : {+1.0, -1.0}) {
                Eigen::VectorXcd p = Eigen::VectorXcd::Zero(22);
                p[12] = 1.0 / std::sqrt(2.0);
                p[20] = s * i * 0.5;
                p[15] = -s * i * 0.5;
                out.push_back(p);
            }
            break;
        }
    }
    return out;
}

}  // namespace qwalk
