#pragma once

#include <cmath>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

// Complex amplitude vector over all arcs and loops of a graph. Owns its
// storage; mutation is exclusive (one walk, one state).
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(std::int64_t dim) : amps_(dim, cd{0.0, 0.0}) {}

    std::int64_t dim() const { return static_cast<std::int64_t>(amps_.size()); }
    cd* data() { return amps_.data(); }
    const cd* data() const { return amps_.data(); }
    cd& operator[](std::int64_t i) { return amps_[i]; }
    const cd& operator[](std::int64_t i) const { return amps_[i]; }

    // compensated sums: plain accumulation loses ~n*eps over 10^7 amplitudes
    double squared_norm() const {
        double s = 0.0, carry = 0.0;
        for (const cd& a : amps_) {
            const double y = std::norm(a) - carry;
            const double t = s + y;
            carry = (t - s) - y;
            s = t;
        }
        return s;
    }
    double norm() const { return std::sqrt(squared_norm()); }

    // <this|other>
    cd inner(const StateVector& other) const {
        double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
        for (std::int64_t i = 0; i < dim(); ++i) {
            const cd term = std::conj(amps_[i]) * other[i];
            double y = term.real() - cre;
            double t = re + y;
            cre = (t - re) - y;
            re = t;
            y = term.imag() - cim;
            t = im + y;
            cim = (t - im) - y;
            im = t;
        }
        return {re, im};
    }

    void scale(double f) {
        for (cd& a : amps_) a *= f;
    }

  private:
    std::vector<cd> amps_;
};

}  // namespace qwalk
