#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "szego/constants.hpp"
#include "szego/errors.hpp"

namespace szego {

// One direction of maximal exponential growth: f ~ A (z/zeta)^b exp((z/zeta)^lambda)
// inside |arg(z/zeta)| <= theta.  Direction 0 is the normalized one:
// zeta = 1, A = 1, b = a.
struct Direction {
    std::complex<double> zeta{1.0, 0.0};
    std::complex<double> A{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};
};

struct GrowthSpec {
    double lambda = 1.0;
    std::vector<Direction> directions;       // directions[0].zeta == 1, A == 1
    std::complex<double> log_exponent{0.0};  // (log z)^b factor, one-direction case
    double mu = 0.0;                         // sub-maximal bound exponent, mu < 1
    double theta = 0.0;                      // sector half-width

    std::complex<double> a() const { return directions.at(0).b; }
    // number of non-principal growth directions
    int m() const { return static_cast<int>(directions.size()) - 1; }

    void validate() const {
        if (!(lambda > 0.0)) throw ParameterError("GrowthSpec: lambda must be positive");
        if (!(mu < 1.0)) throw ParameterError("GrowthSpec: mu must be < 1");
        if (!(theta > 0.0 && theta < detail::kPi))
            throw ParameterError("GrowthSpec: theta must lie in (0, pi)");
        if (directions.empty()) throw ParameterError("GrowthSpec: needs a principal direction");
        if (std::abs(directions[0].zeta - 1.0) > 1e-14 || std::abs(directions[0].A - 1.0) > 1e-14)
            throw ParameterError("GrowthSpec: principal direction must have zeta = A = 1");
        const int n = static_cast<int>(directions.size());
        for (int i = 0; i < n; ++i) {
            if (std::abs(std::abs(directions[i].zeta) - 1.0) > 1e-12)
                throw ParameterError("GrowthSpec: |zeta_k| must be 1");
            for (int j = i + 1; j < n; ++j) {
                double gap = std::abs(std::remainder(
                    std::arg(directions[i].zeta) - std::arg(directions[j].zeta),
                    2.0 * detail::kPi));
                if (gap <= 2.0 * theta + 1e-12)
                    throw ParameterError("GrowthSpec: growth sectors overlap (angle gap <= 2 theta)");
            }
        }
    }
};

}  // namespace szego
