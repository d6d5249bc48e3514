// Traces the limit curve for a few growth orders and prints where the
// curve crosses fixed arguments.

#include <cstdio>

#include "szego/curve.hpp"

int main() {
    for (double lambda : {1.0, 1.5, 2.0}) {
        auto samples = szego::trace(lambda, 9);
        std::printf("lambda = %.1f\n", lambda);
        for (const auto& s : samples)
            std::printf("  arg %.4f  xi = (%+.6f, %+.6f)  tau = %+.6f\n", s.arg, s.xi.real(),
                        s.xi.imag(), s.tau);
    }
    return 0;
}
