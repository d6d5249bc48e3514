// Builds the Watson series for a Laplace transform, evaluates it at a few
// parameter values, and certifies each truncation against quadrature.

#include <cstdio>

#include "szego/laplace.hpp"

int main() {
    // f(t) = 1/(1+t)^2: a_k = (-1)^k (k+1), b_k = k
    std::vector<std::pair<std::complex<double>, double>> coeffs;
    for (int k = 0; k < 7; ++k)
        coeffs.push_back({{(k % 2 ? -1.0 : 1.0) * (k + 1.0), 0.0}, static_cast<double>(k)});
    auto series = szego::watson(coeffs, 7);
    std::printf("series: %s\n\n", series.to_string().c_str());

    for (double lam : {25.0, 50.0, 100.0}) {
        auto q = szego::integrate_adaptive(
            [lam](double t) {
                return std::complex<double>(std::exp(-lam * t) / ((1.0 + t) * (1.0 + t)), 0.0);
            },
            0.0, std::numeric_limits<double>::infinity(), 1e-13);
        std::printf("lambda = %g, quadrature = %.15g\n", lam, q.value.real());
        for (int m = 1; m <= 6; ++m) {
            auto [val, omitted] = szego::series_eval(series, lam, m);
            double diff = std::abs(val - q.value);
            std::printf("  %d terms: %.15g   |diff| = %.2e  (first omitted %.2e)%s\n", m,
                        val.real(), diff, omitted, diff <= 2.0 * omitted ? "" : "  <-- outside");
        }
    }
    return 0;
}
