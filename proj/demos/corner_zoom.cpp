// Computes the zeros of p_{n-1}[exp](nz) nearest the corner z = 1 and
// compares them with the erfc-zero predictions and their refinements.

#include <algorithm>
#include <cstdio>

#include "szego/predict.hpp"

int main() {
    const int n = 120;
    auto fam = szego::make_family("exp");
    auto poly = szego::partial_sum(fam, n);
    auto roots = szego::all_roots(poly);

    auto preds = szego::corner_predicted_zeros(fam, n, 3);
    std::printf("n = %d, corner predictions vs nearest computed roots:\n", n);
    for (const auto& p : preds) {
        if (p.w.imag() < 0.0) continue;
        double best = 1e300;
        szego::Complex match;
        for (const auto& z : roots.roots)
            if (std::abs(z - p.z_scaled) < best) {
                best = std::abs(z - p.z_scaled);
                match = z;
            }
        szego::Complex refined = szego::kkmm_refined_zero(fam, p.w / std::sqrt(2.0), n, 4);
        std::printf("  pred (%.5f, %.5f)  root (%.5f, %.5f)  err %.2e  refined err %.2e\n",
                    p.z_scaled.real(), p.z_scaled.imag(), match.real(), match.imag(), best,
                    std::abs(match - refined));
    }
    return 0;
}
