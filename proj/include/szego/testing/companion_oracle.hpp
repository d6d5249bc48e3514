#pragma once

// Test-only oracle: polynomial roots via the companion matrix and a complex
// Hessenberg QR iteration with Wilkinson shifts.  Independent of the Aberth
// path it cross-checks; intended for degree <= 30.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace szego::testing {

using Cplx = std::complex<double>;

// Shifted QR on an upper Hessenberg matrix stored dense, row-major.
inline std::vector<Cplx> hessenberg_eigenvalues(std::vector<std::vector<Cplx>> H) {
    const int n = static_cast<int>(H.size());
    std::vector<Cplx> eig;
    eig.reserve(n);
    int hi = n - 1;
    int guard = 0;
    while (hi >= 0) {
        if (++guard > 200 * n) throw std::runtime_error("companion oracle: QR stalled");
        // deflate
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(H[lo - 1][lo - 1]) + std::abs(H[lo][lo]);
            if (std::abs(H[lo][lo - 1]) <= 1e-15 * (s + 1e-300)) break;
            --lo;
        }
        if (lo == hi) {
            eig.push_back(H[hi][hi]);
            --hi;
            continue;
        }
        // Wilkinson shift from the trailing 2x2
        Cplx a = H[hi - 1][hi - 1], b = H[hi - 1][hi], c = H[hi][hi - 1], d = H[hi][hi];
        Cplx tr = a + d, det = a * d - b * c;
        Cplx disc = std::sqrt(tr * tr - 4.0 * det);
        Cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
        Cplx shift = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
        if (guard % 17 == 0) shift += Cplx(1e-8, 2e-8) * (std::abs(shift) + 1.0);  // exceptional

        // explicit shifted QR step: H - sI = QR, H <- RQ + sI
        for (int i = lo; i <= hi; ++i) H[i][i] -= shift;
        std::vector<Cplx> cs(static_cast<std::size_t>(hi) + 1), sn(static_cast<std::size_t>(hi) + 1);
        for (int k = lo; k < hi; ++k) {
            Cplx x = H[k][k], z = H[k + 1][k];
            double r = std::hypot(std::abs(x), std::abs(z));
            Cplx ck(1.0, 0.0), sk(0.0, 0.0);
            if (r > 0.0) {
                ck = x / r;
                sk = z / r;
            }
            cs[static_cast<std::size_t>(k)] = ck;
            sn[static_cast<std::size_t>(k)] = sk;
            for (int j = k; j <= hi; ++j) {
                Cplx t1 = H[k][j], t2 = H[k + 1][j];
                H[k][j] = std::conj(ck) * t1 + std::conj(sk) * t2;
                H[k + 1][j] = -sk * t1 + ck * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            Cplx ck = cs[static_cast<std::size_t>(k)], sk = sn[static_cast<std::size_t>(k)];
            for (int i = lo; i <= std::min(hi, k + 1); ++i) {
                Cplx t1 = H[i][k], t2 = H[i][k + 1];
                H[i][k] = t1 * ck + t2 * sk;
                H[i][k + 1] = -t1 * std::conj(sk) + t2 * std::conj(ck);
            }
        }
        for (int i = lo; i <= hi; ++i) H[i][i] += shift;
    }
    return eig;
}

// Roots of sum_{k<=deg} coeff[k] z^k (coeff[deg] != 0) through the balanced
// companion matrix.
inline std::vector<Cplx> companion_roots(const std::vector<Cplx>& coeff) {
    int deg = static_cast<int>(coeff.size()) - 1;
    while (deg > 0 && std::abs(coeff[static_cast<std::size_t>(deg)]) == 0.0) --deg;
    if (deg < 1) throw std::runtime_error("companion oracle: degree < 1");
    std::vector<std::vector<Cplx>> H(deg, std::vector<Cplx>(deg, Cplx(0.0, 0.0)));
    Cplx lead = coeff[static_cast<std::size_t>(deg)];
    // subdiagonal ones, last column -a_i/a_deg; characteristic polynomial is
    // the monic version of coeff
    for (int i = 1; i < deg; ++i) H[i][i - 1] = 1.0;
    for (int i = 0; i < deg; ++i) H[i][deg - 1] = -coeff[static_cast<std::size_t>(i)] / lead;
    // Parlett-Reinsch balancing with powers of two
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        for (int i = 0; i < deg; ++i) {
            double rnorm = 0.0, cnorm = 0.0;
            for (int j = 0; j < deg; ++j) {
                if (j == i) continue;
                rnorm += std::abs(H[i][j]);
                cnorm += std::abs(H[j][i]);
            }
            if (rnorm == 0.0 || cnorm == 0.0) continue;
            double f = 1.0;
            while (cnorm < rnorm / 2.0) {
                cnorm *= 2.0;
                rnorm /= 2.0;
                f *= 2.0;
            }
            while (cnorm > rnorm * 2.0) {
                cnorm /= 2.0;
                rnorm *= 2.0;
                f /= 2.0;
            }
            if (f != 1.0) {
                changed = true;
                for (int j = 0; j < deg; ++j) H[j][i] *= f;
                for (int j = 0; j < deg; ++j) H[i][j] /= f;
            }
        }
        if (!changed) break;
    }
    return hessenberg_eigenvalues(std::move(H));
}

}  // namespace szego::testing
