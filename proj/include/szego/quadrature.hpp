#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

#include "szego/errors.hpp"
#include "szego/gamma.hpp"

namespace szego {

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Integrable endpoint singularities (t-a)^alpha_a, (b-t)^alpha_b declared by
// the caller; alpha in (-1, 0] ("0" meaning none).
struct EndpointHints {
    double alpha_a = 0.0;
    double alpha_b = 0.0;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(const F& f, double a, double b, std::complex<double>& value, double& err,
                 int& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> kres(0.0, 0.0), gres(0.0, 0.0);
    for (int j = 0; j < 8; ++j) {
        double x = kKronrodNodes[j];
        std::complex<double> fv;
        if (j == 7) {
            fv = f(c);
            evals += 1;
        } else {
            fv = f(c - h * x) + f(c + h * x);
            evals += 2;
        }
        kres += kKronrodWeights[j] * fv;
        // odd Kronrod indices 1,3,5 and the center are the embedded Gauss-7 nodes
        if (j == 1 || j == 3 || j == 5) gres += kGaussWeights[(j - 1) / 2] * fv;
        if (j == 7) gres += kGaussWeights[3] * fv;
    }
    value = h * kres;
    err = std::abs(h * (kres - gres));
}

struct Segment {
    double a, b;
    std::complex<double> value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of a complex-valued integrand
// over (a, b); b may be +infinity.  Declared endpoint singularities are
// removed by a power substitution before the adaptive stage.
inline QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                           double a, double b, double tol,
                                           EndpointHints hints = {}) {
    if (!(tol > 0.0)) throw ParameterError("integrate_adaptive: tol must be positive");

    // Map an infinite upper limit onto [0, 1).
    if (std::isinf(b)) {
        auto g = [f, a](double u) {
            double om = 1.0 - u;
            double t = a + u / om;
            return f(t) / (om * om);
        };
        EndpointHints h2;
        h2.alpha_a = hints.alpha_a;
        return integrate_adaptive(g, 0.0, 1.0 - 1e-15, tol, h2);
    }

    // Power substitutions for declared endpoint singularities.
    if (hints.alpha_a != 0.0 && hints.alpha_b != 0.0) {
        double mid = 0.5 * (a + b);
        EndpointHints ha{hints.alpha_a, 0.0}, hb{0.0, hints.alpha_b};
        QuadratureResult r1 = integrate_adaptive(f, a, mid, 0.5 * tol, ha);
        QuadratureResult r2 = integrate_adaptive(f, mid, b, 0.5 * tol, hb);
        return {r1.value + r2.value, r1.error_estimate + r2.error_estimate,
                r1.evaluations + r2.evaluations};
    }
    if (hints.alpha_a != 0.0) {
        int gexp = std::max(2, static_cast<int>(std::ceil(2.0 / (1.0 + hints.alpha_a))));
        double w = b - a;
        auto g = [f, a, w, gexp](double u) {
            double ug = std::pow(u, gexp);
            return f(a + w * ug) * (w * gexp * std::pow(u, gexp - 1));
        };
        return integrate_adaptive(g, 0.0, 1.0, tol, {});
    }
    if (hints.alpha_b != 0.0) {
        int gexp = std::max(2, static_cast<int>(std::ceil(2.0 / (1.0 + hints.alpha_b))));
        double w = b - a;
        auto g = [f, b, w, gexp](double u) {
            double ug = std::pow(u, gexp);
            return f(b - w * ug) * (w * gexp * std::pow(u, gexp - 1));
        };
        return integrate_adaptive(g, 0.0, 1.0, tol, {});
    }

    int evals = 0;
    std::priority_queue<detail::Segment> heap;
    detail::Segment s0{a, b, {}, 0.0};
    detail::gk15(f, a, b, s0.value, s0.err, evals);
    heap.push(s0);
    std::complex<double> total = s0.value;
    double toterr = s0.err;

    const int kMaxSegments = 4000;
    int segments = 1;
    while (toterr > std::max(tol * std::abs(total), tol) * 0.5) {
        if (segments >= kMaxSegments || heap.empty())
            throw ToleranceError("integrate_adaptive: tolerance not met", total, toterr);
        detail::Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        toterr -= worst.err;
        double mid = 0.5 * (worst.a + worst.b);
        detail::Segment l{worst.a, mid, {}, 0.0}, r{mid, worst.b, {}, 0.0};
        detail::gk15(f, l.a, l.b, l.value, l.err, evals);
        detail::gk15(f, r.a, r.b, r.value, r.err, evals);
        total += l.value + r.value;
        toterr += l.err + r.err;
        heap.push(l);
        heap.push(r);
        ++segments;
    }
    return {total, toterr, evals};
}

namespace detail {

// Eigenvalues + first eigenvector components of a symmetric tridiagonal
// matrix by the implicit-shift QL algorithm (EISPACK imtql2 lineage).
inline void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                              std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double eps = 2.22e-16;
    e.resize(n, 0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) throw ConvergenceError("tridiagonal_eigen: QL failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double fi = s * e[i];
                double bi = c * e[i];
                r = std::hypot(fi, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = fi / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bi;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bi;
                double fz = z[i + 1];
                z[i + 1] = s * z[i] + c * fz;
                z[i] = c * z[i] - s * fz;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // sort ascending, permuting z along
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

}  // namespace detail

struct GaussJacobiRule {
    std::vector<double> nodes;    // ascending in [-1, 1]
    std::vector<double> weights;  // against (1-t)^q (1+t)^p
};

// Gauss-Jacobi rule for the weight (1-t)^q (1+t)^p on [-1, 1]; exact for
// polynomials of degree <= 2m-1.  Golub-Welsch on the Jacobi recurrence.
inline GaussJacobiRule gauss_jacobi_nodes(double p, double q, int m) {
    if (!(p > -1.0) || !(q > -1.0)) throw ParameterError("gauss_jacobi_nodes: p, q must be > -1");
    if (m < 1) throw ParameterError("gauss_jacobi_nodes: m must be >= 1");
    // Jacobi convention: alpha pairs with (1-x), beta with (1+x).
    const double al = q, be = p;
    std::vector<double> d(m), esq(m, 0.0);
    d[0] = (be - al) / (al + be + 2.0);
    for (int k = 1; k < m; ++k) {
        double s = 2.0 * k + al + be;
        d[k] = (be * be - al * al) / (s * (s + 2.0));
    }
    if (m > 1) {
        esq[1] = 4.0 * (al + 1.0) * (be + 1.0) /
                 ((al + be + 2.0) * (al + be + 2.0) * (al + be + 3.0));
        for (int k = 2; k < m; ++k) {
            double s = 2.0 * k + al + be;
            esq[k] = 4.0 * k * (k + al) * (k + be) * (k + al + be) /
                     (s * s * (s + 1.0) * (s - 1.0));
        }
    }
    // mu0 = 2^{al+be+1} Gamma(al+1) Gamma(be+1) / Gamma(al+be+2)
    double mu0 = std::exp((al + be + 1.0) * std::log(2.0) +
                          log_gamma(std::complex<double>(al + 1.0, 0.0)).real() +
                          log_gamma(std::complex<double>(be + 1.0, 0.0)).real() -
                          log_gamma(std::complex<double>(al + be + 2.0, 0.0)).real());
    std::vector<double> e(m, 0.0), z(m, 0.0);
    for (int k = 1; k < m; ++k) e[k - 1] = std::sqrt(esq[k]);
    z[0] = 1.0;
    detail::tridiagonal_eigen(d, e, z);
    GaussJacobiRule rule;
    rule.nodes = d;
    rule.weights.resize(m);
    for (int k = 0; k < m; ++k) rule.weights[k] = mu0 * z[k] * z[k];
    return rule;
}

}  // namespace szego
