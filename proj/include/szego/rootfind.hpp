#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

#include "szego/constants.hpp"
#include "szego/errors.hpp"
#include "szego/family.hpp"

namespace szego {

struct RootSet {
    std::vector<Complex> roots;      // zeros of p_{n-1}(r_n z), scaled plane
    std::vector<double> residuals;   // backward errors, see all_roots
    int iterations = 0;
    bool converged = false;
    bool cluster_warning = false;    // roots closer than 1e-8 (1+|z|) detected
};

namespace detail {

// Horner evaluation of p and p' with a running sum of |d_k||z|^k for the
// backward-error denominator.  Kahan-style compensation on the value.
struct HornerResult {
    Complex p{0.0, 0.0};
    Complex dp{0.0, 0.0};
    double magnitude_sum = 0.0;  // sum |d_k| |z|^k
};

inline HornerResult horner_eval(const std::vector<Complex>& d, int degree, Complex z) {
    HornerResult r;
    double az = std::abs(z);
    Complex p = d[static_cast<std::size_t>(degree)];
    Complex dp(0.0, 0.0);
    Complex comp(0.0, 0.0);
    double mag = std::abs(p);
    for (int k = degree - 1; k >= 0; --k) {
        dp = dp * z + p;
        Complex prod = p * z;
        Complex t = prod + d[static_cast<std::size_t>(k)];
        // FastTwoSum-style error term; valid up to ordering, harmless otherwise
        Complex dust = (t - prod) - d[static_cast<std::size_t>(k)];
        comp = comp * z - dust;
        p = t;
        mag = mag * az + std::abs(d[static_cast<std::size_t>(k)]);
    }
    r.p = p + comp;
    r.dp = dp;
    r.magnitude_sum = mag;
    return r;
}

// In the region enclosed by the limit curve the monomial sum cancels by
// factors up to e^{n(|z| - Re z^lambda/...)} and double-precision Horner
// returns noise.  For families with cancellation-free exact evaluators the
// partial sum is computed instead as p(z) = f(r_n z) - tail, both sides of
// which are accurate to machine precision.
struct AnalyticEval {
    ScaledComplex p, dp;
    double log_scale = 0.0;  // log max(|f|, |tail|): local magnitude of the split
};

inline AnalyticEval analytic_eval(const PartialSumPoly& poly, Complex z) {
    const auto& imp = *poly.source;
    const Complex w = imp.rotation * (poly.r_n * z);  // native argument
    AnalyticEval out;
    ScaledComplex f = imp.normalization * imp.eval_native(w);
    ScaledComplex df = imp.normalization * imp.eval_native_derivative(w) *
                       ScaledComplex(imp.rotation * poly.r_n);

    // tail sum over k >= n of sigma c_k u^k, u = rotation r_n z
    const Complex u = w;
    const ScaledComplex usc(u);
    ScaledComplex upow = pow_scaled(usc, poly.n - 1);
    ScaledComplex acc, dacc;
    int quiet = 0;
    for (int k = poly.n; k < poly.n + 200000; ++k) {
        upow *= usc;  // now u^k
        ScaledComplex ck = imp.coefficient(k);
        ScaledComplex term = ck * upow;
        acc += term;
        dacc += ScaledComplex(static_cast<double>(k)) * term;
        double ref = acc.is_zero() ? -1e30 : acc.log_abs();
        if (term.is_zero() || term.log_abs() < ref - 40.0)
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 9) break;
    }
    ScaledComplex tail = imp.normalization * acc;
    // d/dz tail = sigma sum k c_k u^{k-1} * rotation r_n = (1/z) sum k c_k u^k sigma
    ScaledComplex dtail = imp.normalization * dacc / ScaledComplex(z);

    out.p = f - tail;
    out.dp = df - dtail;
    out.log_scale = std::max(f.log_abs(), tail.log_abs());
    return out;
}

// deterministic small PRNG for restarts
struct SplitMix {
    std::uint64_t s;
    explicit SplitMix(std::uint64_t seed) : s(seed) {}
    double next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

struct PointEval {
    Complex newton{0.0, 0.0};  // p/p'
    double backward = 1.0;
};

}  // namespace detail

// Seeds on Newton-polygon circles: radii from the upper convex hull of
// (k, log|d_k|), angles spread evenly and nudged off the real axis.
inline std::vector<Complex> initial_guesses(const PartialSumPoly& poly) {
    const int deg = poly.effective_degree;
    if (deg < 1) throw ParameterError("initial_guesses: degree must be >= 1");
    std::vector<double> lg(static_cast<std::size_t>(deg) + 1,
                           -std::numeric_limits<double>::infinity());
    for (int k = 0; k <= deg; ++k)
        if (!poly.coeffs[static_cast<std::size_t>(k)].is_zero())
            lg[static_cast<std::size_t>(k)] = poly.coeffs[static_cast<std::size_t>(k)].log_abs();

    // structural zeros of the lowest coefficients put roots exactly at the
    // origin (multiplicity = valuation); seed them there directly
    int valuation = 0;
    while (valuation <= deg && poly.coeffs[static_cast<std::size_t>(valuation)].is_zero())
        ++valuation;

    std::vector<int> hull;
    for (int k = 0; k <= deg; ++k) {
        if (std::isinf(lg[static_cast<std::size_t>(k)])) continue;
        while (hull.size() >= 2) {
            int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            double cross = (lg[static_cast<std::size_t>(b)] - lg[static_cast<std::size_t>(a)]) *
                               (k - a) -
                           (lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(a)]) *
                               (b - a);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }

    // Vieta: the geometric mean of the nonzero-root moduli; no root of these
    // sections falls far inside it, so polygon radii are floored at a
    // fraction of it.
    double geo = std::exp((lg[static_cast<std::size_t>(valuation)] - lg[static_cast<std::size_t>(deg)]) /
                          static_cast<double>(deg - valuation));

    std::vector<Complex> seeds;
    seeds.reserve(static_cast<std::size_t>(deg));
    for (int v = 0; v < valuation; ++v)
        seeds.emplace_back(0.0, v == 0 ? 0.0 : v * 1e-9 * geo);
    const double angle0 = 0.57721;          // fixed offset off any symmetry axis
    const double wind = 2.39996322972865332;  // golden angle, spreads one-seed circles
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        int k1 = hull[h], k2 = hull[h + 1];
        int count = k2 - k1;
        double radius = std::exp((lg[static_cast<std::size_t>(k1)] - lg[static_cast<std::size_t>(k2)]) /
                                 static_cast<double>(count));
        radius = std::max(radius, 0.6 * geo);
        for (int j = 0; j < count; ++j) {
            double ang = angle0 + 2.0 * detail::kPi * j / count + wind * static_cast<double>(h);
            seeds.emplace_back(radius * std::cos(ang), radius * std::sin(ang));
        }
    }
    return seeds;
}

// All zeros of the scaled partial sum by Aberth-Ehrlich simultaneous
// iteration (Gauss-Seidel sweep order; deterministic).  Residuals are
// backward errors |p(z)| / sum|d_k||z|^k; where the analytic f - tail route
// is engaged the denominator is the tighter local scale max(|f|, |tail|).
// The Gauss-Seidel sweep (default) updates in place and is the
// deterministic reference; jacobi_parallel computes a whole sweep from the
// previous iterate across threads (also deterministic: the update order
// does not matter in the Jacobi variant).
inline RootSet all_roots(const PartialSumPoly& poly, double tol = 1e-13,
                         std::uint64_t seed = 0, bool jacobi_parallel = false) {
    const int deg = poly.effective_degree;
    if (deg < 1) throw ParameterError("all_roots: degree must be >= 1");
    std::vector<Complex> d = poly.prescaled();
    d.resize(static_cast<std::size_t>(deg) + 1);

    const bool analytic_ok = poly.source && poly.source->eval_cancellation_free &&
                             poly.source->eval_native && poly.source->eval_native_derivative;
    const double eps = 2.22e-16;
    const double thr = std::max(tol, 4.0 * deg * eps);

    auto evaluate = [&](Complex zi) {
        detail::PointEval ev;
        detail::HornerResult h = detail::horner_eval(d, deg, zi);
        double noise_floor = 8.0 * deg * eps * h.magnitude_sum;
        // magnitude_sum can underflow the double working copy at extreme n;
        // that region is exactly where the analytic route is mandatory
        bool horner_degenerate = !(h.magnitude_sum > 1e-280);
        if (analytic_ok && (std::abs(h.p) < 1e5 * noise_floor || horner_degenerate)) {
            detail::AnalyticEval ae = detail::analytic_eval(poly, zi);
            // scale includes |p'|(1+|z|): a root pinned to the last
            // representable digit of z counts as converged even when the
            // local function scale sits far below |p'| * ulp(z)
            double l_scale = ae.log_scale;
            if (!ae.dp.is_zero())
                l_scale = std::max(l_scale, ae.dp.log_abs() + std::log1p(std::abs(zi)));
            ev.backward = ae.p.is_zero() ? 0.0 : std::exp(ae.p.log_abs() - l_scale);
            ev.newton = ae.dp.is_zero() ? Complex(0.0, 0.0) : (ae.p / ae.dp).to_complex();
        } else {
            ev.backward = std::abs(h.p) / std::max(h.magnitude_sum, 1e-300);
            ev.newton = (h.dp != Complex(0.0, 0.0)) ? h.p / h.dp : Complex(0.0, 0.0);
        }
        return ev;
    };

    RootSet out;
    out.roots = initial_guesses(poly);
    out.residuals.assign(static_cast<std::size_t>(deg), 1.0);
    std::vector<char> done(static_cast<std::size_t>(deg), 0);

    detail::SplitMix rng(seed * 0x9e3779b97f4a7c15ull + 0x42ull);
    const int kMaxSweeps = 200;
    const int kMaxRestarts = 2;
    int restarts = 0;

    auto aberth_step = [&](int i, const std::vector<Complex>& from) {
        Complex zi = from[static_cast<std::size_t>(i)];
        detail::PointEval ev = evaluate(zi);
        if (ev.backward <= thr) return std::pair<Complex, double>(zi, ev.backward);
        Complex repel(0.0, 0.0);
        for (int j = 0; j < deg; ++j) {
            if (j == i) continue;
            Complex diff = zi - from[static_cast<std::size_t>(j)];
            if (std::abs(diff) < 1e-300) diff = Complex(1e-12, 1e-12);
            repel += 1.0 / diff;
        }
        Complex denom = 1.0 - ev.newton * repel;
        // |1 - N S| -> 0 signals a collision with an already-placed root;
        // the step must stay repulsive, never collapse to bare Newton.
        double ad = std::abs(denom);
        if (ad < 1e-8) denom = (ad > 0.0 ? denom / ad : Complex(1.0, 0.0)) * 1e-8;
        Complex step = ev.newton / denom;
        double cap = 0.5 * (1.0 + std::abs(zi));
        double as = std::abs(step);
        if (as > cap) step *= cap / as;
        return std::pair<Complex, double>(zi - step, ev.backward);
    };

    // restart the worst 10% of stuck approximations: fresh angles on radii
    // near the Vieta mean, where the vacant root slots live
    const double geo_radius = std::exp(
        (poly.coeffs[0].is_zero()
             ? poly.coeffs[1].log_abs()
             : poly.coeffs[0].log_abs() - poly.coeffs[static_cast<std::size_t>(deg)].log_abs()) /
        static_cast<double>(deg));
    auto restart_worst = [&] {
        std::vector<int> bad;
        for (int i = 0; i < deg; ++i)
            if (!done[static_cast<std::size_t>(i)]) bad.push_back(i);
        std::sort(bad.begin(), bad.end(), [&](int a, int b) {
            return out.residuals[static_cast<std::size_t>(a)] >
                   out.residuals[static_cast<std::size_t>(b)];
        });
        std::size_t n_restart = std::max<std::size_t>(1, bad.size() / 10);
        for (std::size_t k = 0; k < n_restart && k < bad.size(); ++k) {
            double r = geo_radius * (0.7 + 0.8 * rng.next());
            double ang = 2.0 * detail::kPi * rng.next();
            out.roots[static_cast<std::size_t>(bad[k])] =
                Complex(r * std::cos(ang), r * std::sin(ang));
        }
    };

    int last_remaining = -1, stagnant = 0;
    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
        out.iterations = sweep;
        int remaining = 0;
        if (jacobi_parallel) {
            std::vector<Complex> prev = out.roots;
            unsigned workers = std::max(1u, std::thread::hardware_concurrency());
            std::vector<std::future<void>> futs;
            std::size_t chunk = (static_cast<std::size_t>(deg) + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                std::size_t lo = w * chunk, hi = std::min<std::size_t>(deg, lo + chunk);
                if (lo >= hi) break;
                futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) {
                        if (done[i]) continue;
                        auto [znew, backward] = aberth_step(static_cast<int>(i), prev);
                        out.roots[i] = znew;
                        out.residuals[i] = backward;
                        if (backward <= thr) done[i] = 1;
                    }
                }));
            }
            for (auto& f : futs) f.get();
            for (int i = 0; i < deg; ++i)
                if (!done[static_cast<std::size_t>(i)]) ++remaining;
        } else {
            for (int i = 0; i < deg; ++i) {
                if (done[static_cast<std::size_t>(i)]) continue;
                auto [znew, backward] = aberth_step(i, out.roots);
                out.residuals[static_cast<std::size_t>(i)] = backward;
                if (backward <= thr) {
                    done[static_cast<std::size_t>(i)] = 1;
                    continue;
                }
                ++remaining;
                out.roots[static_cast<std::size_t>(i)] = znew;
            }
        }
        if (remaining == 0) break;
        stagnant = (remaining == last_remaining) ? stagnant + 1 : 0;
        last_remaining = remaining;
        if (stagnant >= 50) break;  // frozen stragglers; the Newton stage takes over
        if (sweep == kMaxSweeps && restarts < kMaxRestarts) {
            restart_worst();
            sweep = 0;
            ++restarts;
        }
    }

    // stragglers: an iterate stranded in a zero-free expanse is frozen by
    // the Aberth repulsion (its correction degenerates to -1/S with an
    // arbitrary direction).  Walk it home with damped Newton; if it lands on
    // an occupied root, kick it to a fresh spot near the Vieta radius.
    for (int round = 0; round < 6; ++round) {
        bool any_left = false;
        for (int i = 0; i < deg; ++i) {
            if (done[static_cast<std::size_t>(i)]) continue;
            Complex z = out.roots[static_cast<std::size_t>(i)];
            detail::PointEval ev = evaluate(z);
            for (int it = 0; it < 300 && !(ev.backward <= thr); ++it) {
                Complex step = ev.newton;
                double cap = 0.5 * (1.0 + std::abs(z));
                double as = std::abs(step);
                if (as > cap) step *= cap / as;
                z -= step;
                ev = evaluate(z);
            }
            bool duplicate = false;
            for (int j = 0; j < deg; ++j) {
                if (j == i) continue;
                if (std::abs(z - out.roots[static_cast<std::size_t>(j)]) <
                    1e-8 * (1.0 + std::abs(z)))
                    duplicate = true;
            }
            if (ev.backward <= thr && !duplicate) {
                out.roots[static_cast<std::size_t>(i)] = z;
                out.residuals[static_cast<std::size_t>(i)] = ev.backward;
                done[static_cast<std::size_t>(i)] = 1;
            } else {
                double r = geo_radius * (0.7 + 0.8 * rng.next());
                double ang = 2.0 * detail::kPi * rng.next();
                out.roots[static_cast<std::size_t>(i)] =
                    Complex(r * std::cos(ang), r * std::sin(ang));
                any_left = true;
            }
        }
        if (!any_left) break;
    }

    out.converged = true;
    for (int i = 0; i < deg; ++i) {
        out.residuals[static_cast<std::size_t>(i)] =
            evaluate(out.roots[static_cast<std::size_t>(i)]).backward;
        if (!(out.residuals[static_cast<std::size_t>(i)] <= thr)) out.converged = false;
    }
    for (int i = 0; i < deg && !out.cluster_warning; ++i)
        for (int j = i + 1; j < deg; ++j) {
            double sep = std::abs(out.roots[static_cast<std::size_t>(i)] -
                                  out.roots[static_cast<std::size_t>(j)]);
            if (sep < 1e-8 * (1.0 + std::abs(out.roots[static_cast<std::size_t>(i)]))) {
                out.cluster_warning = true;
                break;
            }
        }
    return out;
}

// Value of p_{n-1}(r_n z) in scaled representation (prescale undone), using
// the analytic f - tail route wherever Horner is cancellation-dominated.
inline ScaledComplex evaluate_partial_sum(const PartialSumPoly& poly, Complex z) {
    std::vector<Complex> d = poly.prescaled();
    detail::HornerResult h = detail::horner_eval(d, poly.effective_degree, z);
    const bool analytic_ok = poly.source && poly.source->eval_cancellation_free &&
                             poly.source->eval_native && poly.source->eval_native_derivative;
    double noise_floor = 8.0 * poly.effective_degree * 2.22e-16 * h.magnitude_sum;
    if (analytic_ok && std::abs(h.p) < 1e5 * noise_floor)
        return detail::analytic_eval(poly, z).p;
    return ScaledComplex(h.p).scalbn2(poly.prescale_exponent);
}

// | prod |z_i| - |d_0/d_deg| | / |d_0/d_deg|, accumulated in log space.
inline double vieta_check(const PartialSumPoly& poly, const RootSet& roots) {
    const int deg = poly.effective_degree;
    double logsum = 0.0;
    for (const Complex& z : roots.roots) logsum += std::log(std::abs(z));
    double logref = poly.coeffs[0].log_abs() - poly.coeffs[static_cast<std::size_t>(deg)].log_abs();
    return std::abs(std::expm1(logsum - logref));
}

}  // namespace szego
