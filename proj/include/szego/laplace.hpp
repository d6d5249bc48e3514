#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "szego/errors.hpp"
#include "szego/gamma.hpp"
#include "szego/quadrature.hpp"

namespace szego {

enum class SeriesOrigin { watson, log_power, boundary, interior };

// sum_i c_i lambda^{-p_i} (log lambda)^{q_i}, ordered by decreasing
// asymptotic size: p nondecreasing, q decreasing within equal p.
struct AsymptoticSeries {
    struct Term {
        std::complex<double> coeff{0.0, 0.0};
        double lambda_power = 0.0;  // p in lambda^{-p}
        double log_power = 0.0;     // q in (log lambda)^q
    };
    std::vector<Term> terms;
    SeriesOrigin origin = SeriesOrigin::watson;
    // exponential prefactor e^{g_max lambda} carried symbolically (boundary
    // and interior cases); 0 means no prefactor
    double exp_prefactor_g = 0.0;
    // declared relative-error order lambda^{-err_order} (0 = none declared)
    double relative_error_order = 0.0;

    void check_ordering() const {
        for (std::size_t i = 1; i < terms.size(); ++i) {
            if (terms[i].lambda_power < terms[i - 1].lambda_power - 1e-14)
                throw ParameterError("AsymptoticSeries: lambda powers must be nondecreasing");
            if (std::abs(terms[i].lambda_power - terms[i - 1].lambda_power) < 1e-14 &&
                terms[i].log_power >= terms[i - 1].log_power)
                throw ParameterError("AsymptoticSeries: log powers must decrease within a block");
        }
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const Term& t = terms[i];
            if (i) os << " + ";
            os << "(" << t.coeff.real();
            if (t.coeff.imag() != 0.0) os << (t.coeff.imag() < 0 ? " - " : " + ")
                                          << std::abs(t.coeff.imag()) << "i";
            os << ")";
            os << " * lambda^{-" << t.lambda_power << "}";
            if (t.log_power != 0.0) os << " * (log lambda)^{" << t.log_power << "}";
        }
        if (exp_prefactor_g != 0.0) os << "   [times e^{" << exp_prefactor_g << " lambda}]";
        return os.str();
    }
};

// Watson's lemma: int_0^T f(t) e^{-lambda t} dt with f ~ sum a_k t^{b_k}
// maps term-by-term onto sum a_k Gamma(b_k+1) lambda^{-b_k-1}.
inline AsymptoticSeries watson(const std::vector<std::pair<std::complex<double>, double>>& terms_in,
                               int count) {
    if (count < 1) throw ParameterError("watson: count must be >= 1");
    AsymptoticSeries s;
    s.origin = SeriesOrigin::watson;
    double prev = -1.0;
    int emitted = 0;
    for (const auto& [a_k, b_k] : terms_in) {
        if (emitted == 0) {
            if (!(b_k > -1.0)) throw ParameterError("watson: need b_0 > -1");
        } else if (!(b_k > prev)) {
            throw ParameterError("watson: exponents must be strictly increasing");
        }
        prev = b_k;
        if (emitted >= count) break;
        AsymptoticSeries::Term t;
        t.coeff = a_k * gamma(std::complex<double>(b_k + 1.0, 0.0));
        t.lambda_power = b_k + 1.0;
        t.log_power = 0.0;
        s.terms.push_back(t);
        ++emitted;
    }
    s.check_ordering();
    return s;
}

// Log-power integrals: int_0^delta (-log t)^b t^{a-1} e^{-lambda t} dt
// ~ lambda^{-a} sum_k (-1)^k C(b,k) Gamma^{(k)}(a) (log lambda)^{b-k}.
inline AsymptoticSeries log_power(double a, double b, int count) {
    if (!(a > 0.0)) throw ParameterError("log_power: need a > 0");
    if (count < 1) throw ParameterError("log_power: count must be >= 1");
    AsymptoticSeries s;
    s.origin = SeriesOrigin::log_power;
    double binom = 1.0;  // C(b, 0)
    for (int k = 0; k < count; ++k) {
        if (k > 0) binom *= (b - (k - 1)) / static_cast<double>(k);
        if (binom == 0.0) break;  // integer b: binomial series terminates
        AsymptoticSeries::Term t;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        t.coeff = sign * binom * gamma_derivative(a, k);
        t.lambda_power = a;
        t.log_power = b - k;
        s.terms.push_back(t);
    }
    s.check_ordering();
    return s;
}

// Boundary-maximum leading term: f ~ (t-a)^p, g'(a) < 0 gives
// Gamma(p+1) (-g'(a) lambda)^{-p-1} e^{g(a) lambda}.
inline AsymptoticSeries boundary_leading(double p, double g_at_a, double gprime_at_a) {
    if (!(p > -1.0)) throw ParameterError("boundary_leading: need p > -1");
    if (!(gprime_at_a < 0.0))
        throw ParameterError("boundary_leading: need g'(a) < 0 at the boundary maximum");
    AsymptoticSeries s;
    s.origin = SeriesOrigin::boundary;
    s.exp_prefactor_g = g_at_a;
    AsymptoticSeries::Term t;
    t.coeff = gamma(std::complex<double>(p + 1.0, 0.0)) *
              std::pow(-gprime_at_a, -(p + 1.0));
    t.lambda_power = p + 1.0;
    s.terms.push_back(t);
    return s;
}

// Interior-critical-point leading term: f ~ (t-t0)^{2n}, g''(t0) < 0 gives
// Gamma(n+1/2) (2/(-g''(t0) lambda))^{n+1/2} e^{g(t0) lambda} [1 + O(lambda^{-1/2})].
inline AsymptoticSeries interior_leading(int n, double gpp_at_t0, double g_at_t0) {
    if (n < 0) throw ParameterError("interior_leading: need n >= 0");
    if (!(gpp_at_t0 < 0.0))
        throw ParameterError("interior_leading: need g''(t0) < 0 at the interior maximum");
    AsymptoticSeries s;
    s.origin = SeriesOrigin::interior;
    s.exp_prefactor_g = g_at_t0;
    s.relative_error_order = 0.5;
    AsymptoticSeries::Term t;
    t.coeff = gamma(std::complex<double>(n + 0.5, 0.0)) *
              std::pow(2.0 / (-gpp_at_t0), n + 0.5);
    t.lambda_power = n + 0.5;
    s.terms.push_back(t);
    return s;
}

// Numerical confirmation of the tail bound int_I f e^{lambda g} = O(e^{M lambda}):
// the ratio |integral| / e^{M lambda} must be bounded with a nonincreasing
// envelope over the lambda grid.  Sampling g >= M anywhere is a precondition
// violation and throws.
inline bool tail_bound_check(const std::function<double(double)>& f,
                             const std::function<double(double)>& g, double M, double t_lo,
                             double t_hi, const std::vector<double>& lambda_grid) {
    if (t_lo >= t_hi) return true;  // empty interval: trivially bounded
    const bool infinite = std::isinf(t_hi);
    const double probe_hi = infinite ? t_lo + 64.0 : t_hi;
    for (int j = 0; j <= 512; ++j) {
        double t = t_lo + (probe_hi - t_lo) * j / 512.0;
        if (!(g(t) < M))
            throw ParameterError("tail_bound_check: g(t) >= M breaks the precondition");
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double lam : lambda_grid) {
        auto integrand = [&](double t) {
            return std::complex<double>(f(t) * std::exp(lam * g(t) - M * lam), 0.0);
        };
        QuadratureResult q = integrate_adaptive(integrand, t_lo, t_hi, 1e-10);
        double ratio = std::abs(q.value);
        if (ratio > prev * (1.0 + 1e-9)) return false;
        prev = ratio;
    }
    return true;
}

// Partial sum of the series plus the magnitude of the first omitted term
// (the usual asymptotic error proxy).
inline std::pair<std::complex<double>, double> series_eval(const AsymptoticSeries& s, double lambda,
                                                           int terms) {
    if (terms < 0 || terms > static_cast<int>(s.terms.size()))
        throw ParameterError("series_eval: terms out of range");
    const double ll = std::log(lambda);
    auto term_value = [&](const AsymptoticSeries::Term& t) {
        return t.coeff * std::exp(-t.lambda_power * ll) * std::pow(ll, t.log_power);
    };
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < terms; ++i) acc += term_value(s.terms[static_cast<std::size_t>(i)]);
    double omitted = 0.0;
    if (terms < static_cast<int>(s.terms.size()))
        omitted = std::abs(term_value(s.terms[static_cast<std::size_t>(terms)]));
    return {acc, omitted};
}

}  // namespace szego
