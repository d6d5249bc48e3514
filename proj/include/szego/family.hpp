#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/errors.hpp"
#include "szego/gamma.hpp"
#include "szego/growth.hpp"
#include "szego/quadrature.hpp"
#include "szego/scaled_complex.hpp"

namespace szego {

using Complex = std::complex<double>;

namespace detail {

// Generator contract: produce the k-th native Maclaurin coefficient, with
// read access to all previously generated ones (recurrence families).
using CoeffGenerator = std::function<ScaledComplex(int, const std::vector<ScaledComplex>&)>;

struct FamilyImpl {
    std::string name;
    nlohmann::json params;
    GrowthSpec growth;
    // native argument = rotation * computed argument;
    // f_computed(z) = normalization * f_native(rotation * z)
    Complex rotation{1.0, 0.0};
    ScaledComplex normalization{1.0};
    CoeffGenerator native_coeff;
    std::function<ScaledComplex(Complex)> eval_native;             // optional
    std::function<ScaledComplex(Complex)> eval_native_derivative;  // optional, closed forms
    // true when eval_native is accurate to machine precision everywhere
    // (closed forms); series- or quadrature-backed evaluators are not
    bool eval_cancellation_free = false;
    bool prefer_surrogate = false;
    double surrogate_radius = 10.0;
    // parity: coefficient is structurally zero unless k % modulus in residues
    int parity_modulus = 1;
    std::vector<int> parity_residues{0};

    mutable std::vector<ScaledComplex> cache;
    mutable std::mutex cache_mutex;

    ScaledComplex coefficient(int k) const {
        std::scoped_lock lock(cache_mutex);
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(native_coeff(static_cast<int>(cache.size()), cache));
        return cache[static_cast<std::size_t>(k)];
    }
};

inline ScaledComplex pow_scaled(const ScaledComplex& base, int k) {
    ScaledComplex r(1.0);
    ScaledComplex b = base;
    int e = k;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Coefficients of the scaled partial sum p_{n-1}(r_n z) in the normalized
// (computed) plane, prescaled so the largest magnitude is O(1).
struct PartialSumPoly {
    int n = 0;        // polynomial is p_{n-1}
    double r_n = 0.0;
    double lambda = 1.0;
    std::string family;
    Complex rotation{1.0, 0.0};
    std::vector<ScaledComplex> coeffs;    // prescale already applied
    std::int64_t prescale_exponent = 0;   // coeffs were scaled by 2^{-prescale_exponent}
    int effective_degree = 0;             // trailing structural zeros trimmed
    bool degree_deficient = false;
    std::shared_ptr<const detail::FamilyImpl> source;  // for f - tail evaluation

    // Ordinary-precision working copy; valid whenever the prescaled range
    // fits in doubles (it does for every n used in this project).
    std::vector<Complex> prescaled() const {
        std::vector<Complex> out(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = coeffs[k].to_complex();
        return out;
    }
};

enum class RadiusMode { standard, mittag_leffler_corrected };

class FunctionFamily {
  public:
    explicit FunctionFamily(std::shared_ptr<const detail::FamilyImpl> impl) : impl_(std::move(impl)) {}

    const std::string& name() const { return impl_->name; }
    const nlohmann::json& params() const { return impl_->params; }
    const GrowthSpec& growth() const { return impl_->growth; }
    Complex rotation() const { return impl_->rotation; }
    double lambda() const { return impl_->growth.lambda; }
    bool prefer_surrogate() const { return impl_->prefer_surrogate; }
    double surrogate_radius() const { return impl_->surrogate_radius; }

    // k-th Maclaurin coefficient f^(k)(0)/k! of the raw named function.
    ScaledComplex coefficient(int k) const {
        if (k < 0) throw ParameterError("coefficient: k must be >= 0");
        return impl_->coefficient(k);
    }

    // Coefficient of the rotated, normalized function the theorems apply to.
    ScaledComplex coefficient_scaled(int k) const {
        return impl_->normalization * detail::pow_scaled(ScaledComplex(impl_->rotation), k) *
               coefficient(k);
    }

    bool has_eval_exact() const { return static_cast<bool>(impl_->eval_native); }
    std::shared_ptr<const detail::FamilyImpl> impl() const { return impl_; }

    // f in the computed plane, evaluated exactly (closed form, convergent
    // series, or quadrature depending on the family).
    ScaledComplex eval_exact(Complex z) const {
        if (!impl_->eval_native) throw ParameterError("eval_exact: family has no exact evaluator");
        return impl_->normalization * impl_->eval_native(impl_->rotation * z);
    }

    // Growth-sector asymptotic surrogate A_k (z/zeta_k)^{b_k} exp((z/zeta_k)^lambda),
    // times (log z)^b in the one-direction log case.
    ScaledComplex eval_surrogate(Complex z) const {
        const GrowthSpec& g = impl_->growth;
        if (std::abs(z) < impl_->surrogate_radius)
            throw OutOfSectorError("eval_surrogate: |z| below validity radius");
        for (const Direction& d : g.directions) {
            Complex w = z / d.zeta;
            if (std::abs(std::arg(w)) <= g.theta + 1e-12) {
                Complex lw = std::log(w);
                Complex expo = d.b * lw + std::exp(g.lambda * lw) + std::log(d.A);
                if (g.log_exponent != Complex(0.0, 0.0))
                    expo += g.log_exponent * std::log(std::log(z));
                return ScaledComplex::from_log(expo.real(), expo.imag());
            }
        }
        throw OutOfSectorError("eval_surrogate: z lies in no declared growth sector");
    }

    // structurally-zero coefficient pattern (exact zeros)
    bool coefficient_is_structural_zero(int k) const {
        const auto& imp = *impl_;
        if (imp.parity_modulus <= 1) return false;
        int r = k % imp.parity_modulus;
        for (int allowed : imp.parity_residues)
            if (r == allowed) return false;
        return true;
    }

  private:
    std::shared_ptr<const detail::FamilyImpl> impl_;
};

// ---------------------------------------------------------------------------
// scaled partial sums

// p_m(radius * z): the degree-m truncation with an explicit scaling radius.
inline PartialSumPoly truncation(const FunctionFamily& fam, int degree, double radius) {
    if (degree < 1) throw ParameterError("truncation: degree must be >= 1");
    PartialSumPoly poly;
    poly.n = degree + 1;
    poly.r_n = radius;
    poly.lambda = fam.lambda();
    poly.family = fam.name();
    poly.rotation = fam.rotation();
    poly.source = fam.impl();
    poly.coeffs.resize(static_cast<std::size_t>(degree) + 1);

    ScaledComplex rp(1.0);
    ScaledComplex r(radius);
    std::int64_t emax = std::numeric_limits<std::int64_t>::min();
    for (int k = 0; k <= degree; ++k) {
        ScaledComplex d = fam.coefficient_scaled(k) * rp;
        poly.coeffs[static_cast<std::size_t>(k)] = d;
        if (!d.is_zero()) emax = std::max(emax, d.exponent());
        rp *= r;
    }
    if (emax == std::numeric_limits<std::int64_t>::min())
        throw ParameterError("truncation: all scaled coefficients vanish");
    poly.prescale_exponent = emax;
    for (auto& d : poly.coeffs) d = d.scalbn2(-emax);

    int eff = degree;
    while (eff > 0 && poly.coeffs[static_cast<std::size_t>(eff)].is_zero()) --eff;
    poly.effective_degree = eff;
    poly.degree_deficient = (eff != degree);
    if (eff < 1) throw ParameterError("truncation: polynomial degenerates to a constant");
    return poly;
}

inline double scaling_radius(const FunctionFamily& fam, int n, RadiusMode mode) {
    double r = std::pow(n / fam.lambda(), 1.0 / fam.lambda());
    if (mode == RadiusMode::mittag_leffler_corrected) r *= std::exp(1.0 / (2.0 * n));
    return r;
}

// p_{n-1}(r_n z) with r_n = (n/lambda)^{1/lambda} (optionally the corrected
// Mittag-Leffler radius e^{1/(2n)} (n/lambda)^{1/lambda}).
inline PartialSumPoly partial_sum(const FunctionFamily& fam, int n,
                                  RadiusMode mode = RadiusMode::standard) {
    if (n < 2) throw ParameterError("partial_sum: n must be >= 2");
    return truncation(fam, n - 1, scaling_radius(fam, n, mode));
}

// ---------------------------------------------------------------------------
// family presets

namespace detail {

inline ScaledComplex exp_scaled(Complex z) { return ScaledComplex::from_log(z.real(), z.imag()); }

// generic convergent-series evaluator over native coefficients
inline ScaledComplex sum_native_series(const FamilyImpl& imp, Complex w) {
    ScaledComplex acc;
    ScaledComplex wp(1.0);
    ScaledComplex wsc(w);
    int quiet = 0;
    const int kMax = 200000;
    for (int k = 0; k < kMax; ++k) {
        ScaledComplex term = imp.coefficient(k) * wp;
        acc += term;
        wp *= wsc;
        double ref = acc.is_zero() ? 0.0 : acc.log_abs();
        if (!acc.is_zero() && (term.is_zero() || term.log_abs() < ref - 40.0))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 9) return acc;
    }
    throw ConvergenceError("series evaluation did not converge");
}

inline std::shared_ptr<FamilyImpl> base_impl(std::string name, nlohmann::json params) {
    auto imp = std::make_shared<FamilyImpl>();
    imp->name = std::move(name);
    imp->params = std::move(params);
    return imp;
}

inline double get_real(const nlohmann::json& j, const char* key, double fallback,
                       bool required = false) {
    if (!j.contains(key)) {
        if (required) throw ParameterError(std::string("missing family parameter: ") + key);
        return fallback;
    }
    return j.at(key).get<double>();
}

inline Complex get_complex(const nlohmann::json& j, const char* key, Complex fallback,
                           bool required = false) {
    if (!j.contains(key)) {
        if (required) throw ParameterError(std::string("missing family parameter: ") + key);
        return fallback;
    }
    const auto& v = j.at(key);
    if (v.is_array()) {
        if (v.size() != 2) throw ParameterError("complex parameter must be [re, im]");
        return {v[0].get<double>(), v[1].get<double>()};
    }
    return {v.get<double>(), 0.0};
}

}  // namespace detail

inline FunctionFamily make_family(const std::string& name, const nlohmann::json& params = {});

namespace detail {

inline std::shared_ptr<FamilyImpl> make_exp_impl(const nlohmann::json& params) {
    auto imp = base_impl("exp", params);
    imp->growth.lambda = 1.0;
    imp->growth.directions = {Direction{}};
    imp->growth.theta = 1.4;
    imp->growth.mu = std::cos(1.4);
    imp->native_coeff = [](int k, const std::vector<ScaledComplex>& prior) {
        if (k == 0) return ScaledComplex(1.0);
        return prior[static_cast<std::size_t>(k - 1)] * ScaledComplex(1.0 / k);
    };
    imp->eval_native = [](Complex z) { return exp_scaled(z); };
    imp->eval_native_derivative = [](Complex z) { return exp_scaled(z); };
    imp->eval_cancellation_free = true;
    return imp;
}

inline std::shared_ptr<FamilyImpl> make_mittag_leffler_impl(const nlohmann::json& params) {
    double lambda = get_real(params, "lambda", 0.0, true);
    if (!(lambda > 0.5)) throw ParameterError("mittag_leffler: lambda must exceed 1/2");
    auto imp = base_impl("mittag_leffler", params);
    imp->growth.lambda = lambda;
    imp->growth.directions = {Direction{}};
    imp->growth.theta = std::min(1.4, 0.9 * kPi / (2.0 * lambda));
    imp->growth.mu = std::cos(lambda * imp->growth.theta);
    imp->normalization = ScaledComplex(1.0 / lambda);
    imp->native_coeff = [lambda](int k, const std::vector<ScaledComplex>&) {
        return reciprocal_gamma_scaled(Complex(k / lambda + 1.0, 0.0));
    };
    imp->prefer_surrogate = true;
    auto weak = std::weak_ptr<FamilyImpl>(imp);
    imp->eval_native = [weak](Complex w) { return sum_native_series(*weak.lock(), w); };
    return imp;
}

inline std::shared_ptr<FamilyImpl> make_trig_impl(const std::string& name,
                                                  const nlohmann::json& params) {
    const bool is_sin = (name == "sin");
    auto imp = base_impl(name, params);
    imp->growth.lambda = 1.0;
    imp->growth.directions = {Direction{},
                              Direction{{-1.0, 0.0}, {is_sin ? -1.0 : 1.0, 0.0}, {0.0, 0.0}}};
    imp->growth.theta = kPi / 4.0;
    imp->growth.mu = std::cos(kPi / 4.0);
    imp->rotation = {0.0, 1.0};
    imp->normalization = ScaledComplex(is_sin ? Complex(0.0, -2.0) : Complex(2.0, 0.0));
    imp->parity_modulus = 2;
    imp->parity_residues = {is_sin ? 1 : 0};
    imp->native_coeff = [is_sin](int k, const std::vector<ScaledComplex>& prior) {
        if (k == 0) return is_sin ? ScaledComplex() : ScaledComplex(1.0);
        if (k == 1) return is_sin ? ScaledComplex(1.0) : ScaledComplex();
        // c_k = -c_{k-2} / (k (k-1))
        return -(prior[static_cast<std::size_t>(k - 2)] *
                 ScaledComplex(1.0 / (static_cast<double>(k) * (k - 1))));
    };
    // Near the real axis the exponential split cancels at the zeros of
    // sin/cos; reduce the argument by multiples of pi (two-part pi) and use
    // the library sin/cos there.  Off-axis the exponentials carry the value.
    auto reduce_pi = [](Complex w, Complex& reduced) {
        constexpr double kPiHi = 3.14159265358979311600;
        constexpr double kPiLo = 1.22464679914735321e-16;
        double nn = std::nearbyint(w.real() / kPiHi);
        reduced = Complex((w.real() - nn * kPiHi) - nn * kPiLo, w.imag());
        return static_cast<long long>(nn);
    };
    auto sin_sc = [reduce_pi](Complex w) {
        if (std::abs(w.imag()) <= 25.0) {
            Complex r;
            long long nn = reduce_pi(w, r);
            Complex s = std::sin(r);
            return ScaledComplex((nn & 1) ? -s : s);
        }
        const Complex i(0.0, 1.0);
        ScaledComplex a = exp_scaled(i * w), b = exp_scaled(-i * w);
        return (a - b) / ScaledComplex(Complex(0.0, 2.0));
    };
    auto cos_sc = [reduce_pi](Complex w) {
        if (std::abs(w.imag()) <= 25.0) {
            Complex r;
            long long nn = reduce_pi(w, r);
            Complex s = std::cos(r);
            return ScaledComplex((nn & 1) ? -s : s);
        }
        const Complex i(0.0, 1.0);
        ScaledComplex a = exp_scaled(i * w), b = exp_scaled(-i * w);
        return (a + b) * ScaledComplex(0.5);
    };
    if (is_sin) {
        imp->eval_native = sin_sc;
        imp->eval_native_derivative = cos_sc;
    } else {
        imp->eval_native = cos_sc;
        imp->eval_native_derivative = [sin_sc](Complex w) { return -sin_sc(w); };
    }
    imp->eval_cancellation_free = true;
    return imp;
}

inline std::shared_ptr<FamilyImpl> make_bessel_impl(const nlohmann::json& params) {
    Complex nu = get_complex(params, "nu", {0.0, 0.0}, true);
    if (nu.imag() == 0.0 && nu.real() < 0.0 && nu.real() == std::nearbyint(nu.real()))
        throw ParameterError("bessel: negative integer nu degenerates the series head");
    auto imp = base_impl("bessel", params);
    imp->growth.lambda = 1.0;
    Complex ab = -nu - 0.5;
    imp->growth.directions = {Direction{{1.0, 0.0}, {1.0, 0.0}, ab},
                              Direction{{-1.0, 0.0}, {1.0, 0.0}, ab}};
    imp->growth.theta = kPi / 4.0;
    imp->growth.mu = std::cos(kPi / 4.0);
    imp->rotation = {0.0, 1.0};
    // sigma = 2^{-nu} sqrt(pi/2)
    Complex lsig = -nu * kLog2 + 0.5 * std::log(kPi / 2.0);
    imp->normalization = ScaledComplex::from_log(lsig.real(), lsig.imag());
    imp->parity_modulus = 2;
    imp->parity_residues = {0};
    imp->native_coeff = [nu](int k, const std::vector<ScaledComplex>&) {
        if (k % 2 == 1) return ScaledComplex();
        int j = k / 2;
        // (-1/4)^j / (Gamma(nu+j+1) j!)
        std::complex<double> lg = log_gamma(nu + Complex(j + 1.0, 0.0)) +
                                  log_gamma(Complex(j + 1.0, 0.0));
        ScaledComplex mag = ScaledComplex::from_log(-lg.real() - j * 2.0 * kLog2, -lg.imag());
        return (j % 2 == 0) ? mag : -mag;
    };
    imp->prefer_surrogate = true;
    auto weak = std::weak_ptr<FamilyImpl>(imp);
    imp->eval_native = [weak](Complex w) { return sum_native_series(*weak.lock(), w); };
    return imp;
}

inline std::shared_ptr<FamilyImpl> make_confluent_impl(const nlohmann::json& params) {
    Complex alpha = get_complex(params, "alpha", {0.0, 0.0}, true);
    Complex beta = get_complex(params, "beta", {0.0, 0.0}, true);
    if (is_exact_nonpositive_integer(alpha))
        throw ParameterError("confluent: alpha must not be a nonpositive integer");
    auto imp = base_impl("confluent", params);
    imp->growth.lambda = 1.0;
    imp->growth.directions = {Direction{{1.0, 0.0}, {1.0, 0.0}, alpha - beta}};
    imp->growth.theta = 1.4;
    imp->growth.mu = std::cos(1.4);
    imp->normalization = gamma_scaled(alpha);
    imp->native_coeff = [alpha, beta](int k, const std::vector<ScaledComplex>&) {
        Complex kb = beta + Complex(k, 0.0);
        if (is_exact_nonpositive_integer(kb)) return ScaledComplex();
        // Gamma(k+alpha) / (Gamma(alpha) Gamma(k+beta) k!)
        std::complex<double> l = log_gamma(alpha + Complex(k, 0.0)) - log_gamma(alpha) -
                                 log_gamma(kb) - log_gamma(Complex(k + 1.0, 0.0));
        ScaledComplex v = ScaledComplex::from_log(l.real(), l.imag());
        // real parameters give real coefficients; strip the phase noise the
        // complex log route leaves behind
        if (alpha.imag() == 0.0 && beta.imag() == 0.0)
            v = ScaledComplex::from_parts(Complex(v.mantissa().real(), 0.0), v.exponent());
        return v;
    };
    // alpha - beta a nonnegative integer collapses the function to
    // e^z Q(z) with Q a polynomial of that degree; closed-form evaluation
    // is then cancellation-free everywhere that matters
    Complex diff = alpha - beta;
    bool polynomial_case = diff.imag() == 0.0 && diff.real() >= 0.0 &&
                           diff.real() == std::nearbyint(diff.real()) && diff.real() <= 64.0;
    if (polynomial_case) {
        int mdeg = static_cast<int>(diff.real());
        std::vector<Complex> q(static_cast<std::size_t>(mdeg) + 1);
        auto ck = [&](int k) {
            Complex kb = beta + Complex(k, 0.0);
            if (is_exact_nonpositive_integer(kb)) return Complex(0.0, 0.0);
            std::complex<double> l = log_gamma(alpha + Complex(k, 0.0)) - log_gamma(alpha) -
                                     log_gamma(kb) - log_gamma(Complex(k + 1.0, 0.0));
            Complex v = std::exp(l);
            return Complex(v.real(), 0.0);
        };
        for (int t = 0; t <= mdeg; ++t) {
            Complex acc(0.0, 0.0);
            double inv_fact = 1.0;
            for (int k = t; k >= 0; --k) {
                double sgn = ((t - k) % 2 == 0) ? 1.0 : -1.0;
                acc += ck(k) * sgn * inv_fact;
                inv_fact /= (t - k + 1);
            }
            q[static_cast<std::size_t>(t)] = acc;
        }
        auto horner_q = [](const std::vector<Complex>& c, Complex w) {
            Complex v(0.0, 0.0);
            for (std::size_t i = c.size(); i-- > 0;) v = v * w + c[i];
            return v;
        };
        std::vector<Complex> dq(q.size() > 1 ? q.size() - 1 : 1, Complex(0.0, 0.0));
        for (std::size_t t = 1; t < q.size(); ++t) dq[t - 1] = static_cast<double>(t) * q[t];
        imp->eval_native = [q, horner_q](Complex w) {
            return exp_scaled(w) * ScaledComplex(horner_q(q, w));
        };
        imp->eval_native_derivative = [q, dq, horner_q](Complex w) {
            return exp_scaled(w) * ScaledComplex(horner_q(q, w) + horner_q(dq, w));
        };
        imp->eval_cancellation_free = true;
        imp->prefer_surrogate = false;
    } else {
        imp->prefer_surrogate = true;
        auto weak = std::weak_ptr<FamilyImpl>(imp);
        imp->eval_native = [weak](Complex w) { return sum_native_series(*weak.lock(), w); };
    }
    return imp;
}

// g(t) = (t-r)^p (1-t)^q P(t); f(z) = int_r^1 e^{zt} g(t) dt
struct ExpintSpec {
    double p = 0.0, q = 0.0, r = -1.0;
    std::vector<double> poly{1.0};

    double eval_poly(double t) const {
        double v = 0.0;
        for (std::size_t i = poly.size(); i-- > 0;) v = v * t + poly[i];
        return v;
    }
    double g(double t) const {
        return std::pow(t - r, p) * std::pow(1.0 - t, q) * eval_poly(t);
    }
};

inline std::shared_ptr<FamilyImpl> make_expint_impl(const nlohmann::json& params) {
    ExpintSpec es;
    es.p = get_real(params, "p", 0.0, true);
    es.q = get_real(params, "q", 0.0, true);
    es.r = get_real(params, "r", -1.0, true);
    if (params.contains("poly")) es.poly = params.at("poly").get<std::vector<double>>();
    if (!(es.p > -1.0) || !(es.q > -1.0))
        throw ParameterError("expint: need p > -1 and q > -1");
    if (!(es.r >= -1.0 && es.r < 1.0)) throw ParameterError("expint: need -1 <= r < 1");
    if (es.poly.empty()) throw ParameterError("expint: empty polynomial factor");
    double g1_0 = std::pow(1.0 - es.r, es.q) * es.eval_poly(es.r);
    double g2_0 = std::pow(1.0 - es.r, es.p) * es.eval_poly(1.0);
    if (g1_0 == 0.0 || g2_0 == 0.0)
        throw ParameterError("expint: polynomial factor vanishes at an endpoint");

    auto imp = base_impl("expint", params);
    imp->growth.lambda = 1.0;
    double gq = gamma(Complex(es.q + 1.0, 0.0)).real();
    double gp = gamma(Complex(es.p + 1.0, 0.0)).real();
    Direction principal{{1.0, 0.0}, {1.0, 0.0}, {-es.q - 1.0, 0.0}};
    if (es.r == -1.0) {
        double A = g1_0 * gp / (g2_0 * gq);
        imp->growth.directions = {principal,
                                  Direction{{-1.0, 0.0}, {A, 0.0}, {-es.p - 1.0, 0.0}}};
    } else {
        imp->growth.directions = {principal};
    }
    imp->growth.theta = kPi / 4.0;
    // away from the declared sectors the factor e^{zt} contributes at most
    // e^{|z| max(cos theta, |r|)}; for r = -1 the left endpoint is its own direction
    imp->growth.mu = (es.r == -1.0) ? std::cos(kPi / 4.0)
                                    : std::max(std::cos(kPi / 4.0), 0.5 * (1.0 + std::abs(es.r)));
    imp->normalization = ScaledComplex(1.0 / (g2_0 * gq));

    int poly_deg = static_cast<int>(es.poly.size()) - 1;
    // shared mutable Gauss-Jacobi cache; grown on demand under the family lock
    auto rule_cache = std::make_shared<GaussJacobiRule>();
    imp->native_coeff = [es, poly_deg, rule_cache](int k, const std::vector<ScaledComplex>&) {
        int m_needed = (k + poly_deg) / 2 + 4;
        if (static_cast<int>(rule_cache->nodes.size()) < m_needed) {
            int m = 64;
            while (m < m_needed) m *= 2;
            *rule_cache = gauss_jacobi_nodes(es.p, es.q, m);
        }
        // int_r^1 t^k g(t) dt = ((1-r)/2)^{p+q+1} sum_i w_i t(u_i)^k P(t(u_i))
        double half = 0.5 * (1.0 - es.r);
        ScaledComplex acc;
        for (std::size_t i = 0; i < rule_cache->nodes.size(); ++i) {
            double u = rule_cache->nodes[i];
            double t = es.r + half * (1.0 + u);
            double w = rule_cache->weights[i] * es.eval_poly(t);
            ScaledComplex tk = pow_scaled(ScaledComplex(t), k);
            acc += ScaledComplex(w) * tk;
        }
        double scale = std::pow(half, es.p + es.q + 1.0);
        ScaledComplex moment = ScaledComplex(scale) * acc;
        // divide by k!
        std::complex<double> lkf = log_gamma(Complex(k + 1.0, 0.0));
        return moment * ScaledComplex::from_log(-lkf.real(), 0.0);
    };
    imp->eval_native = [es](Complex z) {
        EndpointHints hints;
        if (es.p != std::nearbyint(es.p)) hints.alpha_a = std::min(es.p, -1e-3);
        if (es.q != std::nearbyint(es.q)) hints.alpha_b = std::min(es.q, -1e-3);
        auto res = integrate_adaptive([&es, z](double t) { return std::exp(z * t) * es.g(t); },
                                      es.r, 1.0, 1e-12, hints);
        return ScaledComplex(res.value);
    };
    return imp;
}

inline std::shared_ptr<FamilyImpl> make_airy_impl(const std::string& name,
                                                  const nlohmann::json& params) {
    const bool is_ai = (name == "airy_ai");
    auto imp = base_impl(name, params);
    imp->growth.lambda = 1.5;
    const Complex i(0.0, 1.0);
    const double c23 = std::pow(1.5, 2.0 / 3.0);
    if (is_ai) {
        imp->rotation = c23 * std::exp(i * (2.0 * kPi / 3.0));
        Complex lsig = std::log(2.0 * std::sqrt(kPi)) + std::log(1.5) / 6.0 + i * (kPi / 6.0);
        imp->normalization = ScaledComplex::from_log(lsig.real(), lsig.imag());
        imp->growth.directions = {
            Direction{{1.0, 0.0}, {1.0, 0.0}, {-0.25, 0.0}},
            Direction{std::exp(i * (2.0 * kPi / 3.0)), std::exp(i * (kPi / 3.0)), {-0.25, 0.0}}};
    } else {
        imp->rotation = {c23, 0.0};
        imp->normalization =
            ScaledComplex::from_log(std::log(std::sqrt(kPi)) + std::log(1.5) / 6.0, 0.0);
        imp->growth.directions = {
            Direction{{1.0, 0.0}, {1.0, 0.0}, {-0.25, 0.0}},
            Direction{std::exp(-i * (2.0 * kPi / 3.0)), 0.5 * std::exp(-i * (kPi / 3.0)), {-0.25, 0.0}},
            Direction{std::exp(i * (2.0 * kPi / 3.0)), 0.5 * std::exp(i * (kPi / 3.0)), {-0.25, 0.0}}};
    }
    imp->growth.theta = 0.3 * kPi;
    imp->growth.mu = std::cos(1.5 * 0.3 * kPi);
    imp->parity_modulus = 3;
    imp->parity_residues = {0, 1};
    // seeds: Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3),
    //        Bi(0) = 3^{-1/6}/Gamma(2/3), Bi'(0) = 3^{1/6}/Gamma(1/3)
    double g13 = gamma(Complex(1.0 / 3.0, 0.0)).real();
    double g23 = gamma(Complex(2.0 / 3.0, 0.0)).real();
    double c0 = is_ai ? std::pow(3.0, -2.0 / 3.0) / g23 : std::pow(3.0, -1.0 / 6.0) / g23;
    double c1 = is_ai ? -std::pow(3.0, -1.0 / 3.0) / g13 : std::pow(3.0, 1.0 / 6.0) / g13;
    imp->native_coeff = [c0, c1](int k, const std::vector<ScaledComplex>& prior) {
        if (k == 0) return ScaledComplex(c0);
        if (k == 1) return ScaledComplex(c1);
        if (k == 2) return ScaledComplex();
        // y'' = z y  =>  c_k = c_{k-3} / (k (k-1))
        return prior[static_cast<std::size_t>(k - 3)] *
               ScaledComplex(1.0 / (static_cast<double>(k) * (k - 1)));
    };
    imp->prefer_surrogate = true;
    auto weak = std::weak_ptr<FamilyImpl>(imp);
    imp->eval_native = [weak](Complex w) { return sum_native_series(*weak.lock(), w); };
    return imp;
}

inline std::shared_ptr<FamilyImpl> make_parabolic_impl(const nlohmann::json& params) {
    Complex a = get_complex(params, "a", {0.0, 0.0}, true);
    if (is_exact_nonpositive_integer(a + Complex(0.5, 0.0)))
        throw ParameterError("parabolic_u: a + 1/2 must not be a nonpositive integer");
    auto imp = base_impl("parabolic_u", params);
    imp->growth.lambda = 2.0;
    imp->rotation = {-2.0, 0.0};
    const Complex i(0.0, 1.0);
    // sigma = Gamma(a+1/2) 2^{1/2-a} / sqrt(2 pi)
    Complex lsig = log_gamma(a + Complex(0.5, 0.0)) + (Complex(0.5, 0.0) - a) * kLog2 -
                   0.5 * std::log(2.0 * kPi);
    imp->normalization = ScaledComplex::from_log(lsig.real(), lsig.imag());
    // A_k = Gamma(a+1/2) e^{-+ i pi (a/2 + 1/4)} 2^{-2a} / sqrt(2 pi), zeta = -+ i
    Complex lA = log_gamma(a + Complex(0.5, 0.0)) - 2.0 * a * kLog2 - 0.5 * std::log(2.0 * kPi);
    Complex phase = i * kPi * (0.5 * a + 0.25);
    Complex A1 = std::exp(lA - phase);
    Complex A2 = std::exp(lA + phase);
    Complex ba = -a - 0.5;
    imp->growth.directions = {Direction{{1.0, 0.0}, {1.0, 0.0}, a - 0.5},
                              Direction{-i, A1, ba}, Direction{i, A2, ba}};
    imp->growth.theta = 0.2 * kPi;
    imp->growth.mu = std::cos(2.0 * 0.2 * kPi);
    // seeds: U(a,0) = sqrt(pi) 2^{-a/2-1/4}/Gamma(a/2+3/4),
    //        U'(a,0) = -sqrt(pi) 2^{-a/2+1/4}/Gamma(a/2+1/4)
    Complex u0 = std::sqrt(kPi) * std::exp(-(0.5 * a + 0.25) * kLog2 - log_gamma(0.5 * a + 0.75));
    Complex u1 = -std::sqrt(kPi) * std::exp((0.25 - 0.5 * a) * kLog2 - log_gamma(0.5 * a + 0.25));
    if (a.imag() == 0.0) {
        u0 = {u0.real(), 0.0};
        u1 = {u1.real(), 0.0};
    }
    imp->native_coeff = [a, u0, u1](int k, const std::vector<ScaledComplex>& prior) {
        if (k == 0) return ScaledComplex(u0);
        if (k == 1) return ScaledComplex(u1);
        // y'' = (z^2/4 + a) y  =>  c_k = (a c_{k-2} + c_{k-4}/4) / (k (k-1))
        ScaledComplex s = ScaledComplex(a) * prior[static_cast<std::size_t>(k - 2)];
        if (k >= 4) s += prior[static_cast<std::size_t>(k - 4)].scalbn2(-2);
        return s * ScaledComplex(1.0 / (static_cast<double>(k) * (k - 1)));
    };
    imp->prefer_surrogate = true;
    auto weak = std::weak_ptr<FamilyImpl>(imp);
    imp->eval_native = [weak](Complex w) { return sum_native_series(*weak.lock(), w); };
    return imp;
}

}  // namespace detail

inline FunctionFamily make_family(const std::string& name, const nlohmann::json& params) {
    std::shared_ptr<detail::FamilyImpl> imp;
    if (name == "exp")
        imp = detail::make_exp_impl(params);
    else if (name == "mittag_leffler")
        imp = detail::make_mittag_leffler_impl(params);
    else if (name == "sin" || name == "cos")
        imp = detail::make_trig_impl(name, params);
    else if (name == "bessel")
        imp = detail::make_bessel_impl(params);
    else if (name == "confluent")
        imp = detail::make_confluent_impl(params);
    else if (name == "expint")
        imp = detail::make_expint_impl(params);
    else if (name == "airy_ai" || name == "airy_bi")
        imp = detail::make_airy_impl(name, params);
    else if (name == "parabolic_u")
        imp = detail::make_parabolic_impl(params);
    else
        throw ParameterError("unknown family: " + name);
    imp->growth.validate();
    return FunctionFamily(imp);
}

}  // namespace szego
