#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace szego {

// Complex number stored as mantissa * 2^exponent with |mantissa| in [1,2),
// or exactly zero (then exponent = 0).  The base-2 integer exponent makes
// renormalization exact: scaling never rounds.  This representation survives
// magnitudes like r_n^n / n! that overflow or underflow ordinary doubles.
class ScaledComplex {
  public:
    ScaledComplex() = default;

    ScaledComplex(std::complex<double> z) : m_(z) { normalize(); }
    ScaledComplex(double x) : ScaledComplex(std::complex<double>(x, 0.0)) {}

    static ScaledComplex from_parts(std::complex<double> mantissa, std::int64_t exponent) {
        ScaledComplex s;
        s.m_ = mantissa;
        s.e_ = exponent;
        s.normalize();
        return s;
    }

    // e^{log_magnitude + i*phase}.  Used when a value is only available
    // through its logarithm (gamma ratios, growth surrogates).
    static ScaledComplex from_log(double log_magnitude, double phase) {
        constexpr double kLog2 = 0.6931471805599453094172321214581766;
        double e = std::floor(log_magnitude / kLog2);
        double r = std::fma(-e, kLog2, log_magnitude);
        std::complex<double> m = std::exp(r) * std::complex<double>(std::cos(phase), std::sin(phase));
        ScaledComplex s;
        s.m_ = m;
        s.e_ = static_cast<std::int64_t>(e);
        s.normalize();
        return s;
    }

    std::complex<double> mantissa() const { return m_; }
    std::int64_t exponent() const { return e_; }
    bool is_zero() const { return m_ == std::complex<double>(0.0, 0.0); }

    // Collapses to an ordinary complex; saturates to inf/0 outside double range.
    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        int e = static_cast<int>(std::clamp<std::int64_t>(e_, -1100, 1100));
        return {std::scalbn(m_.real(), e), std::scalbn(m_.imag(), e)};
    }

    double abs_mantissa() const { return std::abs(m_); }

    // Natural log of the magnitude; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        constexpr double kLog2 = 0.6931471805599453094172321214581766;
        return std::log(std::abs(m_)) + static_cast<double>(e_) * kLog2;
    }

    double arg() const { return std::arg(m_); }

    ScaledComplex operator-() const {
        ScaledComplex s = *this;
        s.m_ = -s.m_;
        return s;
    }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return {};
        ScaledComplex s;
        s.m_ = a.m_ * b.m_;
        s.e_ = a.e_ + b.e_;
        s.normalize();
        return s;
    }

    friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
        ScaledComplex s;
        s.m_ = a.m_ / b.m_;
        s.e_ = a.e_ - b.e_;
        s.normalize();
        return s;
    }

    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const ScaledComplex& hi = (a.e_ >= b.e_) ? a : b;
        const ScaledComplex& lo = (a.e_ >= b.e_) ? b : a;
        std::int64_t shift = lo.e_ - hi.e_;
        if (shift < -1060) return hi;  // beyond double range difference
        int sh = static_cast<int>(shift);
        std::complex<double> add(std::scalbn(lo.m_.real(), sh), std::scalbn(lo.m_.imag(), sh));
        ScaledComplex s;
        s.m_ = hi.m_ + add;
        s.e_ = hi.e_;
        s.normalize();
        return s;
    }

    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

    ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }
    ScaledComplex& operator+=(const ScaledComplex& o) { return *this = *this + o; }

    // Exact scaling by 2^k.
    ScaledComplex scalbn2(std::int64_t k) const {
        if (is_zero()) return {};
        ScaledComplex s = *this;
        s.e_ += k;
        return s;
    }

    friend ScaledComplex operator*(double x, const ScaledComplex& s) { return ScaledComplex(x) * s; }

    // Magnitude comparison without collapsing.
    friend bool abs_less(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return !b.is_zero();
        if (b.is_zero()) return false;
        if (a.e_ != b.e_) return a.e_ < b.e_;
        return std::abs(a.m_) < std::abs(b.m_);
    }

  private:
    void normalize() {
        double a = std::abs(m_);
        if (a == 0.0 || !std::isfinite(a)) {
            if (!std::isfinite(a)) return;  // propagate inf/nan mantissa as-is
            m_ = {0.0, 0.0};
            e_ = 0;
            return;
        }
        int k = std::ilogb(a);
        if (k != 0) {
            m_ = {std::scalbn(m_.real(), -k), std::scalbn(m_.imag(), -k)};
            e_ += k;
        }
        // |m_| can land on a boundary after rounding of std::abs.
        double a2 = std::abs(m_);
        if (a2 >= 2.0) {
            m_ = {std::scalbn(m_.real(), -1), std::scalbn(m_.imag(), -1)};
            e_ += 1;
        } else if (a2 < 1.0) {
            m_ = {std::scalbn(m_.real(), 1), std::scalbn(m_.imag(), 1)};
            e_ -= 1;
        }
    }

    std::complex<double> m_{0.0, 0.0};
    std::int64_t e_ = 0;
};

inline ScaledComplex conj(const ScaledComplex& s) {
    return ScaledComplex::from_parts(std::conj(s.mantissa()), s.exponent());
}

}  // namespace szego
