#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "szego/erfc.hpp"
#include "szego/quadrature.hpp"

using namespace szego;
using Complex = std::complex<double>;

namespace {

// oracle 1: direct Taylor series of erf around 0 (independent of the
// Faddeeva path); trustworthy for |z| <= 2
Complex erfc_taylor(Complex z) {
    Complex acc(0.0, 0.0), zpow = z;
    double kfact = 1.0;
    for (int k = 0; k <= 40; ++k) {
        if (k > 0) kfact *= k;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign / (kfact * (2.0 * k + 1.0)) * zpow;
        zpow *= z * z;
    }
    return 1.0 - detail::kTwoOverSqrtPi * acc;
}

// oracle 2: large-|z| asymptotic series, Re z > 0
Complex erfc_asymptotic(Complex z, int terms) {
    Complex s(1.0, 0.0), term(1.0, 0.0);
    Complex z2 = 2.0 * z * z;
    for (int k = 1; k < terms; ++k) {
        term *= -static_cast<double>(2 * k - 1) / z2;
        s += term;
    }
    return std::exp(-z * z) / (z * detail::kSqrtPi) * s;
}

}  // namespace

TEST_CASE("erfc anchor values") {
    REQUIRE(erfc(Complex(0.0, 0.0)).real() == 1.0);
    // the standard first-zero reference value, quoted to 5 decimals:
    // residual below 1e-4 of the local scale
    Complex w1(-1.35481, 1.99147);
    REQUIRE(std::abs(erfc(w1)) <= 1e-4 * erfc_local_scale(w1));
    // far tail against the asymptotic oracle
    Complex e10 = erfc(Complex(10.0, 0.0));
    REQUIRE(e10.real() > 0.0);
    REQUIRE(std::abs(e10) <= 1e-40);
    REQUIRE(std::abs(e10 - erfc_asymptotic({10.0, 0.0}, 8)) <= 1e-12 * std::abs(e10));
}

TEST_CASE("erfc against the Taylor oracle in the unit-ish disk") {
    for (int i = 0; i < 100; ++i) {
        Complex z = std::polar(2.0 * (i % 10 + 1) / 10.0, 0.31 * i);
        Complex ref = erfc_taylor(z);
        REQUIRE(std::abs(erfc(z) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("erfc against the quadrature oracle off-axis") {
    auto oracle = [](Complex z) {
        auto r = integrate_adaptive([z](double t) { return std::exp(-(z + t) * (z + t)); }, 0.0,
                                    std::numeric_limits<double>::infinity(), 1e-12);
        return detail::kTwoOverSqrtPi * r.value;
    };
    for (Complex z : {Complex(0.3, 0.7), Complex(2.0, 1.0), Complex(3.0, 4.0), Complex(5.0, 5.0),
                      Complex(0.0, 3.0), Complex(0.5, 14.0)}) {
        Complex ref = oracle(z);
        REQUIRE(std::abs(erfc(z) - ref) <= 1e-10 * std::abs(ref));
    }
}

TEST_CASE("reflection identity to 1e-12 of scale") {
    for (int i = 0; i < 1000; ++i) {
        Complex z = std::polar(20.0 * ((i % 100) + 1) / 100.0, 6.2831853 * i / 1000.0);
        Complex sum = erfc(z) + erfc(-z);
        double scale = std::max({2.0, std::abs(erfc(z)), std::abs(erfc(-z))});
        REQUIRE(std::abs(sum - 2.0) <= 1e-12 * scale);
    }
}

TEST_CASE("erfc zeros: reference values, ordering, sector") {
    auto zs = erfc_zeros(6);
    REQUIRE(std::abs(zs[0] - Complex(-1.35481, 1.99147)) <= 1e-4);
    REQUIRE(std::abs(zs[1] - Complex(-2.17704, 2.69115)) <= 1e-4);
    REQUIRE(zs[0].real() + zs[0].imag() == Catch::Approx(0.636657).margin(1e-5));
    for (std::size_t k = 0; k < zs.size(); ++k) {
        double ar = std::arg(zs[k]);
        REQUIRE(ar > detail::kPi / 2.0);
        REQUIRE(ar < 3.0 * detail::kPi / 4.0);
        REQUIRE(std::abs(erfc(zs[k])) <= 1e-10 * erfc_local_scale(zs[k]));
        if (k > 0) REQUIRE(std::abs(zs[k]) > std::abs(zs[k - 1]));
    }
    REQUIRE_THROWS_AS(erfc_zeros(0), ParameterError);
}
