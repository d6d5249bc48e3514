#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "szego/curve.hpp"

using namespace szego;
using Complex = std::complex<double>;

TEST_CASE("phi at its critical point and fixed samples") {
    for (double lambda : {0.7, 1.0, 2.5}) {
        REQUIRE(std::abs(phi({1.0, 0.0}, lambda)) <= 1e-15);
        // phi''(1) = lambda via central difference
        double h = 1e-5;
        Complex second = (phi({1.0 + h, 0.0}, lambda) + phi({1.0 - h, 0.0}, lambda)) / (h * h);
        REQUIRE(second.real() == Catch::Approx(lambda).epsilon(1e-5));
    }
    // i/e lies on the lambda = 1 curve
    REQUIRE(phi(Complex(0.0, std::exp(-1.0)), 1.0).real() == Catch::Approx(0.0).margin(1e-15));
    // the sign convention: Re phi(0.5) = 0.5 - 1 - ln 0.5 > 0 and the modulus
    // |z e^{1-z}| < 1 there (interior)
    REQUIRE(phi({0.5, 0.0}, 1.0).real() == Catch::Approx(0.19314718055994531).epsilon(1e-14));
    REQUIRE(curve_modulus({0.5, 0.0}, 1.0) == Catch::Approx(0.5 * std::exp(0.5)).epsilon(1e-14));
    REQUIRE_THROWS_AS(phi({0.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("modulus identity against direct evaluation") {
    for (int i = 0; i < 1000; ++i) {
        double lambda = 0.6 + 2.4 * ((i * 7) % 100) / 100.0;
        Complex z = std::polar(0.05 + 1.6 * ((i * 13) % 100) / 100.0,
                               (detail::kPi / lambda) * (((i * 29) % 200) / 100.0 - 1.0) * 0.95);
        double direct = std::abs(std::pow(z, lambda) * std::exp(1.0 - std::pow(z, lambda)));
        REQUIRE(curve_modulus(z, lambda) == Catch::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("trace: endpoints, invariants, monotone modulus") {
    auto ts = trace(1.0, 801);
    REQUIRE(ts.front().xi == Complex(1.0, 0.0));
    REQUIRE(ts.front().tau == 0.0);
    // sample at arg pi/2 has |xi| = 1/e
    auto mid = *std::min_element(ts.begin(), ts.end(), [](const CurveSample& a, const CurveSample& b) {
        return std::abs(a.arg - detail::kPi / 2) < std::abs(b.arg - detail::kPi / 2);
    });
    REQUIRE(std::abs(mid.xi) == Catch::Approx(std::exp(-1.0)).epsilon(1e-9));
    // terminal sample at arg ~ pi solves s e^{1+s} = 1
    REQUIRE(ts.back().xi.real() == Catch::Approx(-0.27846454276107378).epsilon(1e-7));
    for (std::size_t i = 0; i < ts.size(); ++i) {
        REQUIRE(std::abs(phi(ts[i].xi, 1.0).real()) <= 1e-12);
        REQUIRE(std::abs(ts[i].xi) <= 1.0 + 1e-12);
        if (i) {
            REQUIRE(std::abs(ts[i].xi) < std::abs(ts[i - 1].xi));
            REQUIRE(ts[i].arclength_hint > ts[i - 1].arclength_hint);
        }
    }
    // tau is odd under conjugation
    for (const auto& s : trace(2.0, 33)) {
        if (s.arg == 0.0) continue;
        REQUIRE(phi(std::conj(s.xi), 2.0).imag() == Catch::Approx(-phi(s.xi, 2.0).imag()).margin(1e-14));
    }
    REQUIRE_THROWS_AS(trace(1.0, 1), ParameterError);
}

TEST_CASE("tau_n representative") {
    REQUIRE(tau_n(0.0, 57, 1.0) == 0.0);
    REQUIRE(tau_n(2.0 * detail::kPi, 1, 1.0) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(tau_n(1.0, 7, 1.0) == Catch::Approx(7.0 - 2.0 * detail::kPi).epsilon(1e-12));
    for (double t : {-3.0, 0.4, 2.9}) {
        double r = tau_n(t, 137, 1.7);
        REQUIRE(r > -detail::kPi);
        REQUIRE(r <= detail::kPi);
    }
}

TEST_CASE("classify") {
    REQUIRE(classify({0.99, 0.0}, 1.0) == CurveSide::interior);
    REQUIRE(classify({1.0, 0.0}, 1.0) == CurveSide::on_curve);
    Complex bump = Complex(0.0, 1.05 * std::exp(-1.0));
    REQUIRE(classify(bump, 1.0) == CurveSide::exterior);
    // outer branch of the level set: x = 1 + log|z| at |z| = 5
    double x = 1.0 + std::log(5.0);
    Complex outer(x, std::sqrt(25.0 - x * x));
    REQUIRE(classify(outer, 1.0, 1e-6) == CurveSide::outside_unit_disk_branch);
    REQUIRE_THROWS_AS(classify({0.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("curve distance") {
    auto ts = trace(1.0, 1025);
    REQUIRE(curve_distance(ts[512].xi, ts, 1.0) <= 1e-12);
    REQUIRE(curve_distance({0.0, 0.0}, ts, 1.0) == Catch::Approx(0.27846454276).epsilon(1e-6));
    REQUIRE(curve_distance({2.0, 0.0}, ts, 1.0) == Catch::Approx(1.0).epsilon(1e-12));
    // mirrored samples serve the conjugate half-plane
    auto full = mirror_conjugate(ts);
    REQUIRE(curve_distance(std::conj(ts[100].xi), full, 1.0) <= 1e-10);
}
