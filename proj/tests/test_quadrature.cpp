#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "szego/quadrature.hpp"

using namespace szego;
using Complex = std::complex<double>;

namespace {

// independent subdivision strategy: composite Simpson on a fixed fine grid
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("basic integrals") {
    auto r1 = integrate_adaptive([](double t) { return Complex(std::exp(-t), 0.0); }, 0.0,
                                 std::numeric_limits<double>::infinity(), 1e-12);
    REQUIRE(r1.value.real() == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(r1.evaluations >= 1);
    REQUIRE(r1.error_estimate >= 0.0);

    auto r2 = integrate_adaptive([](double t) { return Complex(1.0 / std::sqrt(t), 0.0); }, 0.0,
                                 1.0, 1e-12, {-0.5, 0.0});
    REQUIRE(r2.value.real() == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("two independent subdivision strategies agree") {
    // int_0^infty e^{-50 t} / (1 + t) dt: adaptive vs far-truncated Simpson
    auto f = [](double t) { return std::exp(-50.0 * t) / (1.0 + t); };
    auto adaptive = integrate_adaptive([&](double t) { return Complex(f(t), 0.0); }, 0.0,
                                       std::numeric_limits<double>::infinity(), 1e-13);
    double fixed = simpson(f, 0.0, 2.0, 200000);  // tail beyond 2 is < e^{-100}
    REQUIRE(adaptive.value.real() == Catch::Approx(fixed).epsilon(1e-10));
}

TEST_CASE("tolerance failure carries the best estimate") {
    // genuinely nasty integrand at an unreachable tolerance
    bool threw = false;
    try {
        integrate_adaptive(
            [](double t) { return Complex(std::sin(1.0 / (t + 1e-14)) / std::sqrt(t + 1e-14), 0.0); },
            0.0, 1.0, 1e-15);
    } catch (const ToleranceError& e) {
        threw = true;
        REQUIRE(std::isfinite(e.best_estimate.real()));
        REQUIRE(e.error_estimate > 0.0);
    }
    REQUIRE(threw);
}

TEST_CASE("gauss-jacobi classical nodes") {
    auto r2 = gauss_jacobi_nodes(0.0, 0.0, 2);
    REQUIRE(r2.nodes[0] == Catch::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    REQUIRE(r2.nodes[1] == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    REQUIRE(r2.weights[0] == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(r2.weights[1] == Catch::Approx(1.0).epsilon(1e-14));

    auto r1 = gauss_jacobi_nodes(0.0, 0.0, 1);
    REQUIRE(r1.nodes[0] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(r1.weights[0] == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss-jacobi moment identity and exactness") {
    // sum w_i = int (1+t) dt = 2 for p = 1, q = 0
    auto r3 = gauss_jacobi_nodes(1.0, 0.0, 3);
    double sw = r3.weights[0] + r3.weights[1] + r3.weights[2];
    REQUIRE(sw == Catch::Approx(2.0).epsilon(1e-13));

    // exactness for degree <= 2m-1 against adaptive quadrature
    double p = 0.5, q = 1.5;
    int m = 5;
    auto rule = gauss_jacobi_nodes(p, q, m);
    for (int deg = 0; deg <= 2 * m - 1; deg += 3) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], deg);
        auto ref = integrate_adaptive(
            [&](double t) {
                return Complex(std::pow(1.0 - t, q) * std::pow(1.0 + t, p) * std::pow(t, deg), 0.0);
            },
            -1.0, 1.0, 1e-12, {p, q});
        REQUIRE(acc == Catch::Approx(ref.value.real()).epsilon(1e-9));
    }
}

TEST_CASE("gauss-jacobi parameter domain") {
    REQUIRE_THROWS_AS(gauss_jacobi_nodes(-1.0, 0.0, 3), ParameterError);
    REQUIRE_THROWS_AS(gauss_jacobi_nodes(0.0, -1.5, 3), ParameterError);
    REQUIRE_THROWS_AS(gauss_jacobi_nodes(0.0, 0.0, 0), ParameterError);
}
