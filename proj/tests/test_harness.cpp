#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "szego/harness.hpp"
#include "szego/io.hpp"

using namespace szego;

TEST_CASE("match: exact predictions, injectivity") {
    RootSet roots;
    roots.converged = true;
    roots.roots = {{0.5, 0.5}, {0.5, -0.5}, {-0.3, 0.1}};
    roots.residuals = {0.0, 0.0, 0.0};
    std::vector<PredictionRecord> preds;
    for (const Complex& z : roots.roots) {
        PredictionRecord p;
        p.z_scaled = z;
        p.n = 100;
        p.expected_error_scale = 0.05;
        preds.push_back(p);
    }
    auto rep = match(preds, roots);
    REQUIRE(rep.pairs.size() == 3);
    for (const auto& mp : rep.pairs) REQUIRE(mp.abs_error == 0.0);
    REQUIRE(rep.unmatched_predictions == 0);

    // two predictions, one root: injective assignment leaves one unmatched
    preds.resize(2);
    preds[1].z_scaled = preds[0].z_scaled + Complex(1e-4, 0.0);
    RootSet one;
    one.converged = true;
    one.roots = {preds[0].z_scaled};
    one.residuals = {0.0};
    auto rep2 = match(preds, one);
    REQUIRE(rep2.pairs.size() == 1);
    REQUIRE(rep2.unmatched_predictions == 1);

    RootSet un;
    un.converged = false;
    REQUIRE_THROWS_AS(match(preds, un), ConvergenceError);
}

TEST_CASE("match is conjugate-symmetric for conjugate-symmetric inputs") {
    auto ex = make_family("exp");
    auto poly = partial_sum(ex, 120);
    auto roots = all_roots(poly);
    auto preds = corner_predicted_zeros(ex, 120, 2);
    auto rep = match(preds, roots);
    REQUIRE(rep.pairs.size() == preds.size());
    for (const auto& mp : rep.pairs) {
        // the conjugate prediction matched the conjugate root
        bool found = false;
        for (const auto& other : rep.pairs)
            if (std::abs(std::conj(mp.matched_root) - other.matched_root) <= 1e-12) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("rate_fit on synthetic data") {
    std::vector<std::pair<int, double>> e1, e2;
    for (int n : {50, 100, 200, 400}) {
        e1.push_back({n, std::log(static_cast<double>(n)) / n});
        e2.push_back({n, 3.0 / std::sqrt(static_cast<double>(n))});
    }
    auto f1 = rate_fit(e1, RateModel::logn_over_n);
    REQUIRE(f1.fitted_constant == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(f1.r_squared > 0.999);
    auto f2 = rate_fit(e2, RateModel::custom_power);
    REQUIRE(f2.fitted_constant == Catch::Approx(3.0).epsilon(1e-10));
    REQUIRE(f2.fitted_exponent == Catch::Approx(-0.5).margin(1e-10));
    auto f3 = rate_fit(e2, RateModel::inv_sqrt_n);
    REQUIRE(f3.fitted_constant == Catch::Approx(3.0).epsilon(1e-10));

    REQUIRE_THROWS_AS(rate_fit({{10, 1.0}, {20, 0.5}}, RateModel::inv_n), ParameterError);
    REQUIRE_THROWS_AS(rate_fit({{10, 1.0}, {20, 0.5}, {40, -0.1}}, RateModel::inv_n),
                      ParameterError);
}

TEST_CASE("KKMM error rates fit the predicted exponents") {
    auto ex = make_family("exp");
    auto w1 = erfc_zeros(1)[0];
    for (int t : {1, 4}) {
        std::vector<std::pair<int, double>> errs;
        for (int n : {40, 80, 160}) {
            auto poly = partial_sum(ex, n);
            auto roots = all_roots(poly);
            Complex z = kkmm_refined_zero(w1, n, t);
            double best = 1e300;
            for (const Complex& zr : roots.roots) best = std::min(best, std::abs(zr - z));
            errs.push_back({n, best});
        }
        auto fit = rate_fit(errs, RateModel::custom_power);
        REQUIRE(fit.fitted_exponent == Catch::Approx(-(t + 1) / 2.0).margin(0.15));
    }
}

TEST_CASE("buckholtz check at a small n") {
    auto ex = make_family("exp");
    auto res = buckholtz_check(ex, 25);
    REQUIRE(res.pass);
    REQUIRE(res.bound == Catch::Approx(2.0 * std::exp(1.0) / 5.0));
    REQUIRE(res.max_distance > 0.0);
    REQUIRE_THROWS_AS(buckholtz_check(make_family("sin"), 25), ParameterError);
}

TEST_CASE("exterior approach fit hits the lambda/2 coefficient band") {
    auto ex = make_family("exp");
    auto res = exterior_approach_fit(ex, {100, 200, 400}, 0.5, 1.0);
    REQUIRE(res.fit.fitted_constant >= 0.25);
    REQUIRE(res.fit.fitted_constant <= 0.75);
    REQUIRE(res.all_exterior);
    REQUIRE_THROWS_AS(exterior_approach_fit(ex, {100, 200, 400}, 3.05, 3.1), ParameterError);
}

TEST_CASE("ratio against the corner limit value") {
    auto ex = make_family("exp");
    auto rows = ratio_limit_check_corner(ex, {Complex(-1.0, 0.0)}, {100, 400});
    // predicted value is 1 - erfc(1/sqrt(2))/2 by the reflection identity
    double expect = 1.0 - 0.5 * std::erfc(1.0 / std::sqrt(2.0));
    for (const auto& r : rows) {
        REQUIRE(r.predicted.real() == Catch::Approx(expect).epsilon(1e-12));
        REQUIRE(r.error <= 0.01);
    }
    REQUIRE(rows[1].error < rows[0].error);
    REQUIRE_THROWS_AS(ratio_limit_check_corner(ex, {Complex(0.5, 0.0)}, {100}), ParameterError);
}

TEST_CASE("ratio errors shrink along the n grid on the arc, one inversion allowed") {
    auto ex = make_family("exp");
    CurveSample s;
    s.xi = Complex(0.0, std::exp(-1.0));
    s.arg = detail::kPi / 2.0;
    s.tau = phi(s.xi, 1.0).imag();
    auto rows = ratio_limit_check_arc(ex, s, {Complex(0.0, 0.0)}, {50, 100, 200, 400});
    int inversions = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].error > rows[i - 1].error) ++inversions;
    REQUIRE(inversions <= 1);

    auto corner = ratio_limit_check_corner(ex, {Complex(-1.0, 0.5)}, {50, 100, 200, 400});
    inversions = 0;
    for (std::size_t i = 1; i < corner.size(); ++i)
        if (corner[i].error > corner[i - 1].error) ++inversions;
    REQUIRE(inversions <= 1);
}

namespace {
CurveSample band_sample(double arg, double lambda) {
    CurveSample s;
    double rad = detail::curve_radius(arg, lambda);
    s.xi = std::polar(rad, arg);
    s.arg = arg;
    s.tau = lambda * phi(s.xi, lambda).imag();
    return s;
}
}  // namespace

TEST_CASE("at n = 200 at least 90% of banded arc predictions match") {
    auto ex = make_family("exp");
    auto poly = partial_sum(ex, 200);
    auto roots = all_roots(poly);
    int total = 0, matched = 0;
    for (double arg = 0.3; arg <= 1.2; arg += 0.09) {
        auto pt = make_arc_point(ex, band_sample(arg, 1.0), 200);
        auto preds = arc_predicted_zeros(pt, -2, 2);
        auto rep = match(preds, roots, 10.0);
        total += static_cast<int>(preds.size());
        for (const auto& mp : rep.pairs)
            if (mp.normalized_error <= 10.0) ++matched;
    }
    REQUIRE(matched >= (9 * total) / 10);
}

TEST_CASE("matched arc roots sit in the exterior-excess band") {
    // |z^lambda exp(1-z^lambda)| - 1 within [0.4, 1.6] * (lambda log n/(2n))
    for (auto&& [name, params] : std::vector<std::pair<std::string, nlohmann::json>>{
             {"exp", {}}, {"confluent", {{"alpha", -0.5}, {"beta", -2.5}}}}) {
        auto fam = make_family(name, params);
        auto poly = partial_sum(fam, 200);
        auto roots = all_roots(poly);
        double model = std::log(200.0) / (2.0 * 200.0);
        for (double arg : {0.5, 0.7, 0.9}) {
            auto pt = make_arc_point(fam, band_sample(arg, 1.0), 200);
            auto rep = match(arc_predicted_zeros(pt, -1, 1), roots, 10.0);
            REQUIRE(rep.pairs.size() == 3);
            for (const auto& mp : rep.pairs) {
                double ratio = (curve_modulus(mp.matched_root, 1.0) - 1.0) / model;
                REQUIRE(ratio >= 0.4);
                REQUIRE(ratio <= 1.6);
            }
        }
    }
}

TEST_CASE("error-scale law: median normalized error stays in [0.01, 10]") {
    for (auto&& [name, params] : std::vector<std::pair<std::string, nlohmann::json>>{
             {"exp", {}}, {"confluent", {{"alpha", -0.5}, {"beta", -2.5}}}}) {
        auto fam = make_family(name, params);
        for (int n : {50, 100, 200, 400}) {
            auto poly = partial_sum(fam, n);
            auto roots = all_roots(poly);
            auto pt = make_arc_point(fam, band_sample(0.8, 1.0), n);
            auto preds = arc_predicted_zeros(pt, -2, 2);
            try {
                auto corner = corner_predicted_zeros(fam, n, 2);
                preds.insert(preds.end(), corner.begin(), corner.end());
            } catch (const ScalingLimitDestroyedError&) {
            }
            auto rep = match(preds, roots, 10.0);
            REQUIRE(!rep.pairs.empty());
            std::vector<double> ne;
            for (const auto& mp : rep.pairs) ne.push_back(mp.normalized_error);
            std::sort(ne.begin(), ne.end());
            double med = ne[ne.size() / 2];
            REQUIRE(med >= 0.01);
            REQUIRE(med <= 10.0);
        }
    }
}

TEST_CASE("csv emitters are deterministic and carry the schema") {
    RootSet roots;
    roots.converged = true;
    roots.roots = {{0.1, -0.2}};
    roots.residuals = {1e-15};
    auto a = io::roots_csv("exp", 10, roots);
    auto b = io::roots_csv("exp", 10, roots);
    REQUIRE(a == b);
    REQUIRE(a.rfind("family,n,re,im,residual\n", 0) == 0);
    REQUIRE(io::rates_csv_header() == "family,check,model,constant,exponent,r2\n");
    auto fit = rate_fit({{10, 0.1}, {20, 0.05}, {40, 0.025}}, RateModel::inv_n);
    REQUIRE(io::rates_csv_row("exp", "demo", fit).find("exp,demo,inv_n,") == 0);
}
