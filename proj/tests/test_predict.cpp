#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "szego/predict.hpp"

using namespace szego;

namespace {

CurveSample sample_at(double arg, double lambda) {
    CurveSample s;
    if (arg == 0.0) {
        s.xi = {1.0, 0.0};
        return s;
    }
    double rad = detail::curve_radius(arg, lambda);
    s.xi = std::polar(rad, arg);
    s.arg = arg;
    s.tau = lambda * phi(s.xi, lambda).imag();
    return s;
}

}  // namespace

TEST_CASE("arc trajectory substitutions") {
    auto ex = make_family("exp");
    auto s = sample_at(1.1, 1.0);
    auto pt = make_arc_point(ex, s, 100);
    // w = i tau_n kills the w-part: z = xi (1 + log n / (2 (1-xi) n))
    Complex z = z_n_arc(pt, Complex(0.0, pt.tau_n), 1);
    Complex expect = s.xi * (1.0 + std::log(100.0) / (2.0 * (1.0 - s.xi) * 100.0));
    REQUIRE(std::abs(z - expect) <= 1e-14);
    // n -> infinity: z_n(w) -> xi
    auto far = make_arc_point(ex, s, 100000000);
    REQUIRE(std::abs(z_n_arc(far, Complex(3.0, -2.0), 1) - s.xi) <= 1e-5);
    // the corner is not an arc point
    auto corner = make_arc_point(ex, sample_at(0.0, 1.0), 100);
    REQUIRE_THROWS_AS(z_n_arc(corner, Complex(0.0, 0.0), 1), ParameterError);
    REQUIRE_THROWS_AS(arc_predicted_zeros(corner, 0, 1), ParameterError);
}

TEST_CASE("arc limit values: exp closed form, w to +infinity") {
    auto ex = make_family("exp");
    auto s = sample_at(0.9, 1.0);
    auto pt = make_arc_point(ex, s, 50);
    Complex w(0.4, -1.3);
    Complex expected = 1.0 - std::exp(-w) / ((1.0 - s.xi) * std::sqrt(2.0 * detail::kPi));
    REQUIRE(std::abs(arc_limit_value(pt, w) - expected) <= 1e-14);
    REQUIRE(std::abs(arc_limit_value(pt, Complex(40.0, 0.0)) - 1.0) <= 1e-15);
}

TEST_CASE("predicted zeros are the zeros of the limit function") {
    for (auto&& [name, params] :
         std::vector<std::pair<std::string, nlohmann::json>>{
             {"exp", {}},
             {"confluent", {{"alpha", -0.5}, {"beta", -2.5}}},
             {"sin", nlohmann::json::object()},
             {"bessel", {{"nu", 0.5}}}}) {
        auto fam = make_family(name, params);
        auto s = sample_at(0.7, fam.lambda());
        auto pt = make_arc_point(fam, s, 157);
        auto preds = arc_predicted_zeros(pt, -2, 2);
        REQUIRE(preds.size() == 5);
        double expected_mod = -1.0;
        for (const auto& p : preds) {
            REQUIRE(std::abs(arc_limit_value(pt, p.w)) <= 1e-12);
            // |e^{-w_k}| is the same for the whole tower
            if (expected_mod < 0.0) expected_mod = std::abs(std::exp(-p.w));
            REQUIRE(std::abs(std::exp(-p.w)) == Catch::Approx(expected_mod).epsilon(1e-12));
        }
        // first-order spacing 2 pi |xi| / (|1 - xi^lambda| n)
        double lam = fam.lambda();
        Complex xil = std::exp(lam * std::log(s.xi));
        double ref = 2.0 * detail::kPi * std::abs(s.xi) / (std::abs(1.0 - xil) * pt.n);
        for (std::size_t i = 0; i + 1 < preds.size(); ++i) {
            double sp = std::abs(preds[i + 1].z_scaled - preds[i].z_scaled);
            REQUIRE(sp == Catch::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("conjugate symmetry of arc predictions for real families") {
    auto ex = make_family("exp");
    auto s = sample_at(0.8, 1.0);
    auto pt = make_arc_point(ex, s, 90);
    CurveSample sc;
    sc.xi = std::conj(s.xi);
    sc.arg = -s.arg;
    sc.tau = -s.tau;
    auto ptc = make_arc_point(ex, sc, 90);
    auto up = arc_predicted_zeros(pt, -1, 1);
    auto dn = arc_predicted_zeros(ptc, -1, 1);
    for (const auto& p : up) {
        double best = 1e300;
        for (const auto& q : dn) best = std::min(best, std::abs(std::conj(p.z_scaled) - q.z_scaled));
        REQUIRE(best <= 1e-12);
    }
}

TEST_CASE("corner predictions and the existence gate") {
    auto ex = make_family("exp");
    auto preds = corner_predicted_zeros(ex, 100, 2);
    REQUIRE(preds.size() == 4);  // conjugate records included
    for (const auto& p : preds) {
        REQUIRE(p.expected_error_scale == Catch::Approx(0.1));
        // exp, lambda = 1: unscaled = n + w_j sqrt(2 n) with w_j the erfc zero
        Complex w_erfc = p.w / std::sqrt(2.0);
        Complex expect = 100.0 + w_erfc * std::sqrt(200.0);
        REQUIRE(std::abs(p.z_unscaled - expect) <= 1e-9);
    }
    // gate: Re b - Re a >= lambda/2 destroys the corner limit (an iff)
    auto bad = make_family("expint", {{"p", 0.0}, {"q", 3.0}, {"r", -1.0}});
    REQUIRE_THROWS_AS(corner_predicted_zeros(bad, 100, 1), ScalingLimitDestroyedError);
    auto good = make_family("expint", {{"p", 3.0}, {"q", 0.0}, {"r", -1.0}});
    REQUIRE(corner_predicted_zeros(good, 100, 1).size() == 2);
}

TEST_CASE("KKMM refinement series") {
    auto ex = make_family("exp");
    auto w1 = erfc_zeros(1)[0];
    // terms = 1 is the bare substitution 1 + sqrt(2) w / sqrt(n)
    Complex z1 = kkmm_refined_zero(ex, w1, 100, 1);
    REQUIRE(std::abs(z1 - (1.0 + std::sqrt(2.0) * w1 / 10.0)) <= 1e-15);
    REQUIRE_THROWS_AS(kkmm_refined_zero(make_family("sin"), w1, 100, 4), ParameterError);
    REQUIRE_THROWS_AS(kkmm_refined_zero(w1, 100, 5), ParameterError);

    // corrected parabola: unscaled 4-term zeros track
    // x = y^2/v^2 - (u/(3v)) y + (1-u^2-5v^2)/18 with u+iv = sqrt(2) w1;
    // residual decreases over n = 20..80 and stays within the frozen band
    Complex w = std::sqrt(2.0) * w1;
    double u = w.real(), v = w.imag();
    double prev = 1e300;
    for (int n = 20; n <= 80; n += 10) {
        Complex z = kkmm_refined_zero(w1, n, 4);
        double X = n * z.real(), Y = n * z.imag();
        double par = Y * Y / (v * v) - u / (3.0 * v) * Y + (1.0 - u * u - 5.0 * v * v) / 18.0;
        double resid = std::abs(X - par);
        REQUIRE(resid < prev);
        REQUIRE(resid * std::sqrt(static_cast<double>(n)) <= 2.0);
        prev = resid;
    }
}

TEST_CASE("preset arc constants agree with the generic growth machinery") {
    std::vector<std::pair<std::string, nlohmann::json>> fams = {
        {"sin", nlohmann::json::object()},
        {"cos", nlohmann::json::object()},
        {"bessel", {{"nu", 0.5}}},
        {"bessel", {{"nu", std::vector<double>{0.0, 1.0}}}},  // nu = i
        {"confluent", {{"alpha", -0.5}, {"beta", -2.5}}},
        {"expint", {{"p", 3.0}, {"q", 0.0}, {"r", -1.0}}},   // Re q < Re p
        {"expint", {{"p", 0.0}, {"q", 3.0}, {"r", -1.0}}},   // Re q > Re p
        {"expint", {{"p", 1.0}, {"q", 1.0}, {"r", -1.0}}},   // equal case
        {"expint", {{"p", 0.5}, {"q", 1.5}, {"r", 0.25}}},   // one direction
        {"airy_ai", nlohmann::json::object()},
        {"airy_bi", nlohmann::json::object()},
        {"parabolic_u", {{"a", 1.0}}},
        {"parabolic_u", {{"a", -2.0}}},
        {"parabolic_u", {{"a", 0.0}}},
    };
    for (const auto& [name, params] : fams) {
        auto fam = make_family(name, params);
        for (int n : {100, 101, 102}) {
            for (double arg : {0.3, 0.55}) {
                auto s = sample_at(arg, fam.lambda());
                auto pt = make_arc_point(fam, s, n);
                auto preset = detail::preset_arc_case(pt);
                REQUIRE(preset.has_value());
                auto generic = detail::classify_arc_case(pt);
                INFO(name << " n=" << n << " arg=" << arg);
                REQUIRE(std::abs(preset->D - generic.D) <= 1e-10 * (1.0 + std::abs(generic.D)));
                REQUIRE(preset->variant == generic.variant);
            }
        }
    }
}

TEST_CASE("equal-case predictions stay n-indexed and non-degenerate for sin") {
    // sin's bracket 1/(1-xi) - (-1)^n/(1+xi) differs between parities but
    // never pinches to zero on the curve; both parities must predict
    auto sn = make_family("sin");
    auto pt_odd = make_arc_point(sn, sample_at(0.6, 1.0), 101);
    auto pt_even = make_arc_point(sn, sample_at(0.6, 1.0), 102);
    auto p_odd = arc_predicted_zeros(pt_odd, 0, 0);
    auto p_even = arc_predicted_zeros(pt_even, 0, 0);
    REQUIRE(std::abs(p_odd[0].w - p_even[0].w) > 1e-3);  // n-dependent constants
}

TEST_CASE("arc predictions land on computed roots for every rotated family") {
    // end-to-end check of the rotation/normalization bookkeeping: the
    // predictions in the computed plane must sit on actual zeros
    std::vector<std::tuple<std::string, nlohmann::json, double>> cases = {
        {"bessel", {{"nu", 0.5}}, 0.4},
        {"bessel", {{"nu", std::vector<double>{0.0, 1.0}}}, 0.4},
        {"airy_ai", nlohmann::json::object(), 0.4},
        {"airy_bi", nlohmann::json::object(), 0.4},
        {"parabolic_u", {{"a", -2.0}}, 0.3},
        {"parabolic_u", {{"a", 1.0}}, 0.3},
        {"mittag_leffler", {{"lambda", 2.0}}, 0.35},
        {"expint", {{"p", 3.0}, {"q", 0.0}, {"r", -1.0}}, 0.5},
        {"sin", nlohmann::json::object(), 0.5},
        {"cos", nlohmann::json::object(), 0.5},
        {"confluent", {{"alpha", -0.5}, {"beta", -2.5}}, 0.5},
    };
    for (const auto& [name, params, arg] : cases) {
        auto fam = make_family(name, params);
        auto poly = partial_sum(fam, 150);
        auto roots = all_roots(poly);
        INFO(name);
        REQUIRE(roots.converged);
        auto pt = make_arc_point(fam, sample_at(arg, fam.lambda()), 150);
        auto preds = arc_predicted_zeros(pt, -1, 1);
        for (const auto& p : preds) {
            double best = 1e300;
            for (const Complex& z : roots.roots) best = std::min(best, std::abs(z - p.z_scaled));
            REQUIRE(best / p.expected_error_scale <= 2.0);
        }
    }
}

TEST_CASE("arc prediction error follows the second-order (log n)^2/n^2 law") {
    auto ex = make_family("exp");
    auto s = sample_at(0.9, 1.0);
    for (int n : {100, 200, 400}) {
        auto poly = partial_sum(ex, n);
        auto roots = all_roots(poly);
        auto pt = make_arc_point(ex, s, n);
        auto preds = arc_predicted_zeros(pt, 0, 0);
        double best = 1e300;
        for (const Complex& z : roots.roots) best = std::min(best, std::abs(z - preds[0].z_scaled));
        double ln = std::log(static_cast<double>(n));
        double normalized = best * n * static_cast<double>(n) / (ln * ln);
        REQUIRE(normalized >= 0.1);
        REQUIRE(normalized <= 0.5);
    }
}

TEST_CASE("two-direction case-b and equal-case predictions land on roots") {
    // case-b: Re a < Re b_1 selects the second-direction trajectory
    auto fb = make_family("expint", {{"p", 0.0}, {"q", 3.0}, {"r", -1.0}});
    for (int n : {150, 151}) {
        auto poly = partial_sum(fb, n);
        auto roots = all_roots(poly);
        REQUIRE(roots.converged);
        auto pt = make_arc_point(fb, sample_at(0.5, 1.0), n);
        REQUIRE(detail::arc_case(pt).tag == TheoremTag::arc_two_dir_case_b);
        for (const auto& pr : arc_predicted_zeros(pt, -1, 1)) {
            double best = 1e300;
            for (const Complex& z : roots.roots) best = std::min(best, std::abs(z - pr.z_scaled));
            REQUIRE(best / pr.expected_error_scale <= 2.0);
        }
    }
    // equal case: an asymptotic rather than a limit, so the band is looser;
    // odd n keeps clear of the slow-converging parity
    auto fe = make_family("expint", {{"p", 1.0}, {"q", 1.0}, {"r", -1.0}});
    auto poly = partial_sum(fe, 151);
    auto roots = all_roots(poly);
    REQUIRE(roots.converged);
    auto pt = make_arc_point(fe, sample_at(0.5, 1.0), 151);
    REQUIRE(detail::arc_case(pt).tag == TheoremTag::arc_two_dir_case_eq);
    for (const auto& pr : arc_predicted_zeros(pt, -1, 1)) {
        double best = 1e300;
        for (const Complex& z : roots.roots) best = std::min(best, std::abs(z - pr.z_scaled));
        REQUIRE(best / pr.expected_error_scale <= 2.0);
    }
}

TEST_CASE("parabolic cylinder corner gate follows the sign of Re a") {
    auto u1 = make_family("parabolic_u", {{"a", 1.0}});
    auto preds = corner_predicted_zeros(u1, 150, 2);
    auto poly = partial_sum(u1, 150);
    auto roots = all_roots(poly);
    REQUIRE(roots.converged);
    for (const auto& p : preds) {
        double best = 1e300;
        for (const Complex& z : roots.roots) best = std::min(best, std::abs(z - p.z_scaled));
        REQUIRE(best / p.expected_error_scale <= 2.0);
    }
    auto u2 = make_family("parabolic_u", {{"a", -2.0}});
    REQUIRE_THROWS_AS(corner_predicted_zeros(u2, 150, 2), ScalingLimitDestroyedError);
}

TEST_CASE("corrected mittag-leffler radius feeds the corner predictions") {
    auto ml = make_family("mittag_leffler", {{"lambda", 2.0}});
    for (auto mode : {RadiusMode::standard, RadiusMode::mittag_leffler_corrected}) {
        auto poly = partial_sum(ml, 100, mode);
        auto roots = all_roots(poly);
        REQUIRE(roots.converged);
        auto preds = corner_predicted_zeros(ml, 100, 2, mode);
        REQUIRE(preds.size() == 4);
        for (const auto& p : preds) {
            double best = 1e300;
            for (const Complex& z : roots.roots) best = std::min(best, std::abs(z - p.z_scaled));
            REQUIRE(best / p.expected_error_scale <= 10.0);
        }
    }
    REQUIRE(scaling_radius(ml, 100, RadiusMode::mittag_leffler_corrected) >
            scaling_radius(ml, 100, RadiusMode::standard));
}

TEST_CASE("width disk count") {
    auto ex = make_family("exp");
    auto poly = partial_sum(ex, 60);
    auto roots = all_roots(poly);
    // a disk far from every root is empty
    REQUIRE(width_disk_count(roots, poly, 0.0, 1e6, -0.5, 0.1) == 0);
    // hand-counted disk centered on the curve point at arg 0.9 (rho = n|xi|)
    double rho = 60.0 * std::abs(sample_at(0.9, 1.0).xi);
    double radius = rho * std::pow(60.0, -0.4);
    Complex center = std::polar(rho, 0.9);
    int expected = 0;
    for (const Complex& z : roots.roots)
        if (std::abs(60.0 * z - center) <= radius) ++expected;
    REQUIRE(width_disk_count(roots, poly, 0.9, rho, -0.5, 0.1) == expected);
    REQUIRE(expected >= 1);  // the arc carries roots near this curve point
}
