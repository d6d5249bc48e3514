// Command-line front end: coefficients, roots, curve traces, predictions,
// the acceptance checks, and the Laplace-method demo, with CSV/JSON/SVG
// artifacts per run.

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "szego/szego.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using szego::Complex;

namespace {

struct RunConfig {
    std::string family = "exp";
    json params = json::object();
    std::vector<int> n_list;
    std::string output_dir = "szego_out";
    double root_tol = 1e-13;
    std::uint64_t seed = 0;
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw szego::ParameterError("cannot read config file: " + path);
    json j = json::parse(in);
    if (j.contains("family")) cfg.family = j["family"].get<std::string>();
    if (j.contains("params")) cfg.params = j["params"];
    if (j.contains("n_list")) cfg.n_list = j["n_list"].get<std::vector<int>>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("tolerances") && j["tolerances"].contains("root_tol"))
        cfg.root_tol = j["tolerances"]["root_tol"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
}

fs::path ensure_outdir(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    return dir;
}

json failure_record(const std::string& stage, const std::exception& e) {
    return json{{"failure", stage}, {"what", e.what()}};
}

// sidecar CSV carrying exactly the data a scatter SVG shows
std::string sidecar_csv(const std::vector<std::pair<std::string, Complex>>& rows) {
    std::string out = "kind,x,y\n";
    for (const auto& [kind, z] : rows)
        out += kind + "," + szego::io::fmt(z.real()) + "," + szego::io::fmt(z.imag()) + "\n";
    return out;
}

int cmd_coeffs(const RunConfig& cfg, int kmax, bool scaled) {
    auto fam = szego::make_family(cfg.family, cfg.params);
    std::string out = "k,mant_re,mant_im,exp2,log_abs\n";
    for (int k = 0; k <= kmax; ++k) {
        szego::ScaledComplex c = scaled ? fam.coefficient_scaled(k) : fam.coefficient(k);
        out += std::to_string(k) + "," + szego::io::fmt(c.mantissa().real()) + "," +
               szego::io::fmt(c.mantissa().imag()) + "," + std::to_string(c.exponent()) + "," +
               szego::io::fmt(c.is_zero() ? 0.0 : c.log_abs()) + "\n";
    }
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_roots(const RunConfig& cfg) {
    auto fam = szego::make_family(cfg.family, cfg.params);
    fs::path dir = ensure_outdir(cfg);
    auto curve = szego::trace(fam.lambda(), 512);
    auto full = szego::mirror_conjugate(curve);
    for (int n : cfg.n_list) {
        auto poly = szego::partial_sum(fam, n);
        auto roots = szego::all_roots(poly, cfg.root_tol, cfg.seed);
        if (!roots.converged) throw szego::ConvergenceError("roots: unconverged at n = " + std::to_string(n));
        std::string base = cfg.family + "_roots_n" + std::to_string(n);
        szego::io::write_text(dir / (base + ".csv"), szego::io::roots_csv(cfg.family, n, roots));

        std::vector<szego::io::SvgSeries> series(1);
        series[0].points = roots.roots;
        std::vector<Complex> overlay;
        for (const auto& s : full) overlay.push_back(s.xi);
        szego::io::write_text(dir / (base + ".svg"),
                              szego::io::scatter_svg(series, overlay, base));
        std::vector<std::pair<std::string, Complex>> rows;
        for (Complex z : roots.roots) rows.emplace_back("root", z);
        for (Complex z : overlay) rows.emplace_back("curve", z);
        szego::io::write_text(dir / (base + ".plot.csv"), sidecar_csv(rows));
        std::printf("n=%d: %zu roots, %d sweeps -> %s\n", n, roots.roots.size(), roots.iterations,
                    (dir / (base + ".csv")).c_str());
    }
    return 0;
}

int cmd_curve(const RunConfig& cfg, double lambda, int samples) {
    fs::path dir = ensure_outdir(cfg);
    auto curve = szego::trace(lambda, samples);
    szego::io::write_text(dir / "curve.csv", szego::io::curve_csv(curve));
    std::vector<Complex> overlay;
    for (const auto& s : curve) overlay.push_back(s.xi);
    szego::io::write_text(dir / "curve.svg", szego::io::scatter_svg({}, overlay, "limit curve"));
    std::vector<std::pair<std::string, Complex>> rows;
    for (Complex z : overlay) rows.emplace_back("curve", z);
    szego::io::write_text(dir / "curve.plot.csv", sidecar_csv(rows));
    std::printf("%d samples -> %s\n", samples, (dir / "curve.csv").c_str());
    return 0;
}

int cmd_predict(const RunConfig& cfg, const std::string& source, double arc_arg, int k_lo, int k_hi,
                int count, int terms) {
    auto fam = szego::make_family(cfg.family, cfg.params);
    fs::path dir = ensure_outdir(cfg);
    for (int n : cfg.n_list) {
        std::vector<szego::PredictionRecord> preds;
        if (source == "arc") {
            double rad = szego::detail::curve_radius(arc_arg, fam.lambda());
            szego::CurveSample s;
            s.xi = std::polar(rad, arc_arg);
            s.arg = arc_arg;
            s.tau = fam.lambda() * szego::phi(s.xi, fam.lambda()).imag();
            auto pt = szego::make_arc_point(fam, s, n);
            preds = szego::arc_predicted_zeros(pt, k_lo, k_hi);
        } else if (source == "corner") {
            preds = szego::corner_predicted_zeros(fam, n, count);
        } else if (source == "kkmm") {
            preds = szego::kkmm_predictions(fam, n, count, terms);
        } else {
            throw CLI::ValidationError("--source must be arc, corner, or kkmm");
        }
        std::string base = cfg.family + "_predict_" + source + "_n" + std::to_string(n);
        szego::io::write_text(dir / (base + ".csv"), szego::io::predictions_csv(cfg.family, preds));
        szego::io::write_text(dir / (base + ".json"),
                              szego::io::predictions_json(cfg.family, preds).dump(2) + "\n");
        std::printf("n=%d: %zu predictions -> %s\n", n, preds.size(), (dir / (base + ".csv")).c_str());
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::vector<int>& only_list) {
    fs::path dir = ensure_outdir(cfg);
    std::set<int> only(only_list.begin(), only_list.end());
    auto results = szego::run_acceptance_checks(only);
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %2d  %s\n       %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.details.c_str());
        report.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
        if (!r.pass) ++failures;
    }
    szego::io::write_text(dir / "verify_report.json", report.dump(2) + "\n");
    std::printf("%zu checks, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}

int cmd_laplace(const RunConfig& cfg) {
    fs::path dir = ensure_outdir(cfg);
    // Watson demo: f(t) = 1/(1+t), five terms against adaptive quadrature
    std::vector<std::pair<Complex, double>> coeffs;
    for (int k = 0; k < 6; ++k) coeffs.push_back({{k % 2 ? -1.0 : 1.0, 0.0}, double(k)});
    auto series = szego::watson(coeffs, 6);
    std::string out = "lambda,series,quadrature,abs_diff,first_omitted\n";
    std::printf("%-8s %-22s %-22s %-12s %-12s\n", "lambda", "series(5)", "quadrature", "diff",
                "omitted");
    for (double lam : {20.0, 50.0, 100.0}) {
        auto [val, omitted] = szego::series_eval(series, lam, 5);
        auto q = szego::integrate_adaptive(
            [lam](double t) { return Complex(std::exp(-lam * t) / (1.0 + t), 0.0); }, 0.0,
            std::numeric_limits<double>::infinity(), 1e-13);
        double diff = std::abs(val - q.value);
        out += szego::io::fmt(lam) + "," + szego::io::fmt(val.real()) + "," +
               szego::io::fmt(q.value.real()) + "," + szego::io::fmt(diff) + "," +
               szego::io::fmt(omitted) + "\n";
        std::printf("%-8g %-22.16g %-22.16g %-12.3e %-12.3e\n", lam, val.real(), q.value.real(),
                    diff, omitted);
    }
    szego::io::write_text(dir / "laplace_watson_demo.csv", out);
    return 0;
}

int cmd_report(const RunConfig& cfg, double arc_arg) {
    auto fam = szego::make_family(cfg.family, cfg.params);
    fs::path dir = ensure_outdir(cfg);
    auto curve = szego::trace(fam.lambda(), 512);
    auto full = szego::mirror_conjugate(curve);

    struct PerN {
        int n;
        szego::RootSet roots;
        std::vector<szego::PredictionRecord> preds;
        szego::MatchReport rep;
    };
    // per-n pipeline stages are pure; run them concurrently and collect in order
    std::vector<std::future<PerN>> futs;
    for (int n : cfg.n_list) {
        futs.push_back(std::async(std::launch::async, [&, n] {
            PerN r{n, {}, {}, {}};
            auto poly = szego::partial_sum(fam, n);
            r.roots = szego::all_roots(poly, cfg.root_tol, cfg.seed);
            if (!r.roots.converged)
                throw szego::ConvergenceError("report: unconverged at n = " + std::to_string(n));
            double rad = szego::detail::curve_radius(arc_arg, fam.lambda());
            szego::CurveSample s;
            s.xi = std::polar(rad, arc_arg);
            s.arg = arc_arg;
            s.tau = fam.lambda() * szego::phi(s.xi, fam.lambda()).imag();
            auto pt = szego::make_arc_point(fam, s, n);
            r.preds = szego::arc_predicted_zeros(pt, -2, 2);
            try {
                auto corner = szego::corner_predicted_zeros(fam, n, 2);
                r.preds.insert(r.preds.end(), corner.begin(), corner.end());
            } catch (const szego::ScalingLimitDestroyedError&) {
                // gated family: arc predictions only
            }
            r.rep = szego::match(r.preds, r.roots);
            r.rep.n = n;
            return r;
        }));
    }

    std::string rates = szego::io::rates_csv_header();
    std::vector<std::pair<int, double>> med_errors;
    for (auto& f : futs) {
        PerN r = f.get();
        std::string base = cfg.family + "_n" + std::to_string(r.n);
        szego::io::write_text(dir / (base + "_roots.csv"),
                              szego::io::roots_csv(cfg.family, r.n, r.roots));
        szego::io::write_text(dir / (base + "_predictions.csv"),
                              szego::io::predictions_csv(cfg.family, r.preds));
        szego::io::write_text(dir / (base + "_matches.csv"),
                              szego::io::matches_csv(cfg.family, r.rep));
        szego::io::write_text(dir / (base + "_matches.json"),
                              szego::io::matches_json(cfg.family, r.rep).dump(2) + "\n");
        std::vector<szego::io::SvgSeries> series(2);
        series[0].points = r.roots.roots;
        series[1].color = "#2ca02c";
        series[1].radius = 2.4;
        for (const auto& p : r.preds) series[1].points.push_back(p.z_scaled);
        std::vector<Complex> overlay;
        for (const auto& s : full) overlay.push_back(s.xi);
        szego::io::write_text(dir / (base + ".svg"),
                              szego::io::scatter_svg(series, overlay, base));
        std::vector<std::pair<std::string, Complex>> rows;
        for (Complex z : series[0].points) rows.emplace_back("root", z);
        for (Complex z : series[1].points) rows.emplace_back("prediction", z);
        for (Complex z : overlay) rows.emplace_back("curve", z);
        szego::io::write_text(dir / (base + ".plot.csv"), sidecar_csv(rows));
        if (!r.rep.pairs.empty()) {
            std::vector<double> errs;
            for (const auto& mp : r.rep.pairs) errs.push_back(mp.abs_error);
            std::sort(errs.begin(), errs.end());
            med_errors.emplace_back(r.n, std::max(errs[errs.size() / 2], 1e-300));
        }
        std::printf("n=%d: %zu roots, %zu predictions, %zu matched\n", r.n, r.roots.roots.size(),
                    r.preds.size(), r.rep.pairs.size());
    }
    if (med_errors.size() >= 3) {
        auto fit = szego::rate_fit(med_errors, szego::RateModel::custom_power);
        rates += szego::io::rates_csv_row(cfg.family, "median_match_error", fit);
        std::printf("match-error rate: constant %.4g, exponent %.3f, r2 %.4f\n",
                    fit.fitted_constant, fit.fitted_exponent, fit.r_squared);
    }
    szego::io::write_text(dir / (cfg.family + "_rates.csv"), rates);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeros of scaled partial sums of entire functions: curves, predictions, checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, params_str;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    app.add_option("--family", cfg.family, "family name (exp, mittag_leffler, sin, cos, bessel, confluent, expint, airy_ai, airy_bi, parabolic_u)");
    app.add_option("--params", params_str, "family parameters as JSON, e.g. '{\"nu\":0.5}'");
    app.add_option("--output-dir", cfg.output_dir, "output directory (env SZEGO_OUTPUT_DIR overrides the default)");
    app.add_option("--tol", cfg.root_tol, "root backward-error tolerance");
    app.add_option("--seed", cfg.seed, "seed for randomized restart perturbations");

    auto* coeffs = app.add_subcommand("coeffs", "print Maclaurin coefficients");
    int kmax = 20;
    bool scaled = false;
    coeffs->add_option("--kmax", kmax, "largest index");
    coeffs->add_flag("--scaled", scaled, "rotated/normalized coefficients instead of native");

    auto* roots = app.add_subcommand("roots", "compute zeros of p_{n-1}(r_n z)");
    roots->add_option("--n", cfg.n_list, "partial sum indices");

    auto* curve = app.add_subcommand("curve", "trace the limit curve");
    double lambda = 1.0;
    int samples = 512;
    curve->add_option("--lambda", lambda, "growth order");
    curve->add_option("--samples", samples, "sample count");

    auto* predict = app.add_subcommand("predict", "predicted zero locations");
    std::string source = "arc";
    double arc_arg = 0.8;
    int k_lo = -2, k_hi = 2, count = 2, terms = 4;
    predict->add_option("--n", cfg.n_list, "partial sum indices");
    predict->add_option("--source", source, "arc | corner | kkmm");
    predict->add_option("--arc-arg", arc_arg, "argument of the arc point xi");
    predict->add_option("--k-lo", k_lo, "lowest tower index");
    predict->add_option("--k-hi", k_hi, "highest tower index");
    predict->add_option("--count", count, "number of erfc zeros");
    predict->add_option("--terms", terms, "KKMM correction terms (1..4)");

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    std::vector<int> only;
    verify->add_option("--only", only, "restrict to the given check ids");

    auto* laplace = app.add_subcommand("laplace", "Watson-series vs quadrature demo");

    auto* report = app.add_subcommand("report", "full pipeline: roots, predictions, matches, rates");
    double rep_arc_arg = 0.8;
    report->add_option("--n", cfg.n_list, "partial sum indices");
    report->add_option("--arc-arg", rep_arc_arg, "argument of the arc point xi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            RunConfig file_cfg;
            apply_config_file(file_cfg, config_path);
            // flags win over the file: only absorb file values left at defaults
            RunConfig defaults;
            if (cfg.family == defaults.family) cfg.family = file_cfg.family;
            if (cfg.params.empty()) cfg.params = file_cfg.params;
            if (cfg.n_list.empty()) cfg.n_list = file_cfg.n_list;
            if (cfg.output_dir == defaults.output_dir) cfg.output_dir = file_cfg.output_dir;
            if (cfg.root_tol == defaults.root_tol) cfg.root_tol = file_cfg.root_tol;
            if (cfg.seed == defaults.seed) cfg.seed = file_cfg.seed;
        }
        if (!params_str.empty()) cfg.params = json::parse(params_str);
        if (const char* env = std::getenv("SZEGO_OUTPUT_DIR")) {
            RunConfig defaults;
            if (cfg.output_dir == defaults.output_dir) cfg.output_dir = env;
        }

        if ((*roots || *predict || *report) && cfg.n_list.empty())
            throw szego::ParameterError("no partial-sum indices: pass --n or put n_list in the config");

        if (*coeffs) return cmd_coeffs(cfg, kmax, scaled);
        if (*roots) return cmd_roots(cfg);
        if (*curve) return cmd_curve(cfg, lambda, samples);
        if (*predict) return cmd_predict(cfg, source, arc_arg, k_lo, k_hi, count, terms);
        if (*verify) return cmd_verify(cfg, only);
        if (*laplace) return cmd_laplace(cfg);
        if (*report) return cmd_report(cfg, rep_arc_arg);
    } catch (const json::exception& e) {
        std::cerr << failure_record("config", e).dump() << "\n";
        return 2;
    } catch (const szego::ParameterError& e) {
        std::cerr << failure_record("usage", e).dump() << "\n";
        return 2;
    } catch (const szego::Error& e) {
        std::cerr << failure_record("numerical", e).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << failure_record("internal", e).dump() << "\n";
        return 1;
    }
    return 2;
}
