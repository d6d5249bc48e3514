#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/curve.hpp"
#include "szego/errors.hpp"
#include "szego/harness.hpp"
#include "szego/predict.hpp"
#include "szego/rootfind.hpp"

namespace szego {

namespace io {

// Deterministic shortest round-trip formatting; locale-independent.
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path.string());
    os << text;
}

// roots CSV: family,n,re,im,residual
inline std::string roots_csv(const std::string& family, int n, const RootSet& roots) {
    std::string out = "family,n,re,im,residual\n";
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        out += family + "," + std::to_string(n) + "," + fmt(roots.roots[i].real()) + "," +
               fmt(roots.roots[i].imag()) + "," + fmt(roots.residuals[i]) + "\n";
    }
    return out;
}

// curve CSV: arg,re_xi,im_xi,tau
inline std::string curve_csv(const std::vector<CurveSample>& samples) {
    std::string out = "arg,re_xi,im_xi,tau\n";
    for (const CurveSample& s : samples)
        out += fmt(s.arg) + "," + fmt(s.xi.real()) + "," + fmt(s.xi.imag()) + "," + fmt(s.tau) +
               "\n";
    return out;
}

// predictions CSV: family,n,theorem,k,w_re,w_im,zs_re,zs_im,zu_re,zu_im,expected_error_scale
inline std::string predictions_csv(const std::string& family,
                                   const std::vector<PredictionRecord>& preds) {
    std::string out = "family,n,theorem,k,w_re,w_im,zs_re,zs_im,zu_re,zu_im,expected_error_scale\n";
    for (std::size_t k = 0; k < preds.size(); ++k) {
        const PredictionRecord& p = preds[k];
        out += family + "," + std::to_string(p.n) + "," + theorem_tag_name(p.theorem) + "," +
               std::to_string(k) + "," + fmt(p.w.real()) + "," + fmt(p.w.imag()) + "," +
               fmt(p.z_scaled.real()) + "," + fmt(p.z_scaled.imag()) + "," +
               fmt(p.z_unscaled.real()) + "," + fmt(p.z_unscaled.imag()) + "," +
               fmt(p.expected_error_scale) + "\n";
    }
    return out;
}

// matches CSV: family,n,theorem,k,w_re,w_im,pred_re,pred_im,root_re,root_im,abs_err,norm_err
inline std::string matches_csv(const std::string& family, const MatchReport& rep) {
    std::string out = "family,n,theorem,k,w_re,w_im,pred_re,pred_im,root_re,root_im,abs_err,norm_err\n";
    for (std::size_t k = 0; k < rep.pairs.size(); ++k) {
        const MatchPair& m = rep.pairs[k];
        out += family + "," + std::to_string(rep.n) + "," + theorem_tag_name(m.prediction.theorem) +
               "," + std::to_string(k) + "," + fmt(m.prediction.w.real()) + "," +
               fmt(m.prediction.w.imag()) + "," + fmt(m.prediction.z_scaled.real()) + "," +
               fmt(m.prediction.z_scaled.imag()) + "," + fmt(m.matched_root.real()) + "," +
               fmt(m.matched_root.imag()) + "," + fmt(m.abs_error) + "," +
               fmt(m.normalized_error) + "\n";
    }
    return out;
}

// rates CSV: family,check,model,constant,exponent,r2
inline std::string rates_csv_header() { return "family,check,model,constant,exponent,r2\n"; }

inline std::string rates_csv_row(const std::string& family, const std::string& check,
                                 const RateFit& fit) {
    return family + "," + check + "," + rate_model_name(fit.model) + "," +
           fmt(fit.fitted_constant) + "," + fmt(fit.fitted_exponent) + "," + fmt(fit.r_squared) +
           "\n";
}

inline nlohmann::ordered_json roots_json(const std::string& family, int n, const RootSet& roots) {
    nlohmann::ordered_json j;
    j["family"] = family;
    j["n"] = n;
    j["converged"] = roots.converged;
    j["iterations"] = roots.iterations;
    auto& arr = j["roots"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < roots.roots.size(); ++i)
        arr.push_back({{"re", roots.roots[i].real()},
                       {"im", roots.roots[i].imag()},
                       {"residual", roots.residuals[i]}});
    return j;
}

inline nlohmann::ordered_json predictions_json(const std::string& family,
                                               const std::vector<PredictionRecord>& preds) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const PredictionRecord& p : preds)
        j.push_back({{"family", family},
                     {"n", p.n},
                     {"theorem", theorem_tag_name(p.theorem)},
                     {"w_re", p.w.real()},
                     {"w_im", p.w.imag()},
                     {"zs_re", p.z_scaled.real()},
                     {"zs_im", p.z_scaled.imag()},
                     {"zu_re", p.z_unscaled.real()},
                     {"zu_im", p.z_unscaled.imag()},
                     {"expected_error_scale", p.expected_error_scale}});
    return j;
}

inline nlohmann::ordered_json matches_json(const std::string& family, const MatchReport& rep) {
    nlohmann::ordered_json j;
    j["family"] = family;
    j["n"] = rep.n;
    j["unmatched_predictions"] = rep.unmatched_predictions;
    j["unmatched_roots_near_region"] = rep.unmatched_roots_near_region;
    auto& arr = j["pairs"] = nlohmann::ordered_json::array();
    for (const MatchPair& m : rep.pairs)
        arr.push_back({{"theorem", theorem_tag_name(m.prediction.theorem)},
                       {"w_re", m.prediction.w.real()},
                       {"w_im", m.prediction.w.imag()},
                       {"pred_re", m.prediction.z_scaled.real()},
                       {"pred_im", m.prediction.z_scaled.imag()},
                       {"root_re", m.matched_root.real()},
                       {"root_im", m.matched_root.imag()},
                       {"abs_err", m.abs_error},
                       {"norm_err", m.normalized_error}});
    return j;
}

// Minimal self-contained scatter SVG: points plus an optional polyline
// overlay.  Every plotted number also lands in the sidecar CSV.
struct SvgSeries {
    std::vector<Complex> points;
    std::string color = "#1f77b4";
    double radius = 1.6;
};

inline std::string scatter_svg(const std::vector<SvgSeries>& series,
                               const std::vector<Complex>& polyline, const std::string& title) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto grow = [&](Complex z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    };
    for (const auto& s : series)
        for (Complex z : s.points) grow(z);
    for (Complex z : polyline) grow(z);
    if (xmin > xmax) {
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    double pad = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-12;
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    const double W = 720.0, H = 720.0;
    double sx = W / (xmax - xmin), sy = H / (ymax - ymin);
    double sc = std::min(sx, sy);
    auto mapx = [&](double x) { return (x - xmin) * sc; };
    auto mapy = [&](double y) { return H - (y - ymin) * sc; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" +
           fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<title>" + title + "</title>\n";
    if (!polyline.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.2\" points=\"";
        for (Complex z : polyline) svg += fmt(mapx(z.real())) + "," + fmt(mapy(z.imag())) + " ";
        svg += "\"/>\n";
    }
    for (const auto& s : series) {
        for (Complex z : s.points)
            svg += "<circle cx=\"" + fmt(mapx(z.real())) + "\" cy=\"" + fmt(mapy(z.imag())) +
                   "\" r=\"" + fmt(s.radius) + "\" fill=\"" + s.color + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace io

}  // namespace szego
