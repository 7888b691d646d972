#pragma once

// JSON serialization of reports. Every top-level document carries
// `schema_version` and `kind`; complex numbers are [re, im] pairs.

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "catalog.hpp"
#include "global.hpp"
#include "mesh.hpp"
#include "periods.hpp"
#include "singular.hpp"

namespace maxface {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

inline json document(const char* kind) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }
inline json to_json(const CVec3& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }
inline json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

// NaN and infinities become null.
inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const Window& w) {
    json j;
    if (w.kind == Window::Kind::Rect) {
        j["kind"] = "rect";
        j["x"] = {w.xmin, w.xmax};
        j["y"] = {w.ymin, w.ymax};
    } else {
        j["kind"] = "annulus";
        j["center"] = to_json(w.center);
        j["r"] = {w.rmin, w.rmax};
    }
    return j;
}

inline json to_json(const PeriodReport& r) {
    json j = document("period_report");
    j["pass"] = r.pass;
    j["tolerance"] = r.tolerance;
    j["loops"] = json::array();
    for (const auto& lp : r.loops) {
        json l;
        l["puncture"] = to_json(lp.puncture);
        l["radius"] = lp.radius;
        l["residual_conormal"] = lp.residual_conormal;
        l["residual_psi"] = lp.residual_psi;
        l["loop_dphi"] = to_json(lp.loop_dphi);
        l["loop_n_cross_dphi"] = to_json(lp.loop_n_cross);
        j["loops"].push_back(l);
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const SingularPointReport& r) {
    json j;
    j["z"] = to_json(r.z);
    j["lambda"] = r.Lambda;
    j["g"] = std::isfinite(std::abs(r.g)) ? to_json(r.g) : json(nullptr);
    j["D"] = to_json(r.D);
    j["D_normalized"] = r.D_normalized;
    j["nondegenerate"] = r.nondegenerate;
    j["regime"] = to_string(r.regime);
    j["unit_band"] = r.unit_band;
    j["subcase_reading"] = to_string(r.reading);
    j["criteria"] = json::array();
    for (const auto& c : r.criteria)
        j["criteria"].push_back({{"name", c.name}, {"value", c.value}, {"normalized", c.normalized}});
    j["readings_disagree"] = r.readings_disagree ? json(*r.readings_disagree) : json(nullptr);
    j["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const FrontCertificate& c) {
    return {{"front", c.front},
            {"branch", c.branch},
            {"dpsi_relative", c.dpsi_relative},
            {"phi_immersion", c.phi_immersion},
            {"normal_immersion", c.normal_immersion},
            {"abs_g", c.abs_g}};
}

inline json to_json(const EndReport& e) {
    json j;
    j["end"] = e.regularity.end.at_infinity ? json("inf") : to_json(e.regularity.end.point);
    j["regularity"] = to_string(e.regularity.regularity);
    j["pole_order_dphi"] = e.regularity.pole_order ? json(*e.regularity.pole_order) : json(nullptr);
    j["component_pole_orders"] = e.regularity.component_pole_orders;
    j["embedded_candidate"] = e.regularity.embedded_candidate;
    j["low_confidence"] = e.regularity.low_confidence;
    j["laurent_radius_mismatch"] = e.regularity.radius_mismatch;
    j["accumulation"] = to_string(e.accumulation.verdict);
    j["accumulation_radii"] = e.accumulation.radii;
    j["accumulation_sign_changes"] = e.accumulation.sign_changes;
    json mins = json::array();
    for (double x : e.accumulation.min_abs) mins.push_back(number_or_null(x));
    j["accumulation_min_abs_lambda"] = mins;
    json lengths = json::array();
    for (double x : e.rays.lengths) lengths.push_back(number_or_null(x));
    j["ray_lengths"] = lengths;
    j["weakly_complete_end"] = e.rays.divergent;
    return j;
}

inline json osserman_json(const OssermanCheck& o, bool embedded_consistent) {
    json j;
    j["degree_g"] = o.degree ? json(*o.degree) : json(nullptr);
    j["genus"] = o.genus;
    j["end_count"] = o.end_count;
    j["lhs"] = o.lhs ? json(*o.lhs) : json(nullptr);
    j["rhs"] = o.rhs;
    j["verdict"] = to_string(o.verdict);
    j["embedded_consistent"] = embedded_consistent;
    return j;
}

inline json to_json(const GlobalReport& r, const char* kind = "global_report") {
    json j = document(kind);
    j["maxface"] = r.maxface;
    j["degree_g"] = r.curvature.degree ? json(*r.curvature.degree) : json(nullptr);
    j["total_curvature"] = r.curvature.exact ? json(*r.curvature.exact) : json(nullptr);
    j["numeric_total_curvature"] = r.curvature.numeric ? number_or_null(*r.curvature.numeric) : json(nullptr);
    j["infinite_total_curvature"] = !r.curvature.degree.has_value();
    j["osserman"] = osserman_json(r.osserman, r.embedded_consistent);
    j["ends"] = json::array();
    for (const auto& e : r.ends) j["ends"].push_back(to_json(e));
    j["completeness"] = to_string(r.completeness);
    j["note"] = r.note;
    return j;
}

inline json to_json(const SurfaceMesh& m) {
    json j;
    j["window"] = to_json(m.window);
    j["grid"] = {m.nu, m.nv};
    j["vertices"] = m.vertices.size();
    j["faces"] = m.faces.size();
    j["clipped"] = m.clipped;
    j["failed"] = m.failed;
    j["singular_polylines"] = m.singular.size();
    std::size_t negative = 0;
    for (double l : m.lambda)
        if (l < 0) ++negative;
    j["negative_lambda_vertices"] = negative;
    return j;
}

inline json catalog_json(const std::string& name) {
    json j = document("catalog_entry");
    CatalogEntry e = build(name);
    j["name"] = name;
    j["description"] = e.description;
    j["parameters"] = json::array();
    for (const auto& p : param_schema(name))
        j["parameters"].push_back({{"name", p.name},
                                   {"integer", p.integer},
                                   {"default", to_json(p.default_value)},
                                   {"description", p.description}});
    j["g"] = to_string(e.data.g);
    j["omega"] = to_string(e.data.omega);
    j["maxface"] = e.data.maxface;
    json ends = json::array();
    for (const auto& end : e.data.domain.ends()) ends.push_back(end.at_infinity ? json("inf") : to_json(end.point));
    j["ends"] = ends;
    j["default_window"] = to_json(e.window);
    j["fixtures"] = json::array();
    for (const auto& f : fixtures(name))
        j["fixtures"].push_back({{"quantity", f.quantity}, {"expected", f.expected}, {"citation", f.citation}});
    return j;
}

inline void write_json(const json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace maxface
