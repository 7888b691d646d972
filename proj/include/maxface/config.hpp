#pragma once

// Job configuration: a catalog entry or inline Weierstrass data, parameter
// bindings, window, grid, outputs and tolerance overrides.

#include <array>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "errors.hpp"
#include "singular.hpp"
#include "tolerances.hpp"
#include "window.hpp"

namespace maxface {

struct InlineData {
    std::optional<std::string> g, omega;
    std::optional<std::array<std::string, 3>> phi;  // particular primitive; c is added
    std::vector<cplx> punctures;
    bool end_at_infinity = true;
    cplx basepoint{0.0};
    int genus = 0;
};

struct JobConfig {
    std::optional<std::string> entry;
    std::optional<InlineData> data;
    ParamTable params;
    std::optional<Window> window;
    int nu = 64, nv = 64;
    double clip_radius = 1e3;
    std::vector<cplx> points;  // classification points; empty: traced singular vertices
    std::optional<std::string> obj, csv, report;
    Tolerances tol;
    SubcaseReading reading = SubcaseReading::n1;
};

namespace detail {

using cjson = nlohmann::ordered_json;

inline cplx complex_value(const cjson& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    if (v.is_string()) {
        Expr e = parse_expr(v.get<std::string>());
        if (depends_on_z(e)) throw InadmissibleError(what + ": constant expression must not depend on z");
        return eval(e, 0.0);
    }
    throw InadmissibleError(what + ": expected a number, [re, im] or an expression string");
}

inline Window window_value(const cjson& w) {
    std::string kind = w.value("kind", "");
    try {
        if (kind == "rect") {
            auto x = w.at("x"), y = w.at("y");
            return Window::rect(x.at(0), x.at(1), y.at(0), y.at(1));
        }
        if (kind == "annulus") {
            cplx c = w.contains("center") ? complex_value(w["center"], "window.center") : cplx(0.0);
            auto r = w.at("r");
            return Window::annulus(c, r.at(0), r.at(1));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InadmissibleError(std::string("window: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InadmissibleError(std::string("window: ") + e.what());
    }
    throw InadmissibleError("window.kind must be \"rect\" or \"annulus\"");
}

}  // namespace detail

inline void apply_tolerance(Tolerances& t, const std::string& key, double value) {
    auto positive = [&](double& field) {
        if (!(value > 0)) throw InadmissibleError("tolerance '" + key + "' must be positive");
        field = value;
    };
    auto count = [&](int& field) {
        if (!(value >= 1) || value != std::floor(value)) throw InadmissibleError("tolerance '" + key + "' must be a positive integer");
        field = static_cast<int>(value);
    };
    if (key == "quad") positive(t.quad);
    else if (key == "max_depth") count(t.max_depth);
    else if (key == "path_clearance") positive(t.path_clearance);
    else if (key == "period") positive(t.period);
    else if (key == "sing") positive(t.sing);
    else if (key == "trace") positive(t.trace);
    else if (key == "regime") positive(t.regime);
    else if (key == "classify") positive(t.classify);
    else if (key == "accumulation_circles") count(t.accumulation_circles);
    else if (key == "accumulation_samples") count(t.accumulation_samples);
    else if (key == "laurent_order") count(t.laurent_order);
    else if (key == "ray_length") positive(t.ray_length);
    else throw InadmissibleError("unknown tolerance '" + key + "'");
}

inline const std::vector<std::string>& tolerance_keys() {
    static const std::vector<std::string> keys{"quad",   "max_depth", "path_clearance",       "period",
                                               "sing",   "trace",     "regime",               "classify",
                                               "accumulation_circles", "accumulation_samples", "laurent_order",
                                               "ray_length"};
    return keys;
}

inline JobConfig parse_job_config(const nlohmann::ordered_json& j) {
    using detail::complex_value;
    if (!j.is_object()) throw InadmissibleError("config must be a JSON object");
    JobConfig c;
    try {
        if (j.contains("entry")) c.entry = j["entry"].get<std::string>();
        if (j.contains("params"))
            for (const auto& [k, v] : j["params"].items()) c.params[k] = complex_value(v, "params." + k);
        if (j.contains("data")) {
            const auto& d = j["data"];
            InlineData in;
            if (d.contains("g")) in.g = d["g"].get<std::string>();
            if (d.contains("omega")) in.omega = d["omega"].get<std::string>();
            if (d.contains("phi")) {
                auto p = d["phi"];
                if (!p.is_array() || p.size() != 3) throw InadmissibleError("data.phi must have three components");
                in.phi = std::array<std::string, 3>{p[0].get<std::string>(), p[1].get<std::string>(), p[2].get<std::string>()};
            }
            if (d.contains("punctures"))
                for (const auto& p : d["punctures"]) in.punctures.push_back(complex_value(p, "data.punctures"));
            in.end_at_infinity = d.value("end_at_infinity", true);
            if (d.contains("basepoint")) in.basepoint = complex_value(d["basepoint"], "data.basepoint");
            in.genus = d.value("genus", 0);
            c.data = in;
        }
        if (c.entry.has_value() == c.data.has_value())
            throw InadmissibleError("config needs exactly one of \"entry\" and \"data\"");
        if (j.contains("window")) c.window = detail::window_value(j["window"]);
        if (j.contains("grid")) {
            c.nu = j["grid"].at(0);
            c.nv = j["grid"].at(1);
            if (c.nu < 2 || c.nv < 2) throw InadmissibleError("grid needs at least 2 cells per direction");
        }
        c.clip_radius = j.value("clip_radius", c.clip_radius);
        if (j.contains("points"))
            for (const auto& p : j["points"]) c.points.push_back(complex_value(p, "points"));
        if (j.contains("output")) {
            const auto& o = j["output"];
            if (o.contains("obj")) c.obj = o["obj"].get<std::string>();
            if (o.contains("csv")) c.csv = o["csv"].get<std::string>();
            if (o.contains("report")) c.report = o["report"].get<std::string>();
        }
        if (j.contains("tolerances"))
            for (const auto& [k, v] : j["tolerances"].items()) apply_tolerance(c.tol, k, v.get<double>());
        if (j.contains("subcase_reading")) {
            std::string r = j["subcase_reading"];
            if (r != "n1" && r != "n2") throw InadmissibleError("subcase_reading must be \"n1\" or \"n2\"");
            c.reading = r == "n1" ? SubcaseReading::n1 : SubcaseReading::n2;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InadmissibleError(std::string("config: ") + e.what());
    }
    return c;
}

inline JobConfig load_job_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config '" + path + "'");
    nlohmann::ordered_json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InadmissibleError("config '" + path + "': " + e.what());
    }
    return parse_job_config(j);
}

// Catalog entry for a config: the named entry, or one assembled from inline data.
inline CatalogEntry realize(const JobConfig& c) {
    if (c.entry) {
        CatalogEntry e = build(*c.entry, c.params);
        if (c.window) e.window = *c.window;
        return e;
    }
    const InlineData& in = *c.data;
    CatalogEntry e;
    e.name = "inline";
    e.description = "inline Weierstrass data";
    e.params = c.params;
    CVec3 constants{};
    ParamTable expr_params;
    for (const auto& [k, v] : c.params) {
        if (k == "c1") constants[0] = v;
        else if (k == "c2") constants[1] = v;
        else if (k == "c3") constants[2] = v;
        else expr_params[k] = v;
    }
    DomainSpec dom;
    dom.punctures = in.punctures;
    dom.end_at_infinity = in.end_at_infinity;
    dom.basepoint = in.basepoint;
    dom.genus = in.genus;
    if (dom.genus != 0) throw InadmissibleError("only genus-0 domains are supported");
    for (cplx p : dom.punctures)
        if (std::abs(p - dom.basepoint) == 0.0) throw InadmissibleError("basepoint coincides with a puncture");
    std::optional<Expr3> phi;
    if (in.phi) {
        Expr3 p;
        for (int k = 0; k < 3; ++k) p[k] = parse_expr((*in.phi)[k], expr_params) + Expr::constant(constants[k]);
        phi = p;
    }
    if (in.g && in.omega) {
        e.data = make_weierstrass(parse_expr(*in.g, expr_params), parse_expr(*in.omega, expr_params), constants, dom, phi);
    } else if (phi && !in.g && !in.omega) {
        e.data = make_from_phi(*phi, dom, constants);
    } else {
        throw InadmissibleError("inline data needs g and omega, or phi alone");
    }
    if (c.window) {
        e.window = *c.window;
    } else if (dom.punctures.empty()) {
        e.window = Window::rect(-1, 1, -1, 1);
    } else {
        e.window = Window::annulus(dom.punctures.front(), 0.3, 3.0);
    }
    return e;
}

}  // namespace maxface
