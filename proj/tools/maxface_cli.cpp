// Command-line front end: catalog browsing, period checks, singular point
// classification, global reports and mesh export.
//
// Exit codes: 0 success, 1 I/O or internal error, 2 period condition failed,
// 3 inadmissible input.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maxface/config.hpp"
#include "maxface/global.hpp"
#include "maxface/mesh.hpp"
#include "maxface/periods.hpp"
#include "maxface/report.hpp"
#include "maxface/singular.hpp"

namespace {

using namespace maxface;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitPeriods = 2;
constexpr int kExitInadmissible = 3;

struct Common {
    std::string config_path;
    std::string entry;
    std::vector<std::string> params;  // key=value
    std::string output;
    std::map<std::string, double> tol_flags;
};

JobConfig load(const Common& c) {
    JobConfig cfg;
    if (!c.config_path.empty()) {
        if (!c.entry.empty()) throw InadmissibleError("give either a config file or --entry, not both");
        cfg = load_job_config(c.config_path);
    } else if (!c.entry.empty()) {
        cfg.entry = c.entry;
    } else {
        throw InadmissibleError("a config file or --entry is required");
    }
    for (const auto& kv : c.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InadmissibleError("--param expects key=value, got '" + kv + "'");
        nlohmann::ordered_json v = kv.substr(eq + 1);
        cfg.params[kv.substr(0, eq)] = detail::complex_value(v, "--param " + kv.substr(0, eq));
    }
    for (const auto& [key, value] : c.tol_flags) apply_tolerance(cfg.tol, key, value);
    return cfg;
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json(j, path);
    }
}

std::string report_path(const Common& c, const JobConfig& cfg) {
    if (!c.output.empty()) return c.output;
    return cfg.report.value_or("");
}

json params_json(const ParamTable& p) {
    json j = json::object();
    for (const auto& [k, v] : p) j[k] = to_json(v);
    return j;
}

json front_json(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol) {
    try {
        return to_json(is_front(d, z, ctx, tol));
    } catch (const FrontCertificateError& e) {
        return {{"front", false}, {"error", e.what()}};
    }
}

MeshOptions mesh_options(const JobConfig& cfg) {
    MeshOptions mo;
    mo.nu = cfg.nu;
    mo.nv = cfg.nv;
    mo.clip_radius = cfg.clip_radius;
    return mo;
}

int cmd_catalog_list() {
    for (const auto& name : catalog_names()) std::printf("%-14s %s\n", name.c_str(), build(name).description.c_str());
    return kExitOk;
}

int cmd_catalog_show(const std::string& name, const std::string& out) {
    emit(catalog_json(name), out);
    return kExitOk;
}

int cmd_check_periods(const Common& c) {
    JobConfig cfg = load(c);
    CatalogEntry e = realize(cfg);
    PeriodReport r = check_periods(e.data, cfg.tol);
    json j = to_json(r);
    j["entry"] = e.name;
    j["params"] = params_json(e.params);
    emit(j, report_path(c, cfg));
    return r.pass ? kExitOk : kExitPeriods;
}

int cmd_classify(const Common& c) {
    JobConfig cfg = load(c);
    CatalogEntry e = realize(cfg);
    ClassifyOptions co;
    co.reading = cfg.reading;
    json j = document("classify_report");
    j["entry"] = e.name;
    j["params"] = params_json(e.params);
    j["subcase_reading"] = to_string(cfg.reading);
    j["points"] = json::array();
    j["curves"] = json::array();
    auto add_point = [&](cplx z, int curve, int index) {
        BranchContext ctx = context_at(e.data, z, cfg.tol);
        json p = to_json(classify(e.data, z, ctx, cfg.tol, co));
        p["curve"] = curve >= 0 ? json(curve) : json(nullptr);
        p["index"] = index;
        p["front_certificate"] = front_json(e.data, z, ctx, cfg.tol);
        j["points"].push_back(p);
        return p["verdict"].get<std::string>();
    };
    if (!cfg.points.empty()) {
        for (std::size_t k = 0; k < cfg.points.size(); ++k) add_point(cfg.points[k], -1, static_cast<int>(k));
    } else {
        TraceOptions to;
        to.nu = std::max(16, cfg.nu);
        to.nv = std::max(16, cfg.nv);
        auto curves = trace_singular_set(e.data, e.window, to, cfg.tol);
        for (std::size_t ci = 0; ci < curves.size(); ++ci) {
            std::map<std::string, int> counts;
            for (std::size_t k = 0; k < curves[ci].points.size(); ++k)
                ++counts[add_point(curves[ci].points[k], static_cast<int>(ci), static_cast<int>(k))];
            j["curves"].push_back(
                {{"closed", curves[ci].closed}, {"vertices", curves[ci].points.size()}, {"verdicts", counts}});
        }
    }
    if (cfg.csv) {
        SurfaceMesh m = sample_mesh(e.data, e.window, mesh_options(cfg), cfg.tol);
        export_singular_csv(m, *cfg.csv);
        j["csv"] = *cfg.csv;
    }
    emit(j, report_path(c, cfg));
    return kExitOk;
}

int cmd_global(const Common& c, bool with_window) {
    JobConfig cfg = load(c);
    CatalogEntry e = realize(cfg);
    GlobalReport r = global_report(e.data, with_window ? std::optional<Window>(e.window) : std::nullopt, cfg.tol);
    json j = to_json(r);
    j["entry"] = e.name;
    j["params"] = params_json(e.params);
    if (with_window) j["window"] = to_json(e.window);
    emit(j, report_path(c, cfg));
    return kExitOk;
}

int cmd_build(const Common& c) {
    JobConfig cfg = load(c);
    CatalogEntry e = realize(cfg);
    PeriodReport periods = check_periods(e.data, cfg.tol);
    json j = document("build_report");
    j["entry"] = e.name;
    j["description"] = e.description;
    j["params"] = params_json(e.params);
    j["g"] = to_string(e.data.g);
    j["omega"] = to_string(e.data.omega);
    j["maxface"] = e.data.maxface;
    j["window"] = to_json(e.window);
    j["periods_pass"] = periods.pass;
    TotalCurvature tc = total_curvature(e.data);
    j["degree_g"] = tc.degree ? json(*tc.degree) : json(nullptr);
    j["total_curvature"] = tc.exact ? json(*tc.exact) : json(nullptr);
    SurfaceMesh m = sample_mesh(e.data, e.window, mesh_options(cfg), cfg.tol);
    j["mesh"] = to_json(m);
    if (cfg.obj) {
        export_obj(m, *cfg.obj);
        j["obj"] = *cfg.obj;
    }
    if (cfg.csv) {
        export_singular_csv(m, *cfg.csv);
        j["csv"] = *cfg.csv;
    }
    emit(j, report_path(c, cfg));
    return periods.pass ? kExitOk : kExitPeriods;
}

int cmd_export(const Common& c, const std::string& obj_flag, const std::string& csv_flag) {
    JobConfig cfg = load(c);
    CatalogEntry e = realize(cfg);
    std::string obj = !obj_flag.empty() ? obj_flag : cfg.obj.value_or("");
    std::string csv = !csv_flag.empty() ? csv_flag : cfg.csv.value_or("");
    if (obj.empty()) throw InadmissibleError("export needs an OBJ path (--obj or output.obj)");
    SurfaceMesh m = sample_mesh(e.data, e.window, mesh_options(cfg), cfg.tol);
    export_obj(m, obj);
    json j = document("export_report");
    j["entry"] = e.name;
    j["params"] = params_json(e.params);
    j["mesh"] = to_json(m);
    j["obj"] = obj;
    if (!csv.empty()) {
        export_singular_csv(m, csv);
        j["csv"] = csv;
    }
    emit(j, report_path(c, cfg));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine maxfaces from Weierstrass data: periods, singularities, global invariants, meshes"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    std::map<std::string, std::optional<double>> tol_opts;
    for (const auto& key : tolerance_keys()) {
        std::string flag = "--tol-" + key;
        for (char& ch : flag)
            if (ch == '_') ch = '-';
        tol_opts[key] = std::nullopt;
        app.add_option(flag, tol_opts[key], "override tolerance '" + key + "'");
    }

    auto add_job_args = [&](CLI::App* sub) {
        sub->add_option("config", common.config_path, "job config JSON");
        sub->add_option("--entry", common.entry, "catalog entry instead of a config file");
        sub->add_option("--param", common.params, "parameter binding key=value (repeatable)");
        sub->add_option("-o,--output", common.output, "report path (default: stdout)");
    };

    auto* catalog = app.add_subcommand("catalog", "list or show catalog entries");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "list entry names");
    auto* show = catalog->add_subcommand("show", "entry details as JSON");
    std::string show_name, show_out;
    show->add_option("name", show_name)->required();
    show->add_option("-o,--output", show_out);

    auto* build_cmd = app.add_subcommand("build", "realize a config, check periods and sample a mesh");
    add_job_args(build_cmd);
    auto* periods_cmd = app.add_subcommand("check-periods", "verify the period conditions");
    add_job_args(periods_cmd);
    auto* classify_cmd = app.add_subcommand("classify", "classify singular points");
    add_job_args(classify_cmd);
    auto* osserman_cmd = app.add_subcommand("osserman", "global report: degree, Osserman inequality, ends");
    add_job_args(osserman_cmd);
    auto* report_cmd = app.add_subcommand("report", "global report including window curvature integration");
    add_job_args(report_cmd);
    auto* export_cmd = app.add_subcommand("export", "write the OBJ mesh and CSV singular polylines");
    add_job_args(export_cmd);
    std::string obj_path, csv_path;
    export_cmd->add_option("--obj", obj_path, "OBJ output path");
    export_cmd->add_option("--csv", csv_path, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInadmissible;
    }
    for (const auto& [key, value] : tol_opts)
        if (value) common.tol_flags[key] = *value;

    try {
        if (*list) return cmd_catalog_list();
        if (*show) return cmd_catalog_show(show_name, show_out);
        if (*build_cmd) return cmd_build(common);
        if (*periods_cmd) return cmd_check_periods(common);
        if (*classify_cmd) return cmd_classify(common);
        if (*osserman_cmd) return cmd_global(common, false);
        if (*report_cmd) return cmd_global(common, true);
        if (*export_cmd) return cmd_export(common, obj_path, csv_path);
    } catch (const InadmissibleError& e) {
        std::cerr << "inadmissible input: " << e.what() << '\n';
        return kExitInadmissible;
    } catch (const ParseError& e) {
        std::cerr << "inadmissible input: " << e.what() << '\n';
        return kExitInadmissible;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
