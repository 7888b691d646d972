#pragma once

// Surface meshes of ψ over a parameter window, OBJ export/import with `l`
// polylines for singular curves, and CSV polylines.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sampling.hpp"
#include "singular.hpp"

namespace maxface {

struct SingularPolyline {
    std::vector<cplx> params;
    std::vector<Vec3> points;
    bool closed = false;
};

struct SurfaceMesh {
    Window window;
    int nu = 0, nv = 0;               // grid nodes per direction
    std::vector<int> grid_vertex;     // (i, j) → vertex index, −1 when dropped
    std::vector<Vec3> vertices;
    std::vector<cplx> params;
    std::vector<double> lambda, K_h, sigma;  // K_h is NaN at singular points
    std::vector<std::vector<int>> faces;
    std::vector<SingularPolyline> singular;
    int clipped = 0;   // |ψ| above the clip radius
    int failed = 0;    // evaluation errors
};

struct MeshOptions {
    int nu = 64, nv = 64;             // cells per direction
    double clip_radius = 1e3;
    bool singular_curves = true;
    int trace_nu = 0, trace_nv = 0;   // 0: same as the mesh grid (at least 16)
};

inline SurfaceMesh sample_mesh(const WeierstrassData& d, const Window& w, const MeshOptions& opt = {},
                               const Tolerances& tol = {}) {
    SurfaceMesh m;
    m.window = w;
    auto us = uniform_nodes(opt.nu, false);
    auto vs = uniform_nodes(opt.nv, w.periodic_v());
    m.nu = static_cast<int>(us.size());
    m.nv = static_cast<int>(vs.size());
    const std::size_t total = us.size() * vs.size();
    struct Slot {
        bool ok = false, clipped = false;
        Vec3 psi{};
        double lambda = 0, K = 0, sigma = 0;
        cplx z{};
    };
    std::vector<Slot> slots(total);
    WalkOptions wo;
    wo.want_psi = true;
    walk_grid(d, w, us, vs, tol, wo, [&](const GridSample& s) {
        Slot& slot = slots[s.i * vs.size() + s.j];
        slot.z = s.z;
        if (!s.ctx || !s.psi) return;
        try {
            Jet j = jet_with(d, s.z, *s.ctx, s.phi, s.psi, tol);
            if (!all_finite(*j.psi) || !std::isfinite(j.Lambda)) return;
            slot.psi = *j.psi;
            slot.lambda = j.Lambda;
            slot.K = j.K_h ? *j.K_h : std::numeric_limits<double>::quiet_NaN();
            slot.sigma = j.sigmaCoeff;
            slot.clipped = norm(slot.psi) > opt.clip_radius;
            slot.ok = !slot.clipped;
        } catch (const std::runtime_error&) {
        }
    });
    m.grid_vertex.assign(total, -1);
    for (std::size_t k = 0; k < total; ++k) {
        const Slot& s = slots[k];
        if (!s.ok) {
            if (s.clipped) ++m.clipped;
            else ++m.failed;
            continue;
        }
        m.grid_vertex[k] = static_cast<int>(m.vertices.size());
        m.vertices.push_back(s.psi);
        m.params.push_back(s.z);
        m.lambda.push_back(s.lambda);
        m.K_h.push_back(s.K);
        m.sigma.push_back(s.sigma);
    }
    const bool periodic = w.periodic_v();
    const int cells_v = periodic ? m.nv : m.nv - 1;
    for (int i = 0; i + 1 < m.nu; ++i)
        for (int j = 0; j < cells_v; ++j) {
            int j1 = periodic ? (j + 1) % m.nv : j + 1;
            int a = m.grid_vertex[i * m.nv + j], b = m.grid_vertex[(i + 1) * m.nv + j];
            int c = m.grid_vertex[(i + 1) * m.nv + j1], e = m.grid_vertex[i * m.nv + j1];
            if (a < 0 || b < 0 || c < 0 || e < 0) continue;
            m.faces.push_back({a, b, c, e});
        }

    if (opt.singular_curves) {
        TraceOptions to;
        to.nu = std::max(16, opt.trace_nu > 0 ? opt.trace_nu : opt.nu);
        to.nv = std::max(16, opt.trace_nv > 0 ? opt.trace_nv : opt.nv);
        for (const auto& curve : trace_singular_set(d, w, to, tol)) {
            // Split at points that cannot be evaluated or lie beyond the clip radius.
            SingularPolyline cur;
            bool broken = false;
            auto flush = [&] {
                if (cur.points.size() >= 2) m.singular.push_back(cur);
                cur = {};
            };
            for (cplx z : curve.points) {
                std::optional<Vec3> p;
                try {
                    BranchContext ctx = context_at(d, z, tol);
                    Vec3 q = psi(d, z, ctx, tol);
                    if (all_finite(q) && norm(q) <= opt.clip_radius) p = q;
                } catch (const std::runtime_error&) {
                }
                if (!p) {
                    broken = true;
                    flush();
                    continue;
                }
                cur.params.push_back(z);
                cur.points.push_back(*p);
            }
            cur.closed = curve.closed && !broken;
            flush();
        }
    }
    return m;
}

// OBJ text: `v` records, quad `f` records, then singular polylines as `l`
// records over their own `v` records.
inline void write_obj(std::ostream& out, const SurfaceMesh& m) {
    char buf[128];
    out << "# maxface surface mesh\n";
    out << "# window: " << m.window.describe() << "\n";
    out << "# vertices " << m.vertices.size() << ", faces " << m.faces.size() << ", singular polylines "
        << m.singular.size() << "\n";
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", v[0], v[1], v[2]);
        out << buf;
    }
    for (const auto& f : m.faces) {
        out << "f";
        for (int k : f) out << ' ' << k + 1;
        out << '\n';
    }
    std::size_t base = m.vertices.size();
    for (const auto& pl : m.singular) {
        out << "o singular_curve\n";
        for (const auto& v : pl.points) {
            std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", v[0], v[1], v[2]);
            out << buf;
        }
        out << "l";
        for (std::size_t k = 0; k < pl.points.size(); ++k) out << ' ' << base + k + 1;
        if (pl.closed) out << ' ' << base + 1;
        out << '\n';
        base += pl.points.size();
    }
}

inline void export_obj(const SurfaceMesh& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    write_obj(f, m);
    if (!f) throw IoError("write failed for '" + path + "'");
}

struct ObjData {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;  // 0-based
    std::vector<std::vector<int>> lines;  // 0-based
};

inline ObjData parse_obj(std::istream& in) {
    ObjData o;
    std::string line;
    int lineno = 0;
    auto index = [&](const std::string& tok) {
        // Accept "k", "k/t", "k/t/n"; negative indices are relative to the end.
        int k = std::stoi(tok.substr(0, tok.find('/')));
        return k > 0 ? k - 1 : static_cast<int>(o.vertices.size()) + k;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        try {
            if (tag == "v") {
                Vec3 v;
                if (!(ls >> v[0] >> v[1] >> v[2])) throw std::invalid_argument("bad vertex");
                o.vertices.push_back(v);
            } else if (tag == "f" || tag == "l") {
                std::vector<int> idx;
                std::string tok;
                while (ls >> tok) idx.push_back(index(tok));
                (tag == "f" ? o.faces : o.lines).push_back(idx);
            }
        } catch (const std::exception& e) {
            throw IoError("OBJ line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return o;
}

inline ObjData load_obj(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    return parse_obj(f);
}

// One row per polyline vertex: curve, index, closed flag, u = Re z, v = Im z, then x, y, z.
inline void write_singular_csv(std::ostream& out, const SurfaceMesh& m) {
    char buf[256];
    out << "curve,index,closed,u,v,x,y,z\n";
    for (std::size_t c = 0; c < m.singular.size(); ++c) {
        const auto& pl = m.singular[c];
        for (std::size_t k = 0; k < pl.points.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%zu,%zu,%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", c, k, pl.closed ? 1 : 0,
                          pl.params[k].real(), pl.params[k].imag(), pl.points[k][0], pl.points[k][1],
                          pl.points[k][2]);
            out << buf;
        }
    }
}

inline void export_singular_csv(const SurfaceMesh& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    write_singular_csv(f, m);
    if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace maxface
