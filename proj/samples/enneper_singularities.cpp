// Trace and classify the singular set of the Enneper-type example, then
// write the surface and its singular curves to enneper.obj.
//
// usage: sample_enneper_singularities [Re c1 Im c1 Re c2 Im c2 Re c3]

#include <cstdio>
#include <cstdlib>
#include <map>

#include "maxface/catalog.hpp"
#include "maxface/mesh.hpp"
#include "maxface/singular.hpp"

int main(int argc, char** argv) {
    using namespace maxface;
    double v[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 5 && k + 1 < argc; ++k) v[k] = std::atof(argv[k + 1]);
    CatalogEntry e = build("enneper", {{"c1", cplx(v[0], v[1])}, {"c2", cplx(v[2], v[3])}, {"c3", v[4]}});

    TraceOptions opt;
    opt.classify_vertices = true;
    auto curves = trace_singular_set(e.data, e.window, opt);
    std::printf("window %s: %zu singular curve(s)\n", e.window.describe().c_str(), curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
        std::map<std::string, int> counts;
        for (Verdict t : curves[c].tags) ++counts[to_string(t)];
        std::printf("  curve %zu: %zu vertices, %s\n", c, curves[c].points.size(), curves[c].closed ? "closed" : "open");
        for (const auto& [name, n] : counts) std::printf("    %-26s %d\n", name.c_str(), n);
    }

    SurfaceMesh m = sample_mesh(e.data, e.window);
    export_obj(m, "enneper.obj");
    std::printf("wrote enneper.obj: %zu vertices, %zu faces, %zu polylines\n", m.vertices.size(), m.faces.size(),
                m.singular.size());
    return 0;
}
