#include <gtest/gtest.h>

#include "maxface/catalog.hpp"
#include "maxface/maxface.hpp"
#include "maxface/sampling.hpp"
#include "support.hpp"

using namespace maxface;
using maxface::testing::max_diff;
using maxface::testing::sample_points;

namespace {

const ParamTable kZero{{"c1", 0.0}, {"c2", 0.0}, {"c3", 0.0}};

Vec3 vec(double a, double b, double c) { return {a, b, c}; }

}  // namespace

TEST(Conormal, ParaboloidClosedForm) {
    CatalogEntry e = build("paraboloid", kZero);
    cplx z(1, 1);
    BranchContext ctx = context_at(e.data, z);
    CVec3 ph = phi(e.data, z, ctx);
    EXPECT_LT(max_diff(ph, CVec3{0.5 * z, 0.5 * I * z, 0.0}), 1e-15);
    EXPECT_LT(max_diff(conormal(e.data, z, ctx), vec(1, -1, 0)), 1e-15);
}

TEST(Conormal, EnneperAtOne) {
    CatalogEntry e = build("enneper", kZero);
    BranchContext ctx = context_at(e.data, 1.0);
    EXPECT_LT(max_diff(phi(e.data, 1.0, ctx), CVec3{1.0 / 3, cplx(0, 2.0 / 3), 0.5}), 1e-15);
    EXPECT_LT(max_diff(conormal(e.data, 1.0, ctx), vec(2.0 / 3, 0, 1)), 1e-15);
}

TEST(Conormal, NumericIntegrationMatchesClosedForm) {
    for (const auto& name : {"enneper", "catenoid", "mobius", "miyaoka_sato", "helicoid"}) {
        CatalogEntry e = build(name, {{"c1", cplx(0, 0.3)}, {"c3", 0.2}});
        DomainSpec dom = e.data.domain;
        if (name == std::string("mobius")) dom.basepoint = I;  // 1 is a pole of g
        WeierstrassData numeric = make_weierstrass(e.data.g, e.data.omega, e.data.constants, dom);
        // Numeric Φ is anchored at the basepoint, so compare differences.
        cplx z0 = dom.basepoint;
        for (cplx z : sample_points(e, 6, 11, 0.2)) {
            BranchContext cc = context_at(e.data, z), cn = context_at(numeric, z);
            BranchContext bc = context_at(e.data, z0), bn = context_at(numeric, z0);
            CVec3 closed = phi(e.data, z, cc) - phi(e.data, z0, bc);
            CVec3 integrated = phi(numeric, z, cn) - phi(numeric, z0, bn);
            EXPECT_LT(max_diff(closed, integrated), 1e-8) << name << " at " << z;
        }
    }
    CatalogEntry cat = build("catenoid");
    WeierstrassData numeric = make_weierstrass(cat.data.g, cat.data.omega, cat.data.constants, cat.data.domain);
    cplx z = std::polar(2.0, pi / 3);
    BranchContext cc = context_at(cat.data, z), cn = context_at(numeric, z);
    CVec3 closed = phi(cat.data, z, cc) - phi(cat.data, 1.0, context_at(cat.data, 1.0));
    EXPECT_LT(max_diff(closed, phi(numeric, z, cn) - cat.data.constants), 1e-8);
    CatalogEntry mob = build("mobius");
    EXPECT_THROW(make_weierstrass(mob.data.g, mob.data.omega, {}, mob.data.domain), InadmissibleError);
}

TEST(Conormal, SingleValuedAroundCatenoidEnd) {
    CatalogEntry e = build("catenoid", {{"c1", cplx(0, 0.7)}, {"c2", cplx(0, -0.2)}, {"c3", 0.4}});
    cplx z(0.0, 1.5);
    BranchContext once = context_at(e.data, z);
    BranchContext twice = once;
    transport(e.data, twice, Path::circle(0.0, 1.5, 1.0, pi / 2));
    ASSERT_EQ(twice.windings(), std::vector<int>{once.windings()[0] + 1});
    EXPECT_LT(max_diff(conormal(e.data, z, once), conormal(e.data, z, twice)), 1e-12);
    // Φ itself changes by the 2πi residue in the third component.
    EXPECT_LT(std::abs(phi(e.data, z, twice)[2] - phi(e.data, z, once)[2] - 2 * pi * I), 1e-12);
}

TEST(GaussMap, StereographicValues) {
    EXPECT_LT(max_diff(stereographic(0.0), vec(0, 0, -1)), 1e-15);
    EXPECT_LT(max_diff(stereographic(1.0), vec(1, 0, 0)), 1e-15);
    EXPECT_LT(max_diff(stereographic(cplx(0, 2)), vec(0, 0.8, 0.6)), 1e-15);
    CatalogEntry e = build("enneper");
    EXPECT_LT(max_diff(gauss_sphere(e.data, cplx(0, 2)), vec(0, 0.8, 0.6)), 1e-15);
    // At a pole of g the inverted chart gives the north pole.
    CatalogEntry m = build("mobius");
    EXPECT_LT(max_diff(gauss_sphere(m.data, 1.0, context_at(m.data, 1.0)), vec(0, 0, 1)), 1e-12);
}

TEST(NullCurve, ClosedFormMatchesWeierstrassRepresentation) {
    for (const auto& name : {"paraboloid", "enneper", "catenoid", "helicoid", "mobius", "miyaoka_sato"}) {
        CatalogEntry e = build(name);
        const auto& d = e.data;
        for (cplx z : sample_points(e, 100, 5)) {
            BranchContext ctx = context_at(d, z);
            cplx g = eval(d.g, z, ctx), w = eval(d.omega, z, ctx);
            CVec3 expect{0.5 * (1.0 - g * g) * w, 0.5 * I * (1.0 + g * g) * w, g * w};
            CVec3 got = eval3(d.dphi, z, ctx);
            double scale = std::max(1.0, norm(expect));
            EXPECT_LT(max_diff(got, expect) / scale, 1e-8) << name << " at " << z;
            EXPECT_LT(std::abs(got[0] * got[0] + got[1] * got[1] + got[2] * got[2]) / (scale * scale), 1e-12);
        }
    }
}

TEST(AffineMap, ParaboloidAtOrigin) {
    CatalogEntry e = build("paraboloid");  // c3 = 1/2
    BranchContext ctx = context_at(e.data, 0.0);
    Jet j = jet(e.data, 0.0, ctx, {}, true);
    ASSERT_TRUE(j.psi.has_value());
    EXPECT_LT(max_diff(*j.psi, vec(0, 0, 0)), 1e-15);
    auto [pu, pv] = psi_derivatives(j.N, j.phi_z);
    EXPECT_GT(norm(cross(pu, pv)), 0.1);
}

TEST(AffineMap, NumericCrossIntegralMatchesClosedForm) {
    for (const auto& name : {"type220", "catenoid", "mobius"}) {
        CatalogEntry e = build(name);
        WeierstrassData numeric = e.data;
        numeric.cross_primitive.reset();
        for (cplx z : {cplx(1, 1), cplx(-0.5, 0.8), cplx(0.4, -1.7)}) {
            BranchContext ctx = context_at(e.data, z);
            EXPECT_LT(max_diff(psi(e.data, z, ctx), psi(numeric, z, ctx)), 1e-7) << name << " at " << z;
        }
    }
}

TEST(AffineMap, CatenoidIsSurfaceOfRevolution) {
    CatalogEntry e = build("catenoid");
    const int M = 16;
    for (double s : {-1.5, -0.5, 0.7, 1.8}) {
        std::vector<Vec3> ring;
        for (int k = 0; k < M; ++k) {
            cplx z = std::exp(cplx(s, 2 * pi * k / M));
            ring.push_back(psi(e.data, z, context_at(e.data, z)));
        }
        Vec3 centre{};
        for (const auto& p : ring) centre = centre + (1.0 / M) * p;
        double expected_radius = std::abs(4 * (s * std::sinh(s) - std::cosh(s)));
        for (const auto& p : ring) {
            EXPECT_NEAR(std::hypot(p[0] - centre[0], p[1] - centre[1]), expected_radius, 1e-9) << s;
            EXPECT_NEAR(p[2], centre[2], 1e-9) << s;
        }
        // Height relative to the basepoint circle |z| = 1.
        cplx one = 1.0;
        double h0 = psi(e.data, one, context_at(e.data, one))[2];
        EXPECT_NEAR(std::abs(centre[2] - h0), std::abs(std::sinh(2 * s) + 2 * s), 1e-9) << s;
    }
}

TEST(AffineMap, DifferentialAnnihilatesConormal) {
    for (const auto& name : catalog_names()) {
        CatalogEntry e = build(name);
        for (cplx z : sample_points(e, 20, 9)) {
            Jet j = jet(e.data, z, context_at(e.data, z));
            auto [pu, pv] = psi_derivatives(j.N, j.phi_z);
            double scale = norm(j.N) * norm(j.phi_z);
            EXPECT_LT(std::abs(dot(j.N, pu)) / scale, 1e-12) << name;
            EXPECT_LT(std::abs(dot(j.N, pv)) / scale, 1e-12) << name;
        }
    }
}

TEST(Jet, InvariantsAtRegularPoints) {
    for (const auto& name : catalog_names()) {
        CatalogEntry e = build(name);
        for (cplx z : sample_points(e, 30, 21)) {
            Jet j = jet(e.data, z, context_at(e.data, z));
            EXPECT_NEAR(norm(j.nu), 1.0, 1e-12) << name;
            EXPECT_NEAR(j.Lambda, dot(j.N, j.nu), 1e-12 * std::max(1.0, norm(j.N)));
            if (e.data.maxface) {
                EXPECT_NEAR(j.hCoeff, j.Lambda * j.sigmaCoeff, 1e-9 * std::max(1.0, j.sigmaCoeff * norm(j.N)))
                    << name;
                double lhs = singular_equation(j.N, j.g);
                if (!j.g_infinite) EXPECT_NEAR(lhs, (1 + std::norm(j.g)) * j.Lambda, 1e-9 * (1 + std::norm(j.g)) * norm(j.N));
            }
            if (!j.singular) {
                ASSERT_TRUE(j.xi.has_value());
                EXPECT_LT(std::abs(dot(j.N, *j.xi) - 1.0), 1e-8) << name;
            }
        }
    }
}

TEST(Jet, SingularPointsAreFlagged) {
    CatalogEntry e = build("enneper", kZero);
    cplx z(0.5, 0.5);
    Jet j = jet(e.data, z, context_at(e.data, z));
    EXPECT_LT(std::abs(j.Lambda), 1e-14);
    EXPECT_TRUE(j.singular);
    EXPECT_FALSE(j.xi.has_value());
    EXPECT_FALSE(j.K_h.has_value());
}

TEST(Identifier, ParaboloidHasConstantSign) {
    CatalogEntry e = build("paraboloid");
    for (int a = 0; a < 50; ++a)
        for (int b = 0; b < 50; ++b) {
            cplx z = e.window.at(a / 49.0, b / 49.0);
            Jet j = jet(e.data, z, context_at(e.data, z));
            EXPECT_NEAR(j.Lambda, -1.0, 1e-14);
        }
}

TEST(GridWalk, ParallelMatchesSerialAndPointwise) {
    CatalogEntry e = build("mobius");
    auto us = uniform_nodes(24, false), vs = uniform_nodes(24, true);
    auto run = [&](bool parallel) {
        WalkOptions opt;
        opt.want_psi = true;
        opt.parallel = parallel;
        std::vector<Vec3> out(us.size() * vs.size());
        walk_grid(e.data, e.window, us, vs, Tolerances{}, opt, [&](const GridSample& s) {
            if (s.ctx && s.psi) out[s.i * vs.size() + s.j] = *s.psi;
        });
        return out;
    };
    auto serial = run(false), parallel = run(true);
    EXPECT_EQ(serial, parallel);
    for (std::size_t i = 0; i < us.size(); i += 5)
        for (std::size_t j = 0; j < vs.size(); j += 5) {
            cplx z = e.window.at(us[i], vs[j]);
            EXPECT_LT(max_diff(serial[i * vs.size() + j], psi(e.data, z, context_at(e.data, z))), 1e-9) << z;
        }
}
