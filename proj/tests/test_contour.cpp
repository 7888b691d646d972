#include <gtest/gtest.h>

#include "maxface/catalog.hpp"
#include "maxface/contour.hpp"
#include "maxface/periods.hpp"
#include "support.hpp"

using namespace maxface;
using maxface::testing::max_diff;

TEST(Contour, UnitCircleIntegrals) {
    BranchContext ctx(1.0, {0.0});
    cplx a = integrate_path<cplx>([](cplx z, const BranchContext&) { return 1.0 / z; }, Path::circle(0.0, 1.0), ctx);
    EXPECT_LT(std::abs(a - 2 * pi * I), 1e-10);
    BranchContext ctx2(1.0, {0.0});
    cplx b = integrate_path<cplx>([](cplx z, const BranchContext&) { return z; }, Path::circle(0.0, 1.0), ctx2);
    EXPECT_LT(std::abs(b), 1e-10);
}

TEST(Contour, PolylineMatchesAntiderivative) {
    Path p = Path::polyline({cplx(0.5, 0), cplx(1, 1), cplx(-1, 2), cplx(-2, 0.5)});
    BranchContext ctx(p.start());
    cplx v = integrate_path<cplx>([](cplx z, const BranchContext&) { return std::exp(z) * z; }, p, ctx);
    auto F = [](cplx z) { return std::exp(z) * (z - 1.0); };
    EXPECT_LT(std::abs(v - (F(p.end()) - F(p.start()))), 1e-10);
}

TEST(Contour, ResidueOfSimplePole) {
    cplx r = residue<cplx>([](cplx z, const BranchContext&) { return 1.0 / z; }, 0.0, 0.5);
    EXPECT_LT(std::abs(r - 1.0), 1e-12);
    cplx r2 = residue<cplx>([](cplx z, const BranchContext&) { return (3.0 + z) / ((z - 0.2) * (z + 4.0)); }, 0.2, 0.5);
    EXPECT_LT(std::abs(r2 - 3.2 / 4.2), 1e-12);
}

TEST(Contour, ResidueRejectsBranchPoint) {
    // z^(-1/2): the loop integral depends on the radius.
    Expr e = parse_expr("1/sqrt(z)");
    std::vector<Expr> tracked{e};
    auto f = [&](cplx z, const BranchContext& c) { return eval(e, z, c); };
    EXPECT_THROW(residue<cplx>(f, 0.0, 0.5, Tolerances{}, tracked), std::runtime_error);
}

TEST(Contour, ClearanceIsEnforced) {
    BranchContext ctx(cplx(-1, 1e-4), {0.0});
    Path p = Path::segment(cplx(-1, 1e-4), cplx(1, 1e-4));
    EXPECT_THROW(integrate_path<cplx>([](cplx z, const BranchContext&) { return 1.0 / z; }, p, ctx), ClearanceError);
    Path planned = plan_path(cplx(-1, 0), cplx(1, 0), std::vector<cplx>{0.0}, 1e-3);
    EXPECT_GE(planned.clearance(std::vector<cplx>{0.0}), 1e-3);
}

TEST(Contour, AdaptiveQuadratureSignalsNonConvergence) {
    auto f = [](double t) { return 1.0 / std::sqrt(t); };
    EXPECT_THROW(integrate_adaptive<double>(f, 0.0, 1.0, 1e-14, 3), ConvergenceError);
}

TEST(Contour, MobiusCrossResidue) {
    CatalogEntry e = build("mobius");
    const auto& d = e.data;
    auto tracked = tracked_exprs(d);
    auto f = [&](cplx z, const BranchContext& c) {
        CVec3 ph = eval3(*d.phi, z, c);
        CVec3 dp = eval3(d.dphi, z, c);
        return cross(ph, dp);
    };
    CVec3 r = residue<CVec3>(f, 0.0, 0.5, Tolerances{}, tracked);
    EXPECT_LT(max_diff(r, CVec3{cplx(0, 2), 0.0, cplx(0, -2.0 / 3)}), 1e-10);
}

TEST(Contour, Type220DphiResidue) {
    for (cplx k : {cplx(0.5), cplx(1.0), cplx(0.3, 0.2)}) {
        CatalogEntry e = build("type220", {{"k", k}});
        const auto& d = e.data;
        auto f = [&](cplx z, const BranchContext& c) { return eval3(d.dphi, z, c); };
        CVec3 r = residue<CVec3>(f, 0.0, 0.5, Tolerances{}, tracked_exprs(d));
        EXPECT_LT(max_diff(r, CVec3{0.0, 0.0, k}), 1e-12) << k;
    }
}

TEST(Contour, DphiResiduesAreRadiusIndependent) {
    // residue() compares radii r and r/2 and throws when they differ.
    for (const auto& name : catalog_names()) {
        CatalogEntry e = build(name);
        const auto& d = e.data;
        for (cplx p : d.domain.punctures) {
            auto f = [&](cplx z, const BranchContext& c) { return eval3(d.dphi, z, c); };
            EXPECT_NO_THROW(residue<CVec3>(f, p, 0.5, Tolerances{}, tracked_exprs(d))) << name;
        }
    }
}

TEST(Periods, ParaboloidHasNoLoops) {
    PeriodReport r = check_periods(build("paraboloid").data);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.loops.empty());
}

TEST(Periods, CatenoidImaginaryConstantsPass) {
    PeriodReport r = check_periods(build("catenoid", {{"c1", I}, {"c2", 2.0 * I}}).data);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.loops.size(), 1u);
    EXPECT_LT(r.loops[0].residual_psi, 1e-10);
}

TEST(Periods, CatenoidRealConstantFails) {
    for (double a : {1.0, 0.25}) {
        PeriodReport r = check_periods(build("catenoid", {{"c1", a}}).data);
        EXPECT_FALSE(r.pass);
        ASSERT_EQ(r.loops.size(), 1u);
        // ∮ N × dΦ picks up 2 Re c1 times the 2πi residue of dΦ3 = dz/z.
        EXPECT_NEAR(r.loops[0].residual_psi, 4 * pi * a, 1e-8) << a;
    }
}

TEST(Periods, CatalogDefaultsSatisfyConditions) {
    for (const auto& name : {"enneper", "catenoid", "helicoid", "mobius", "miyaoka_sato", "type220"}) {
        PeriodReport r = check_periods(build(name).data);
        EXPECT_TRUE(r.pass) << name;
        for (const auto& lp : r.loops) {
            EXPECT_LT(lp.residual_conormal, 1e-10) << name;
            EXPECT_LT(lp.residual_psi, 1e-10) << name;
        }
    }
}

TEST(Periods, Type220ComplexLogCoefficientFails) {
    // Re(2πi k) ≠ 0 when Im k ≠ 0: N is not single-valued.
    PeriodReport r = check_periods(build("type220", {{"k", cplx(0.5, 0.1)}}).data);
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.loops.size(), 1u);
    EXPECT_NEAR(r.loops[0].residual_conormal, 2 * pi * 0.1, 1e-8);
}

TEST(Periods, LoopIntegralIsHomotopyInvariant) {
    CatalogEntry e = build("mobius", {{"c3", cplx(0, 0.4)}});
    Tolerances tol;
    auto [a_dphi, a_cross] = loop_integrals(e.data, Path::circle(0.0, 0.5), tol);
    auto [b_dphi, b_cross] = loop_integrals(e.data, Path::circle(0.0, 2.0), tol);
    EXPECT_LT(max_diff(a_dphi, b_dphi), 1e-9);
    // Only Im(N × dΦ) is a closed form; the ψ period comes from it.
    EXPECT_LT(max_diff(imag(a_cross), imag(b_cross)), 1e-9);
}
