#include <gtest/gtest.h>

#include <random>

#include "maxface/catalog.hpp"
#include "maxface/global.hpp"

using namespace maxface;

namespace {

// Spherical area of the cap covered once by g = z on |z| < R.
double cap_area(double R) { return 4 * pi * R * R / (1 + R * R); }

const End kZeroEnd{false, 0.0};
const End kInfinity{true, 0.0};

}  // namespace

TEST(TotalCurvature, DegreesAndExactValues) {
    struct Case {
        const char* name;
        std::optional<int> degree;
    };
    for (const auto& c : {Case{"paraboloid", 0}, Case{"enneper", 1}, Case{"catenoid", 1}, Case{"mobius", 3},
                          Case{"miyaoka_sato", 3}, Case{"helicoid", std::nullopt}}) {
        TotalCurvature tc = total_curvature(build(c.name).data);
        EXPECT_EQ(tc.degree, c.degree) << c.name;
        if (c.degree) {
            ASSERT_TRUE(tc.exact.has_value());
            EXPECT_DOUBLE_EQ(*tc.exact, -4 * pi * *c.degree);
        } else {
            EXPECT_FALSE(tc.exact.has_value());
            EXPECT_FALSE(tc.note.empty());
        }
    }
    for (int n : {3, 5, 7}) EXPECT_EQ(total_curvature(build("miyaoka_sato", {{"n", double(n)}}).data).degree, n);
}

TEST(TotalCurvature, NumericMatchesSphericalArea) {
    CatalogEntry e = build("enneper");
    for (double R : {0.5, 1.0, 3.0}) {
        double k = numeric_total_curvature(e.data, Window::annulus(0.0, 1e-9, R));
        EXPECT_NEAR(k, -cap_area(R), 1e-8) << R;
    }
    CatalogEntry h = build("helicoid");
    double band = cap_area(std::exp(2.0)) - cap_area(std::exp(-2.0));
    EXPECT_NEAR(numeric_total_curvature(h.data, h.window), -band, 1e-8);
}

TEST(TotalCurvature, NumericIsMonotoneAndBounded) {
    CatalogEntry e = build("mobius");
    double previous = 0.0;
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
        double k = numeric_total_curvature(e.data, Window::annulus(0.0, std::exp(-s), std::exp(s)), 96, 96);
        EXPECT_LE(k, previous + 1e-9) << s;
        EXPECT_GE(k, -12 * pi - 1e-6) << s;
        previous = k;
    }
    EXPECT_NEAR(previous, -12 * pi, 0.05);
}

TEST(TotalCurvature, ConstantGaussMapIsFlat) {
    CatalogEntry e = build("paraboloid");
    EXPECT_EQ(numeric_total_curvature(e.data, e.window), 0.0);
}

TEST(Ends, CatenoidEndsAreRegularEmbedded) {
    CatalogEntry e = build("catenoid");
    for (const End& end : {kZeroEnd, kInfinity}) {
        EndRegularity r = end_regularity(e.data, end);
        EXPECT_EQ(r.regularity, Regularity::regular) << end.label();
        ASSERT_TRUE(r.pole_order.has_value());
        EXPECT_EQ(*r.pole_order, 2) << end.label();
        EXPECT_TRUE(r.embedded_candidate) << end.label();
    }
}

TEST(Ends, EnneperEndHasHigherOrderPole) {
    EndRegularity r = end_regularity(build("enneper").data, kInfinity);
    EXPECT_EQ(r.regularity, Regularity::regular);
    ASSERT_TRUE(r.pole_order.has_value());
    EXPECT_EQ(*r.pole_order, 4);
    EXPECT_FALSE(r.embedded_candidate);
}

TEST(Ends, HelicoidEndIsIrregular) {
    EndRegularity r = end_regularity(build("helicoid").data, kInfinity);
    EXPECT_EQ(r.regularity, Regularity::irregular);
    EXPECT_FALSE(r.pole_order.has_value());
}

TEST(Accumulation, CatalogExamples) {
    EXPECT_EQ(accumulation_probe(build("enneper").data, kInfinity).verdict, Accumulation::accumulates);
    CatalogEntry cat = build("catenoid");
    EXPECT_EQ(accumulation_probe(cat.data, kZeroEnd).verdict, Accumulation::bounded_away);
    EXPECT_EQ(accumulation_probe(cat.data, kInfinity).verdict, Accumulation::bounded_away);
    EXPECT_EQ(accumulation_probe(build("helicoid").data, kInfinity).verdict, Accumulation::accumulates);
    CatalogEntry mob = build("mobius");
    EXPECT_EQ(accumulation_probe(mob.data, kZeroEnd).verdict, Accumulation::accumulates);
    EXPECT_EQ(accumulation_probe(mob.data, kInfinity).verdict, Accumulation::accumulates);
}

TEST(Accumulation, MiyaokaSatoDependsOnConstant) {
    // Measured behaviour (see the decisions record): with c1 = 0 both ends
    // accumulate; with Re c1 ≠ 0 the end z = 0 stays clear.
    CatalogEntry plain = build("miyaoka_sato");
    EXPECT_EQ(accumulation_probe(plain.data, kZeroEnd).verdict, Accumulation::accumulates);
    EXPECT_EQ(accumulation_probe(plain.data, kInfinity).verdict, Accumulation::accumulates);
    CatalogEntry shifted = build("miyaoka_sato", {{"c1", cplx(1, 0.3)}});
    EXPECT_EQ(accumulation_probe(shifted.data, kZeroEnd).verdict, Accumulation::bounded_away);
    EXPECT_EQ(accumulation_probe(shifted.data, kInfinity).verdict, Accumulation::accumulates);
}

TEST(Osserman, InequalityCases) {
    EXPECT_EQ(osserman_check(1, 0, 2).verdict, OssermanVerdict::equality);
    EXPECT_EQ(osserman_check(1, 0, 1).verdict, OssermanVerdict::strict);
    EXPECT_EQ(osserman_check(0, 0, 1).verdict, OssermanVerdict::equality);
    EXPECT_EQ(osserman_check(1, 0, 3).verdict, OssermanVerdict::violated);
    EXPECT_EQ(osserman_check(std::nullopt, 0, 1).verdict, OssermanVerdict::inapplicable);
    OssermanCheck m = osserman_check(3, 0, 2);
    EXPECT_EQ(m.lhs, 6);
    EXPECT_EQ(m.rhs, 2);
    EXPECT_EQ(m.verdict, OssermanVerdict::strict);
}

TEST(GlobalReport, CatalogNarratives) {
    struct Case {
        const char* name;
        OssermanVerdict osserman;
        CompletenessClass completeness;
    };
    for (const auto& c : {Case{"paraboloid", OssermanVerdict::equality, CompletenessClass::complete_regular},
                          Case{"enneper", OssermanVerdict::strict, CompletenessClass::weakly_complete_only},
                          Case{"catenoid", OssermanVerdict::equality, CompletenessClass::complete_regular},
                          Case{"helicoid", OssermanVerdict::inapplicable, CompletenessClass::weakly_complete_only},
                          Case{"mobius", OssermanVerdict::strict, CompletenessClass::weakly_complete_only},
                          Case{"type220", OssermanVerdict::inapplicable, CompletenessClass::complete_regular}}) {
        GlobalReport r = global_report(build(c.name).data);
        EXPECT_EQ(r.osserman.verdict, c.osserman) << c.name;
        EXPECT_EQ(r.completeness, c.completeness) << c.name;
        EXPECT_TRUE(r.embedded_consistent) << c.name;
    }
}

TEST(GlobalReport, RandomAdmissibleConstants) {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        // Catenoid: the period condition forces Re c1 = Re c2 = 0.
        ParamTable cat{{"c1", cplx(0, u(rng))}, {"c2", cplx(0, u(rng))}, {"c3", cplx(u(rng), u(rng))}};
        EXPECT_EQ(global_report(build("catenoid", cat).data).completeness, CompletenessClass::complete_regular);
        ParamTable any{{"c1", cplx(u(rng), u(rng))}, {"c2", cplx(u(rng), u(rng))}, {"c3", cplx(u(rng), u(rng))}};
        EXPECT_EQ(global_report(build("enneper", any).data).completeness, CompletenessClass::weakly_complete_only);
        EXPECT_EQ(global_report(build("helicoid", any).data).completeness, CompletenessClass::weakly_complete_only);
    }
}

TEST(GlobalReport, WeakCompletenessFromRayLengths) {
    for (const auto& name : catalog_names()) {
        CatalogEntry e = build(name);
        for (const End& end : e.data.domain.ends()) EXPECT_TRUE(ray_test(e.data, end).divergent) << name << " " << end.label();
    }
}
