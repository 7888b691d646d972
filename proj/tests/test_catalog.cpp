#include <gtest/gtest.h>

#include "maxface/catalog.hpp"
#include "maxface/global.hpp"
#include "maxface/periods.hpp"
#include "support.hpp"

using namespace maxface;
using maxface::testing::max_diff;
using maxface::testing::sample_points;

TEST(Catalog, NamesAndSchemas) {
    auto names = catalog_names();
    EXPECT_EQ(names.size(), 7u);
    for (const auto& n : names) {
        auto schema = param_schema(n);
        EXPECT_GE(schema.size(), 3u) << n;
        EXPECT_NO_THROW(build(n)) << n;
        EXPECT_FALSE(fixtures(n).empty()) << n;
    }
    EXPECT_THROW(build("torus"), InadmissibleError);
}

TEST(Catalog, ParameterValidation) {
    EXPECT_THROW(build("enneper", {{"n", 3.0}}), InadmissibleError);
    EXPECT_THROW(build("miyaoka_sato", {{"n", 3.5}}), InadmissibleError);
    EXPECT_THROW(build("miyaoka_sato", {{"n", cplx(3, 1)}}), InadmissibleError);
    EXPECT_THROW(build("catenoid", {{"c1", std::numeric_limits<double>::infinity()}}), InadmissibleError);
}

TEST(Catalog, MiyaokaSatoAdmissibility) {
    try {
        build("miyaoka_sato", {{"n", 4.0}, {"m", 3.0}});
        FAIL() << "n = 2(m - 1) must be rejected";
    } catch (const InadmissibleError& e) {
        EXPECT_NE(std::string(e.what()).find("n != 2(m - 1)"), std::string::npos);
    }
    EXPECT_THROW(build("miyaoka_sato", {{"n", 2.0}, {"m", 3.0}}), InadmissibleError);
    EXPECT_THROW(build("miyaoka_sato", {{"m", 1.0}}), InadmissibleError);
    for (cplx a : {cplx(0), cplx(1), cplx(-1)}) EXPECT_THROW(build("miyaoka_sato", {{"a", a}}), InadmissibleError);
    EXPECT_NO_THROW(build("miyaoka_sato", {{"n", 5.0}, {"m", 3.0}}));
}

TEST(Catalog, MiyaokaSatoFigureParameters) {
    CatalogEntry e = build("miyaoka_sato", {{"n", 3.0}, {"m", 2.0}, {"a", std::polar(1.0, 7 * pi / 8)}});
    TotalCurvature tc = total_curvature(e.data);
    ASSERT_TRUE(tc.exact.has_value());
    EXPECT_NEAR(*tc.exact, -12 * pi, 1e-12);
    EXPECT_TRUE(check_periods(e.data).pass);
    EXPECT_EQ(accumulation_probe(e.data, End{false, 0.0}).verdict, Accumulation::accumulates);
}

TEST(Catalog, NullCurveEverywhere) {
    for (const auto& name : catalog_names()) {
        CatalogEntry e = build(name);
        double worst = 0;
        for (cplx z : sample_points(e, 100, 77)) {
            CVec3 v = eval3(e.data.dphi, z, context_at(e.data, z));
            double scale = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
            worst = std::max(worst, std::abs(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) / scale);
        }
        if (e.data.maxface)
            EXPECT_LT(worst, 1e-8) << name;
        else
            EXPECT_GT(worst, 1e-3) << name;
    }
}

TEST(Catalog, MaxfaceFlags) {
    for (const auto& name : catalog_names()) EXPECT_EQ(build(name).data.maxface, name != "type220") << name;
}

TEST(Catalog, FixturesDocumentPublishedFacts) {
    auto has = [](const std::string& name, const std::string& quantity, const std::string& expected) {
        for (const auto& f : fixtures(name))
            if (f.quantity == quantity) return f.expected == expected;
        return false;
    };
    EXPECT_TRUE(has("mobius", "residue(Phi x dPhi, 0)", "(2i, 0, -2i/3)"));
    EXPECT_TRUE(has("mobius", "total_curvature", "-12*pi"));
    EXPECT_TRUE(has("paraboloid", "singular_set", "empty"));
    EXPECT_TRUE(has("enneper", "singular_set_function", "S1"));
    EXPECT_TRUE(has("type220", "defaults", "a1=-2i, a2=2, b1=1, b2=i, c=0, k=1/2"));
}

TEST(Catalog, Type220Defaults) {
    CatalogEntry e = build("type220");
    EXPECT_EQ(e.params.at("a1"), cplx(0, -2));
    EXPECT_EQ(e.params.at("a2"), cplx(2));
    EXPECT_EQ(e.params.at("b1"), cplx(1));
    EXPECT_EQ(e.params.at("b2"), I);
    EXPECT_EQ(e.params.at("k"), cplx(0.5));
    for (const char* c : {"c1", "c2", "c3"}) EXPECT_EQ(e.params.at(c), cplx(0));
}

TEST(Catalog, Type220ContainsCatenoid) {
    CatalogEntry t = build("type220", {{"a1", -0.5}, {"b1", -0.5}, {"a2", 0.5 * I}, {"b2", -0.5 * I}, {"k", 1.0}});
    CatalogEntry c = build("catenoid");
    for (cplx z : sample_points(c, 50, 5)) {
        CVec3 a = eval3(t.data.dphi, z, context_at(t.data, z));
        CVec3 b = eval3(c.data.dphi, z, context_at(c.data, z));
        EXPECT_LT(max_diff(a, b), 1e-12) << z;
    }
    EXPECT_TRUE(t.data.maxface);
}

TEST(Catalog, Type220PeriodsMatchResidue) {
    // Re(2πi · residue) vanishes exactly when k is real.
    for (cplx k : {cplx(0.5), cplx(2.0), cplx(0.5, 0.2)}) {
        PeriodReport r = check_periods(build("type220", {{"k", k}}).data);
        ASSERT_EQ(r.loops.size(), 1u);
        EXPECT_NEAR(r.loops[0].residual_conormal, 2 * pi * std::abs(k.imag()), 1e-9) << k;
        EXPECT_EQ(r.pass, k.imag() == 0.0) << k;
    }
}

TEST(Catalog, DisplayedFunctionsExist) {
    for (const char* name : {"enneper", "catenoid", "helicoid", "miyaoka_sato"}) {
        auto f = displayed_singular_function(name);
        EXPECT_FALSE(f.formula.empty());
        EXPECT_TRUE(std::isfinite(f.f(cplx(0.6, 0.7)))) << name;
    }
    EXPECT_THROW(displayed_singular_function("paraboloid"), InadmissibleError);
}

TEST(Catalog, MobiusDefaultWindowIsPeriodic) {
    CatalogEntry e = build("mobius");
    EXPECT_TRUE(e.window.periodic_v());
    EXPECT_EQ(e.data.domain.punctures, std::vector<cplx>{0.0});
    EXPECT_EQ(e.data.domain.end_count(), 2);
}
