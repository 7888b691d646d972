#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "maxface/catalog.hpp"
#include "maxface/contour.hpp"
#include "maxface/expr.hpp"
#include "maxface/rational.hpp"

using namespace maxface;

namespace {

std::vector<cplx> random_points(int n, unsigned seed, double radius = 2.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < n) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) > 0.1 && std::abs(z - 1.0) > 0.1) out.push_back(z);
    }
    return out;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(ExprParse, RationalGaussMapEvaluates) {
    Expr g = parse_expr("z^2*(z+1)/(z-1)");
    cplx z(0.7, -1.3);
    EXPECT_LT(rel(eval(g, z), z * z * (z + 1.0) / (z - 1.0)), 1e-15);
    EXPECT_TRUE(is_rational_expr(g.get()));
    EXPECT_FALSE(has_branch_nodes(g.get()));
}

TEST(ExprParse, ZeroLiteralIsConstantZero) {
    Expr e = parse_expr("0");
    EXPECT_TRUE(e.is_zero());
    EXPECT_FALSE(depends_on_z(e));
}

TEST(ExprParse, ParameterBindings) {
    cplx a = std::polar(1.0, 7 * pi / 8);
    Expr g = parse_expr("(z^n-a)/(z^n-1)", {{"n", 3.0}, {"a", a}});
    cplx z = 1.1;
    cplx expect = (std::pow(z, 3) - a) / (std::pow(z, 3) - 1.0);
    EXPECT_LT(rel(eval(g, z), expect), 1e-14);
}

TEST(ExprParse, Precedence) {
    EXPECT_LT(rel(eval(parse_expr("-2^2"), 0.0), -4.0), 1e-15);
    EXPECT_LT(rel(eval(parse_expr("2^-1"), 0.0), 0.5), 1e-15);
    EXPECT_LT(rel(eval(parse_expr("1-2-3"), 0.0), -4.0), 1e-15);
    EXPECT_LT(rel(eval(parse_expr("8/2/2"), 0.0), 2.0), 1e-15);
    EXPECT_LT(rel(eval(parse_expr("2*3^2"), 0.0), 18.0), 1e-15);
    EXPECT_LT(rel(eval(parse_expr("1.5e2 + .5"), 0.0), 150.5), 1e-15);
}

TEST(ExprParse, ErrorsCarryOffsets) {
    try {
        parse_expr("z + * 2");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
    try {
        parse_expr("z + q");
        FAIL() << "expected UnknownIdentifier";
    } catch (const UnknownIdentifier& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_EQ(e.name(), "q");
    }
    EXPECT_THROW(parse_expr("z^z"), ParseError);
    EXPECT_THROW(parse_expr("z^(1/2)"), ParseError);
    EXPECT_THROW(parse_expr("(z+1"), ParseError);
    EXPECT_THROW(parse_expr(""), ParseError);
    EXPECT_THROW(parse_expr("z/0"), ParseError);
    EXPECT_THROW(parse_expr("e"), UnknownIdentifier);
    EXPECT_THROW(parse_expr("root(z, 0)"), ParseError);
}

TEST(ExprEval, Constants) {
    EXPECT_LT(std::abs(eval(parse_expr("exp(i*pi)"), 0.0) + 1.0), 1e-15);
    EXPECT_LT(std::abs(eval(parse_expr("log(z)"), std::exp(1.0)) - 1.0), 1e-15);
    EXPECT_LT(std::abs(eval(parse_expr("sqrt(z)"), -4.0) - cplx(0, 2)), 1e-15);
}

TEST(ExprEval, PoleRaises) {
    EXPECT_THROW(eval(parse_expr("1/z"), 0.0), PoleError);
    EXPECT_THROW(eval(parse_expr("log(z)"), 0.0), PoleError);
    EXPECT_THROW(eval(parse_expr("z^-2"), 0.0), PoleError);
}

TEST(ExprEval, LogFollowsTrackedBranch) {
    Expr e = parse_expr("2*log(z)");
    std::vector<Expr> tracked{e};
    BranchContext ctx(1.0, {0.0});
    const int steps = 64;
    for (int k = 1; k <= steps; ++k) ctx.move_to(std::polar(1.0, 2 * pi * k / steps), tracked);
    // Independent value: the loop integral of 2/z.
    BranchContext qctx(1.0, {0.0});
    cplx loop = integrate_path<cplx>([](cplx z, const BranchContext&) { return 2.0 / z; }, Path::circle(0.0, 1.0),
                                     qctx);
    EXPECT_LT(std::abs(eval(e, 1.0, ctx) - loop), 1e-10);
    EXPECT_LT(std::abs(eval(e, 1.0, ctx) - cplx(0, 4 * pi)), 1e-12);
    EXPECT_EQ(ctx.windings(), std::vector<int>{1});
}

TEST(ExprEval, EqualWindingsGiveEqualValues) {
    Expr e = parse_expr("log(z) + sqrt(z)");
    std::vector<Expr> tracked{e};
    cplx target(-1.0, 0.2);
    BranchContext direct(1.0, {0.0});
    for (int k = 1; k <= 40; ++k) direct.move_to(1.0 + (target - 1.0) * (k / 40.0), tracked);
    // A detour through the upper half plane that never encloses the puncture.
    BranchContext detour(1.0, {0.0});
    for (cplx w : {cplx(1, 1), cplx(0, 2), cplx(-1.5, 1.5), cplx(-1.5, 0.5), target}) {
        cplx from = detour.current();
        for (int k = 1; k <= 40; ++k) detour.move_to(from + (w - from) * (k / 40.0), tracked);
    }
    EXPECT_EQ(direct.windings(), detour.windings());
    EXPECT_LT(std::abs(eval(e, target, direct) - eval(e, target, detour)), 1e-14);
}

TEST(ExprDerivative, KnownDerivatives) {
    EXPECT_TRUE(structurally_equal(differentiate(parse_expr("z^3/3")), parse_expr("z^2")))
        << to_string(differentiate(parse_expr("z^3/3")));
    Expr dlog = differentiate(parse_expr("log(z)"));
    for (cplx z : random_points(20, 1)) EXPECT_LT(rel(eval(dlog, z), 1.0 / z), 1e-15);
}

TEST(ExprDerivative, MatchesCentralDifferences) {
    cplx z(2, 1);
    const double h = 1e-5;
    for (const char* src : {"z^2*(z+1)/(z-1)", "exp(z)*sin(z)", "cosh(z)/z", "log(z)*z^3", "root(z^2+1, 3)"}) {
        Expr e = parse_expr(src);
        Expr d = differentiate(e);
        cplx fd = (eval(e, z + h) - eval(e, z - h)) / (2 * h);
        EXPECT_LT(rel(eval(d, z), fd), 1e-8) << src;
    }
}

TEST(ExprProperties, Linearity) {
    Expr f = parse_expr("z^2*(z+1)/(z-1)");
    Expr g = parse_expr("exp(z)*cos(z)");
    cplx a(0.3, -1.2), b(-2.0, 0.5);
    Expr lhs = differentiate(a * f + b * g);
    Expr df = differentiate(f), dg = differentiate(g);
    for (cplx z : random_points(100, 2)) {
        cplx rhs = a * eval(df, z) + b * eval(dg, z);
        EXPECT_LT(rel(eval(lhs, z), rhs), 1e-10);
    }
}

TEST(ExprProperties, ProductRule) {
    Expr f = parse_expr("z^3 - 2*z");
    Expr g = parse_expr("sinh(z)/(z+2)");
    Expr lhs = differentiate(f * g);
    Expr df = differentiate(f), dg = differentiate(g);
    for (cplx z : random_points(100, 3)) {
        cplx rhs = eval(df, z) * eval(g, z) + eval(f, z) * eval(dg, z);
        EXPECT_LT(std::abs(eval(lhs, z) - rhs) / std::max(1.0, std::abs(rhs)), 1e-10);
    }
}

TEST(ExprProperties, PrintReparseRoundTrip) {
    std::vector<std::pair<Expr, ParamTable>> corpus;
    ParamTable bound{{"a", cplx(0.2, 0.7)}};
    for (const char* src : {"z^2*(z+1)/(z-1)", "i*(z-1)^2/z^4", "-(z^2)", "2^-1", "exp(-z)*i", "sqrt(z)*root(z, 3)",
                            "1.25e-3*z - 0.5", "(z^3-a)/(z^3-1)"})
        corpus.emplace_back(parse_expr(src, bound), bound);
    for (const auto& name : catalog_names()) {
        CatalogEntry e = build(name);
        corpus.emplace_back(e.data.g, e.params);
        corpus.emplace_back(e.data.omega, e.params);
        for (int k = 0; k < 3; ++k) corpus.emplace_back(e.data.dphi[k], e.params);
    }
    for (const auto& [e, params] : corpus) {
        std::string text = to_string(e);
        Expr back = parse_expr(text, params);
        EXPECT_TRUE(structurally_equal(parse_expr(to_string(back), params), back)) << text;
        cplx z(0.37, 0.81);
        EXPECT_LT(rel(eval(back, z), eval(e, z)), 1e-12) << text;
    }
}

TEST(ExprRational, ExactDegrees) {
    EXPECT_EQ(rational_degree(parse_expr("z^2*(z+1)/(z-1)")), 3);
    EXPECT_EQ(rational_degree(parse_expr("(z^3-2)/(z^3-1)")), 3);
    EXPECT_EQ(rational_degree(parse_expr("z")), 1);
    EXPECT_FALSE(rational_degree(parse_expr("exp(z)")).has_value());
    Expr q = parse_expr("(z^2-1)/(z-1)");
    auto rf = to_rational(q);
    ASSERT_TRUE(rf.has_value());
    EXPECT_EQ(cancel_common_roots(*rf).num.degree(), 1);
}

TEST(ExprConcurrency, SharedExpressionEvaluatesConsistently) {
    Expr e = parse_expr("exp(z)*z^2*(z+1)/(z-1)");
    auto pts = random_points(200, 4);
    std::vector<cplx> serial;
    for (cplx z : pts) serial.push_back(eval(e, z));
    std::vector<std::vector<cplx>> results(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            for (cplx z : pts) results[t].push_back(eval(e, z));
        });
    for (auto& th : threads) th.join();
    for (const auto& r : results) EXPECT_EQ(r, serial);
}
