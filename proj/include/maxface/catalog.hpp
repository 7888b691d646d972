#pragma once

// Closed-form builders for the example families, with parameter schemas,
// admissibility checks and golden fixtures.
//
// Convention: every entry writes Φ = (particular primitive) + c, with the
// integration constants c added outside the factor 1/2.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "log_laurent.hpp"
#include "weierstrass.hpp"
#include "window.hpp"

namespace maxface {

struct ParamSpec {
    std::string name;
    bool integer = false;
    cplx default_value{};
    std::string description;
};

struct Fixture {
    std::string quantity;
    std::string expected;
    std::string citation;
};

// A displayed singular-set function and its formula text.
struct SingularSetFunction {
    std::string formula;
    std::function<double(cplx)> f;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    WeierstrassData data;
    ParamTable params;   // resolved parameter values
    Window window;       // default sampling window
    std::vector<Fixture> fixtures;
};

inline std::vector<std::string> catalog_names() {
    return {"paraboloid", "enneper", "catenoid", "helicoid", "mobius", "miyaoka_sato", "type220"};
}

inline std::vector<ParamSpec> param_schema(const std::string& name) {
    std::vector<ParamSpec> c{{"c1", false, 0.0, "integration constant, first component"},
                             {"c2", false, 0.0, "integration constant, second component"},
                             {"c3", false, 0.0, "integration constant, third component"}};
    if (name == "paraboloid") {
        c[2].default_value = 0.5;
        c[2].description = "integration constant; 1/2 makes N3 = 1 and the identifier constant -1";
        return c;
    }
    if (name == "enneper" || name == "catenoid" || name == "helicoid" || name == "mobius") return c;
    if (name == "miyaoka_sato") {
        std::vector<ParamSpec> p{{"n", true, 3.0, "degree of the Gauss map"},
                                 {"m", true, 2.0, "pole order of the height differential at 0"},
                                 {"a", false, std::polar(1.0, 7 * pi / 8), "omitted value of g besides 1"}};
        p.insert(p.end(), c.begin(), c.end());
        return p;
    }
    if (name == "type220") {
        std::vector<ParamSpec> p{{"a1", false, cplx(0, -2), "coefficient of z in the first component"},
                                 {"a2", false, 2.0, "coefficient of z in the second component"},
                                 {"b1", false, 1.0, "coefficient of 1/z in the first component"},
                                 {"b2", false, I, "coefficient of 1/z in the second component"},
                                 {"k", false, 0.5, "coefficient of log z in the third component"}};
        p.insert(p.end(), c.begin(), c.end());
        return p;
    }
    throw InadmissibleError("unknown catalog entry '" + name + "'");
}

namespace detail {

inline ParamTable resolve_params(const std::string& name, const ParamTable& given) {
    auto schema = param_schema(name);
    ParamTable out;
    for (const auto& p : schema) out[p.name] = p.default_value;
    for (const auto& [key, value] : given) {
        auto it = std::find_if(schema.begin(), schema.end(), [&](const ParamSpec& p) { return p.name == key; });
        if (it == schema.end()) throw InadmissibleError("entry '" + name + "' has no parameter '" + key + "'");
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
            throw InadmissibleError("parameter '" + key + "' is not finite");
        if (it->integer && (value.imag() != 0.0 || value.real() != std::round(value.real())))
            throw InadmissibleError("parameter '" + key + "' must be an integer");
        out[key] = value;
    }
    return out;
}

inline Expr3 to_exprs(const LogLaurent3& p, const Expr& logz) {
    return {p[0].to_expr(logz), p[1].to_expr(logz), p[2].to_expr(logz)};
}

// Exact ∫ Φ × Φ' for Φ in log-Laurent form.
inline Expr3 cross_primitive(const LogLaurent3& phi, const Expr& logz) {
    LogLaurent3 dphi{phi[0].derivative(), phi[1].derivative(), phi[2].derivative()};
    LogLaurent3 integrand = cross(phi, dphi);
    return {integrand[0].integral().to_expr(logz), integrand[1].integral().to_expr(logz),
            integrand[2].integral().to_expr(logz)};
}

inline CVec3 constants(const ParamTable& p) { return {p.at("c1"), p.at("c2"), p.at("c3")}; }

inline LogLaurent3 add_constants(LogLaurent3 phi, const CVec3& c) {
    for (int k = 0; k < 3; ++k) phi[k] += LogLaurent::constant(c[k]);
    return phi;
}

inline Expr P(const ParamTable& p, const std::string& key) { return Expr::param(key, p.at(key)); }

}  // namespace detail

inline CatalogEntry build(const std::string& name, const ParamTable& given = {}) {
    using detail::add_constants;
    using LL = LogLaurent;
    CatalogEntry e;
    e.name = name;
    e.params = detail::resolve_params(name, given);
    const ParamTable& p = e.params;
    CVec3 c = detail::constants(p);
    Expr z = Expr::var();
    Expr logz = log(z);
    Expr one = Expr::integer(1);

    auto finish = [&](Expr g, Expr omega, const LogLaurent3& phi, DomainSpec dom) {
        Expr3 phi_e = detail::to_exprs(phi, logz);
        Expr3 prim = detail::cross_primitive(phi, logz);
        e.data = make_weierstrass(std::move(g), std::move(omega), c, std::move(dom), phi_e, prim);
    };

    if (name == "paraboloid") {
        e.description = "elliptic paraboloid: g = 0, omega = dz";
        LogLaurent3 phi{LL::term(0.5, 1), LL::term(0.5 * I, 1), LL()};
        finish(Expr::integer(0), one, add_constants(phi, c), DomainSpec{});
        e.window = Window::rect(-1, 1, -1, 1);
    } else if (name == "enneper") {
        e.description = "Enneper type: g = z, omega = dz";
        LogLaurent3 phi{LL::term(0.5, 1) + LL::term(-1.0 / 6, 3), LL::term(0.5 * I, 1) + LL::term(I / 6.0, 3),
                        LL::term(0.5, 2)};
        finish(z, one, add_constants(phi, c), DomainSpec{});
        e.window = Window::rect(-2, 2, -2, 2);
    } else if (name == "catenoid") {
        e.description = "catenoid type: g = z, omega = dz/z^2 on C minus 0";
        LogLaurent3 phi{LL::term(-0.5, 1) + LL::term(-0.5, -1), LL::term(0.5 * I, 1) + LL::term(-0.5 * I, -1),
                        LL::term(1.0, 0, 1)};
        DomainSpec dom;
        dom.punctures = {0.0};
        dom.basepoint = 1.0;
        finish(z, pow(z, -2), add_constants(phi, c), dom);
        e.window = Window::annulus(0.0, std::exp(-2.0), std::exp(2.0));
    } else if (name == "helicoid") {
        e.description = "helicoid type: g = exp(z), omega = i exp(-z) dz";
        Expr iC = Expr::constant(I);
        Expr3 P{-iC * cosh(z), -sinh(z), iC * z};
        Expr3 cexpr{Expr::constant(c[0]), Expr::constant(c[1]), Expr::constant(c[2])};
        Expr3 phi{P[0] + cexpr[0], P[1] + cexpr[1], P[2] + cexpr[2]};
        // ∫ P × P' = (i(z sinh z − 2 cosh z), z cosh z − 2 sinh z, iz); the constants contribute c × P.
        Expr3 cP = cross(cexpr, P);
        Expr3 prim{iC * (z * sinh(z) - Expr::integer(2) * cosh(z)) + cP[0],
                   z * cosh(z) - Expr::integer(2) * sinh(z) + cP[1], iC * z + cP[2]};
        e.data = make_weierstrass(exp(z), iC * exp(-z), c, DomainSpec{}, phi, prim);
        e.window = Window::rect(-2, 2, -pi, pi);
    } else if (name == "mobius") {
        e.description = "from the minimal Moebius strip: g = z^2(z+1)/(z-1), omega = i(z-1)^2/z^4 dz";
        LogLaurent s1 = LL::term(1, 1) + LL::term(1, -1) + LL::term(1, 2) + LL::term(-1, -2) +
                        LL::term(1.0 / 3, 3) + LL::term(1.0 / 3, -3);
        LogLaurent s2 = LL::term(-1, 1) + LL::term(1, -1) + LL::term(-1, 2) + LL::term(-1, -2) +
                        LL::term(-1.0 / 3, 3) + LL::term(1.0 / 3, -3);
        LogLaurent3 phi{(-0.5 * I) * s1, cplx(0.5) * s2, LL::term(I, 1) + LL::term(I, -1)};
        DomainSpec dom;
        dom.punctures = {0.0};
        dom.basepoint = 1.0;
        Expr g = pow(z, 2) * (z + one) / (z - one);
        Expr omega = Expr::constant(I) * pow(z - one, 2) / pow(z, 4);
        finish(g, omega, add_constants(phi, c), dom);
        e.window = Window::annulus(0.0, 0.3, 3.0);
    } else if (name == "miyaoka_sato") {
        int n = static_cast<int>(p.at("n").real());
        int m = static_cast<int>(p.at("m").real());
        cplx a = p.at("a");
        if (m < 2 || n < 2) throw InadmissibleError("miyaoka_sato: n and m must be integers >= 2");
        if (!(n > m - 1)) throw InadmissibleError("miyaoka_sato: requires n > m - 1");
        if (n == 2 * (m - 1)) throw InadmissibleError("miyaoka_sato: requires n != 2(m - 1)");
        if (std::abs(a) < 1e-14 || std::abs(a - 1.0) < 1e-14 || std::abs(a + 1.0) < 1e-14)
            throw InadmissibleError("miyaoka_sato: requires a not in {0, 1, -1}");
        e.description = "Miyaoka-Sato type: g = (z^n - a)/(z^n - 1), omega = (z^n - 1)^2/z^m dz";
        double q1 = 1 - m, q2 = n - m + 1, q3 = 2 * n - m + 1;
        LogLaurent3 phi{
            LL::term(0.5 * (a * a - 1.0) / double(m - 1), 1 - m) + LL::term((a - 1.0) / q2, n - m + 1),
            LL::term(0.5 * I * (a * a + 1.0) / q1, 1 - m) + LL::term(-I * (a + 1.0) / q2, n - m + 1) +
                LL::term(I / q3, 2 * n - m + 1),
            LL::term(a / q1, 1 - m) + LL::term(-(a + 1.0) / q2, n - m + 1) + LL::term(1.0 / q3, 2 * n - m + 1)};
        DomainSpec dom;
        dom.punctures = {0.0};
        dom.basepoint = std::polar(1.0, pi / n);
        Expr zn = pow(z, n);
        Expr A = detail::P(p, "a");
        Expr g = (zn - A) / (zn - one);
        Expr omega = pow(zn - one, 2) / pow(z, m);
        finish(g, omega, add_constants(phi, c), dom);
        e.window = Window::annulus(0.0, 0.4, 2.0);
    } else if (name == "type220") {
        e.description = "220-type affine maximal map given by Phi = (a1 z + b1/z, a2 z + b2/z, k log z) + c";
        LogLaurent3 phi{LL::term(p.at("a1"), 1) + LL::term(p.at("b1"), -1),
                        LL::term(p.at("a2"), 1) + LL::term(p.at("b2"), -1), LL::term(p.at("k"), 0, 1)};
        phi = add_constants(phi, c);
        DomainSpec dom;
        dom.punctures = {0.0};
        dom.basepoint = 1.0;
        Expr3 phi_e = detail::to_exprs(phi, logz);
        e.data = make_from_phi(phi_e, dom, c, detail::cross_primitive(phi, logz));
        e.window = Window::annulus(0.0, 0.3, 3.0);
    } else {
        throw InadmissibleError("unknown catalog entry '" + name + "'");
    }
    return e;
}

inline std::vector<Fixture> fixtures(const std::string& name) {
    if (name == "paraboloid")
        return {{"singular_set", "empty", "elliptic paraboloid example: globally regular for c3 = 1/2"},
                {"total_curvature", "0", "elliptic paraboloid example: g constant"},
                {"completeness", "complete_regular", "elliptic paraboloid example"}};
    if (name == "enneper")
        return {{"total_curvature", "-4*pi", "Enneper-type example: finite total curvature -4π"},
                {"singular_set_function", "S1", "Enneper-type example: displayed S1"},
                {"singular_set", "Re z = ±Im z for c = 0", "Enneper-type example: singular set for c = 0"},
                {"classification", "z=0 degenerate, S∖{0} cuspidal edges",
                 "Enneper-type example: unique degenerate point at 0"},
                {"accumulation@inf", "accumulates", "Enneper-type example: accumulates at the end"},
                {"osserman", "strict (2 > 0)", "Osserman-type inequality, one end, genus 0"},
                {"completeness", "weakly_complete_only", "Enneper-type example: weakly complete, incomplete"}};
    if (name == "catenoid")
        return {{"period_condition", "pass iff Re c1 = Re c2 = 0", "catenoid-type example: well-definedness"},
                {"total_curvature", "-4*pi", "catenoid-type example: total curvature -4π"},
                {"singular_set_function", "S2", "catenoid-type example: displayed S2"},
                {"profile", "(4((s+Re c3) sinh s - cosh s), sinh 2s + 2s)", "catenoid-type example: profile curve"},
                {"accumulation@0", "bounded_away", "catenoid-type example: ends are not accumulation points"},
                {"accumulation@inf", "bounded_away", "catenoid-type example: ends are not accumulation points"},
                {"osserman", "equality (2 = 2)", "Osserman-type inequality, two embedded ends"},
                {"completeness", "complete_regular", "catenoid-type example: complete regular"}};
    if (name == "helicoid")
        return {{"total_curvature", "undefined (infinite)", "helicoid-type example: infinite total curvature"},
                {"singular_set_function", "S3", "helicoid-type example: displayed S3"},
                {"end_regularity@inf", "irregular", "helicoid-type example: essential singularity at the end"},
                {"accumulation@inf", "accumulates", "helicoid-type example: singular set accumulates"},
                {"completeness", "weakly_complete_only", "helicoid-type example: always incomplete"}};
    if (name == "mobius")
        return {{"residue(Phi x dPhi, 0)", "(2i, 0, -2i/3)", "Moebius-strip example: residue of Φ×dΦ"},
                {"total_curvature", "-12*pi", "Moebius-strip example: total curvature -12π"},
                {"accumulation@0", "accumulates", "Moebius-strip example: accumulates at both ends"},
                {"accumulation@inf", "accumulates", "Moebius-strip example: accumulates at both ends"},
                {"completeness", "weakly_complete_only", "Moebius-strip example: weakly complete, incomplete"}};
    if (name == "miyaoka_sato")
        return {{"residue(Phi x dPhi, 0)", "(0, 0, 0)", "Miyaoka-Sato example: residue vanishes"},
                {"total_curvature", "-4*n*pi", "Miyaoka-Sato example: total curvature -4nπ"},
                {"singular_set_function", "S5", "Miyaoka-Sato example: displayed S5"},
                {"accumulation@0", "accumulates (any parameters)", "Miyaoka-Sato example: claim for z = 0"},
                {"accumulation@inf", "bounded_away when Re c1 != 0", "Miyaoka-Sato example: claim for z = ∞"},
                {"admissibility", "n > m - 1 >= 1, n != 2(m - 1), a not in {0, 1, -1}",
                 "Miyaoka-Sato example: parameter constraints (figure uses n = 3, m = 2)"}};
    if (name == "type220")
        return {{"residue(dPhi, 0)[2]", "k", "220-type example: k log z in the third component"},
                {"defaults", "a1=-2i, a2=2, b1=1, b2=i, c=0, k=1/2", "220-type example: figure parameters"},
                {"catenoid_member", "a1=b1=-1/2, a2=i/2, b2=-i/2, k=1 gives the catenoid type",
                 "catenoid-type example: contained in the 220 family"}};
    throw InadmissibleError("unknown catalog entry '" + name + "'");
}

// Singular-set functions exactly as displayed for the examples (a_j = Re c_j).
inline SingularSetFunction displayed_singular_function(const std::string& name, const ParamTable& given = {}) {
    ParamTable p = detail::resolve_params(name, given);
    double a1 = p.at("c1").real(), a2 = p.at("c2").real(), a3 = p.at("c3").real();
    cplx c1 = p.at("c1"), c2 = p.at("c2"), c3 = p.at("c3");
    if (name == "enneper")
        return {"4 Re z Re(c1 - z(z^2-3)/6) - 4 Im z Im(z(z^2+3)/6 - i c2) + 2(|z|^2-1) Re(c3 + z^2/2)",
                [=](cplx z) {
                    return 4 * z.real() * (c1 - z * (z * z - 3.0) / 6.0).real() -
                           4 * z.imag() * (z * (z * z + 3.0) / 6.0 - I * c2).imag() +
                           2 * (std::norm(z) - 1) * (c3 + z * z / 2.0).real();
                }};
    if (name == "catenoid")
        return {"(|z|^2-1)(Re c3 + 2 log|z|) - |z|^2 - 1", [=](cplx z) {
                    double r2 = std::norm(z);
                    return (r2 - 1) * (a3 + 2 * std::log(std::abs(z))) - r2 - 1;
                }};
    if (name == "helicoid")
        return {"(e^{2 Re z} - 1)(Re c3 - Im z) + 2 Re((Re c1 - i Re c2) e^z)", [=](cplx z) {
                    return (std::exp(2 * z.real()) - 1) * (a3 - z.imag()) + 2 * ((a1 - I * a2) * std::exp(z)).real();
                }};
    if (name == "miyaoka_sato") {
        int n = static_cast<int>(p.at("n").real()), m = static_cast<int>(p.at("m").real());
        cplx a = p.at("a");
        return {"Re g (a1 + Re X1) + Im g (a2 + Im X2) + (|g|^2-1)(a3 + Re X3)", [=](cplx z) {
                    cplx zn = std::pow(z, n);
                    cplx g = (zn - a) / (zn - 1.0);
                    cplx x1 = (a * a - 1.0) / double(m - 1) * std::pow(z, 1 - m) +
                              2.0 * (a - 1.0) / double(n - m + 1) * std::pow(z, n - m + 1);
                    cplx x2 = (a * a + 1.0) / double(1 - m) * std::pow(z, 1 - m) -
                              2.0 * (a + 1.0) / double(n - m + 1) * std::pow(z, n - m + 1) +
                              2.0 / double(2 * n - m + 1) * std::pow(z, 2 * n - m + 1);
                    cplx x3 = a / double(1 - m) * std::pow(z, 1 - m) -
                              (a + 1.0) / double(n - m + 1) * std::pow(z, n - m + 1) +
                              1.0 / double(2 * n - m + 1) * std::pow(z, 2 * n - m + 1);
                    return g.real() * (a1 + x1.real()) + g.imag() * (a2 + x2.imag()) +
                           (std::norm(g) - 1) * (a3 + x3.real());
                }};
    }
    throw InadmissibleError("no displayed singular-set function for '" + name + "'");
}

// Forms re-derived from N and ν for the two entries whose displayed functions
// do not match the identifier; each equals Λ times a positive factor.
inline SingularSetFunction rederived_singular_function(const std::string& name, const ParamTable& given = {}) {
    ParamTable p = detail::resolve_params(name, given);
    double a1 = p.at("c1").real(), a2 = p.at("c2").real(), a3 = p.at("c3").real();
    if (name == "catenoid")
        return {"(|z|^2-1)(Re c3 + log|z|) - |z|^2 - 1  (Re c1 = Re c2 = 0)", [=](cplx z) {
                    double r2 = std::norm(z);
                    return (r2 - 1) * (a3 + std::log(std::abs(z))) - r2 - 1;
                }};
    if (name == "miyaoka_sato") {
        int n = static_cast<int>(p.at("n").real()), m = static_cast<int>(p.at("m").real());
        cplx a = p.at("a");
        return {"Re g (2 a1 + Re X1) + Im g (2 a2 - Im X2) + (|g|^2-1)(a3 + Re X3)", [=](cplx z) {
                    cplx zn = std::pow(z, n);
                    cplx g = (zn - a) / (zn - 1.0);
                    cplx x1 = (a * a - 1.0) / double(m - 1) * std::pow(z, 1 - m) +
                              2.0 * (a - 1.0) / double(n - m + 1) * std::pow(z, n - m + 1);
                    cplx x2 = (a * a + 1.0) / double(1 - m) * std::pow(z, 1 - m) -
                              2.0 * (a + 1.0) / double(n - m + 1) * std::pow(z, n - m + 1) +
                              2.0 / double(2 * n - m + 1) * std::pow(z, 2 * n - m + 1);
                    cplx x3 = a / double(1 - m) * std::pow(z, 1 - m) -
                              (a + 1.0) / double(n - m + 1) * std::pow(z, n - m + 1) +
                              1.0 / double(2 * n - m + 1) * std::pow(z, 2 * n - m + 1);
                    return g.real() * (2 * a1 + x1.real()) + g.imag() * (2 * a2 - x2.imag()) +
                           (std::norm(g) - 1) * (a3 + x3.real());
                }};
    }
    return displayed_singular_function(name, given);
}

}  // namespace maxface
