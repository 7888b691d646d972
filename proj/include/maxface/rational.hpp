#pragma once

// Polynomial and rational-function view of rational expressions: used for
// deg(g) and for pole/zero order checks on Weierstrass data.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "expr.hpp"

namespace maxface {

// Coefficients in ascending order of degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> c) : c_(std::move(c)) { trim(); }
    static Poly constant(cplx v) { return Poly({v}); }
    static Poly monomial(int k, cplx v = 1.0) {
        std::vector<cplx> c(static_cast<std::size_t>(k) + 1, 0.0);
        c.back() = v;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx(0.0); }
    cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        std::vector<cplx> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<cplx> c = a.c_;
        for (auto& x : c) x = -x;
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(cplx s, const Poly& a) {
        std::vector<cplx> c = a.c_;
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
    }
    std::vector<cplx> c_;
};

inline Poly pow(const Poly& p, int k) {
    Poly r = Poly::constant(1.0);
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

// Simultaneous root iteration (Aberth–Ehrlich). Returns degree() roots.
inline std::vector<cplx> roots(const Poly& p) {
    int n = p.degree();
    if (n <= 0) return {};
    std::vector<cplx> monic(p.coeffs());
    cplx lead = monic.back();
    for (auto& x : monic) x /= lead;
    Poly q(monic);
    Poly dq = q.derivative();
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(monic[k]), 1.0 / (n - k)));
    radius = std::max(radius, 1e-3);
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2 * pi * k / n + 0.4);
    for (int iter = 0; iter < 500; ++iter) {
        double change = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx f = q(z[k]);
            if (f == cplx(0.0)) continue;
            cplx ratio = f / dq(z[k]);
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k && z[j] != z[k]) sum += 1.0 / (z[k] - z[j]);
            cplx step = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = 1e-8 * (1.0 + std::abs(z[k]));
            z[k] -= step;
            change = std::max(change, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (change < 1e-15) break;
    }
    return z;
}

// Group roots that coincide within tol into (value, multiplicity).
inline std::vector<std::pair<cplx, int>> cluster_roots(const std::vector<cplx>& r, double tol = 1e-5) {
    std::vector<std::pair<cplx, int>> out;
    std::vector<bool> used(r.size(), false);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (used[i]) continue;
        cplx sum = r[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (!used[j] && std::abs(r[j] - r[i]) < tol * (1.0 + std::abs(r[i]))) {
                used[j] = true;
                sum += r[j];
                ++count;
            }
        out.push_back({sum / static_cast<double>(count), count});
    }
    return out;
}

struct RationalFunction {
    Poly num, den;

    cplx operator()(cplx z) const { return num(z) / den(z); }
};

inline RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
inline RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}
inline RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.num, a.den * b.den};
}

namespace detail {

inline std::optional<RationalFunction> to_rational(const Node* n) {
    switch (n->op) {
        case Op::Const:
        case Op::Param: return RationalFunction{Poly::constant(n->value), Poly::constant(1.0)};
        case Op::Var: return RationalFunction{Poly::monomial(1), Poly::constant(1.0)};
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            auto a = to_rational(n->a.get());
            auto b = to_rational(n->b.get());
            if (!a || !b) return std::nullopt;
            if (n->op == Op::Add) return *a + *b;
            if (n->op == Op::Sub) return *a - *b;
            if (n->op == Op::Mul) return *a * *b;
            if (b->num.is_zero()) return std::nullopt;
            return RationalFunction{a->num * b->den, a->den * b->num};
        }
        case Op::Neg: {
            auto a = to_rational(n->a.get());
            if (!a) return std::nullopt;
            return RationalFunction{-a->num, a->den};
        }
        case Op::Pow: {
            auto a = to_rational(n->a.get());
            if (!a) return std::nullopt;
            if (n->n >= 0) return RationalFunction{pow(a->num, n->n), pow(a->den, n->n)};
            if (a->num.is_zero()) return std::nullopt;
            return RationalFunction{pow(a->den, -n->n), pow(a->num, -n->n)};
        }
        default:
            if (!depends_on_z(n)) return RationalFunction{Poly::constant(eval(Expr(NodePtr(NodePtr(), n)), 0.0)),
                                                          Poly::constant(1.0)};
            return std::nullopt;
    }
}

}  // namespace detail

// Rational-function form of e, or nullopt when e involves z inside exp/log/... .
inline std::optional<RationalFunction> to_rational(const Expr& e) { return detail::to_rational(e.get()); }

// Remove common roots of numerator and denominator (matched within tol).
inline RationalFunction cancel_common_roots(const RationalFunction& f, double tol = 1e-6) {
    if (f.num.is_zero()) return {Poly(), Poly::constant(1.0)};
    auto rn = roots(f.num), rd = roots(f.den);
    std::vector<bool> used(rd.size(), false);
    std::vector<cplx> keep_n;
    for (cplx r : rn) {
        bool matched = false;
        for (std::size_t j = 0; j < rd.size(); ++j)
            if (!used[j] && std::abs(rd[j] - r) < tol * (1.0 + std::abs(r))) {
                used[j] = true;
                matched = true;
                break;
            }
        if (!matched) keep_n.push_back(r);
    }
    Poly num = Poly::constant(f.num.leading()), den = Poly::constant(f.den.leading());
    for (cplx r : keep_n) num = num * Poly({-r, 1.0});
    for (std::size_t j = 0; j < rd.size(); ++j)
        if (!used[j]) den = den * Poly({-rd[j], 1.0});
    return {num, den};
}

// Degree of a rational map of the Riemann sphere; nullopt for non-rational input.
inline std::optional<int> rational_degree(const Expr& e) {
    auto f = to_rational(e);
    if (!f) return std::nullopt;
    if (f->num.is_zero()) return 0;
    auto c = cancel_common_roots(*f);
    return std::max(c.num.degree(), c.den.degree());
}

// Order of f at p: positive for zeros, negative for poles. Requires rational f.
inline int order_at(const RationalFunction& f, cplx p, double tol = 1e-6) {
    auto count = [&](const Poly& q) {
        int k = 0;
        for (cplx r : roots(q))
            if (std::abs(r - p) < tol * (1.0 + std::abs(p))) ++k;
        return k;
    };
    return count(f.num) - count(f.den);
}

// Order at infinity: deg(den) - deg(num).
inline int order_at_infinity(const RationalFunction& f) { return f.den.degree() - f.num.degree(); }

}  // namespace maxface
